"""PSL(2, F_p) and SL(2, F_p): enumeration, conjugacy classes, shortest words
in the generators S, T, and the explicit (p-1)/2-dimensional Weil
representation matrices for p = 7, 11, 13.

Conventions: T is the translation (1 1; 0 1), S the inversion (0 -1; 1 0).
PSL representatives are scaled so that the first nonzero entry of
(a, b, c, d) lies in {1, ..., (p-1)/2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import CycloField, CycloNum, gauss_sum
from .mpoly import RepMatrix


class GroupElement:
    """An element of PSL(2, F_p), stored by its canonical matrix mod p."""

    __slots__ = ("p", "abcd")

    def __init__(self, p: int, a: int, b: int, c: int, d: int):
        a, b, c, d = a % p, b % p, c % p, d % p
        if (a * d - b * c) % p != 1:
            raise ValueError("determinant is not 1 mod p")
        half = (p - 1) // 2
        for v in (a, b, c, d):
            if v:
                if v > half:
                    a, b, c, d = (-a) % p, (-b) % p, (-c) % p, (-d) % p
                break
        self.p = p
        self.abcd = (a, b, c, d)

    @classmethod
    def identity(cls, p):
        return cls(p, 1, 0, 0, 1)

    @classmethod
    def S(cls, p):
        return cls(p, 0, -1, 1, 0)

    @classmethod
    def T(cls, p):
        return cls(p, 1, 1, 0, 1)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        a, b, c, d = self.abcd
        e, f, g, h = other.abcd
        return GroupElement(self.p, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inv(self) -> "GroupElement":
        a, b, c, d = self.abcd
        return GroupElement(self.p, d, -b, -c, a)

    def __pow__(self, k: int) -> "GroupElement":
        if k < 0:
            return self.inv() ** (-k)
        out = GroupElement.identity(self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def order(self) -> int:
        e = GroupElement.identity(self.p)
        x, n = self, 1
        while x != e:
            x = x * self
            n += 1
        return n

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.p == other.p and self.abcd == other.abcd

    def __hash__(self):
        return hash((self.p, self.abcd))

    def __repr__(self):
        a, b, c, d = self.abcd
        return f"[{a} {b}; {c} {d}]"


@dataclass(frozen=True)
class ConjClass:
    rep: GroupElement
    size: int
    order: int
    members: frozenset


class PSLGroup:
    """The full group PSL(2, F_p) with precomputed combinatorial data."""

    def __init__(self, p: int):
        self.p = p
        self.S = GroupElement.S(p)
        self.T = GroupElement.T(p)
        self.identity = GroupElement.identity(p)
        self.elements = self._enumerate()
        self.order = len(self.elements)
        assert self.order == p * (p * p - 1) // 2
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.classes = self._conjugacy_classes()
        self.class_of = {}
        for ci, cl in enumerate(self.classes):
            for g in cl.members:
                self.class_of[g] = ci
        self._words: dict[GroupElement, tuple[str, ...]] | None = None

    def _enumerate(self):
        p = self.p
        seen = set()
        for a in range(p):
            for b in range(p):
                for c in range(p):
                    for d in range(p):
                        if (a * d - b * c) % p == 1:
                            seen.add(GroupElement(p, a, b, c, d))
        return sorted(seen, key=lambda g: g.abcd)

    def _conjugacy_classes(self):
        gens = [self.S, self.T]
        ginv = [g.inv() for g in gens]
        unseen = set(self.elements)
        classes = []
        while unseen:
            x = min(unseen, key=lambda g: g.abcd)
            orbit = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for g, gi in zip(gens, ginv):
                        z = gi * y * g
                        if z not in orbit:
                            orbit.add(z)
                            nxt.append(z)
                frontier = nxt
            unseen -= orbit
            rep = min(orbit, key=lambda g: g.abcd)
            classes.append(ConjClass(rep, len(orbit), rep.order(), frozenset(orbit)))
        classes.sort(key=lambda c: (c.order, c.size, c.rep.abcd))
        return classes

    # --- words ---------------------------------------------------------------

    def words(self) -> dict[GroupElement, tuple[str, ...]]:
        """Shortest word in {S, T} for every element (lex tie-break, S < T)."""
        if self._words is None:
            gens = {"S": self.S, "T": self.T}
            table = {self.identity: ()}
            frontier = [((), self.identity)]
            while len(table) < self.order:
                nxt = []
                for word, g in frontier:
                    for sym in ("S", "T"):
                        h = g * gens[sym]
                        if h not in table:
                            w = word + (sym,)
                            table[h] = w
                            nxt.append((w, h))
                nxt.sort(key=lambda t: t[0])
                frontier = nxt
            self._words = table
        return self._words

    def word_of(self, g: GroupElement) -> tuple[str, ...]:
        return self.words()[g]

    # --- subgroup / coset structure -------------------------------------------

    def borel(self) -> list[GroupElement]:
        """The upper-triangular subgroup (order p(p-1)/2); it is exactly the
        subgroup generated by T together with the diagonal torus."""
        return [g for g in self.elements if g.abcd[2] == 0]

    def coset_reps(self) -> list[GroupElement]:
        """Right-coset representatives: G = B + B*S + B*S*T + ... + B*S*T^(p-1)."""
        reps = [self.identity, self.S]
        for nu in range(1, self.p):
            reps.append(self.S * self.T ** nu)
        return reps

    def torus_generator(self) -> GroupElement:
        """diag(a, 1/a) generating the diagonal torus of PSL (order (p-1)/2)."""
        p = self.p
        for a in range(2, p):
            g = GroupElement(p, a, 0, 0, pow(a, p - 2, p))
            if g.order() == (p - 1) // 2:
                return g
        raise AssertionError("no torus generator found")

    def power_class(self, class_index: int, t: int) -> int:
        return self.class_of[self.classes[class_index].rep ** t]


@lru_cache(maxsize=None)
def psl_group(p: int) -> PSLGroup:
    return PSLGroup(p)


# --- SL(2, F_p) (needed for character tables of the double cover) -------------


def _sl_mul(p, x, y):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def _sl_order(p, x):
    e = (1, 0, 0, 1)
    y, n = x, 1
    while y != e:
        y = _sl_mul(p, y, x)
        n += 1
    return n


@lru_cache(maxsize=None)
def sl_elements(p: int) -> tuple:
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        out.append((a, b, c, d))
    return tuple(sorted(out))


@dataclass(frozen=True)
class SLClass:
    rep: tuple
    size: int
    order: int
    members: frozenset


@lru_cache(maxsize=None)
def sl_classes(p: int) -> tuple:
    els = sl_elements(p)
    gens = [(0, p - 1, 1, 0), (1, 1, 0, 1)]
    ginv = [(0, 1, p - 1, 0), (1, p - 1, 0, 1)]
    unseen = set(els)
    classes = []
    while unseen:
        x = min(unseen)
        orbit = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g, gi in zip(gens, ginv):
                    z = _sl_mul(p, _sl_mul(p, gi, y), g)
                    if z not in orbit:
                        orbit.add(z)
                        nxt.append(z)
            frontier = nxt
        unseen -= orbit
        rep = min(orbit)
        classes.append(SLClass(rep, len(orbit), _sl_order(p, rep), frozenset(orbit)))
    classes.sort(key=lambda c: (c.order, c.size, c.rep))
    return tuple(classes)


# --- Weil representation generators --------------------------------------------


@dataclass(frozen=True)
class WeilGenerators:
    """Exact (p-1)/2-dimensional generator matrices over Q(zeta_p).

    central_sign is the scalar with S^2 = central_sign * I (+1 for
    p = 3 mod 4, -1 for p = 1 mod 4); T always has order p and (S T)^3 = I.
    """

    p: int
    dim: int
    field: CycloField
    S: RepMatrix
    T: RepMatrix
    central_sign: int


def _zdiff(F: CycloField, i: int, j: int) -> CycloNum:
    return F.zeta(i) - F.zeta(j)


@lru_cache(maxsize=None)
def weil_generators(p: int) -> WeilGenerators:
    """Exact generator matrices over Q(zeta_p).

    The tabulated matrices are written in a primitive root gamma (p=7) /
    rho (p=11); matching their diagonal T against the theta multiplier
    exponents alpha(alpha-p)/2 pins gamma = zeta^4 and rho = zeta^6, which
    is what numeric sampling downstream relies on.  For p=11 that reading
    forces the -sqrt(-11) branch of the scalar (the +branch breaks
    (S T)^3 = I); for p=13 the overall sign is pinned the same way.
    """
    F = CycloField(p)
    g = gauss_sum(p)  # sqrt(p) or i*sqrt(p) by quadratic residue of -1
    if p == 7:
        sqrt_m7_inv = g.inverse()  # g = sqrt(-7)

        def d7(a, b):  # gamma^a - gamma^b with gamma = zeta^4
            return _zdiff(F, 4 * a % 7, 4 * b % 7)

        rows = [
            [d7(5, 2), d7(3, 4), d7(6, 1)],
            [d7(3, 4), d7(6, 1), d7(5, 2)],
            [d7(6, 1), d7(5, 2), d7(3, 4)],
        ]
        S = RepMatrix(F, [[c * sqrt_m7_inv for c in row] for row in rows])
        T = RepMatrix.diagonal(F, [F.zeta(4 * k % 7) for k in (1, 4, 2)])
        out = WeilGenerators(7, 3, F, S, T, +1)
    elif p == 11:
        neg_sqrt_m11_inv = -g.inverse()

        def d11(a, b):  # rho^a - rho^b with rho = zeta^6
            return _zdiff(F, 6 * a % 11, 6 * b % 11)

        base = [d11(9, 2), d11(4, 7), d11(3, 8), d11(5, 6), d11(1, 10)]
        rows = [base[i:] + base[:i] for i in range(5)]
        S = RepMatrix(F, [[c * neg_sqrt_m11_inv for c in row] for row in rows])
        T = RepMatrix.diagonal(F, [F.zeta(6 * k % 11) for k in (1, 4, 5, 9, 3)])
        out = WeilGenerators(11, 5, F, S, T, +1)
    elif p == 13:
        sqrt_13_inv = g.inverse()  # g = sqrt(13)
        d = _zdiff
        rows = [
            [d(F, 12, 1), d(F, 10, 3), d(F, 4, 9), d(F, 5, 8), d(F, 2, 11), d(F, 6, 7)],
            [d(F, 10, 3), d(F, 4, 9), d(F, 12, 1), d(F, 2, 11), d(F, 6, 7), d(F, 5, 8)],
            [d(F, 4, 9), d(F, 12, 1), d(F, 10, 3), d(F, 6, 7), d(F, 5, 8), d(F, 2, 11)],
            [d(F, 5, 8), d(F, 2, 11), d(F, 6, 7), d(F, 1, 12), d(F, 3, 10), d(F, 9, 4)],
            [d(F, 2, 11), d(F, 6, 7), d(F, 5, 8), d(F, 3, 10), d(F, 9, 4), d(F, 1, 12)],
            [d(F, 6, 7), d(F, 5, 8), d(F, 2, 11), d(F, 9, 4), d(F, 1, 12), d(F, 3, 10)],
        ]
        # the overall sign is pinned by (S T)^3 = I together with
        # (Q^3 P^4)^3 = -I and the explicit signed-permutation value of the
        # order-6 normalizer word below; the opposite sign breaks all three
        S = RepMatrix(F, [[c * sqrt_13_inv for c in row] for row in rows])
        T = RepMatrix.diagonal(F, [F.zeta(k) for k in (7, 11, 8, 6, 2, 5)])
        out = WeilGenerators(13, 6, F, S, T, -1)
    else:
        raise ValueError(f"no explicit Weil generators tabulated for p={p}")
    _check_weil_relations(out)
    return out


def _check_weil_relations(w: WeilGenerators) -> None:
    n = w.dim
    I = RepMatrix.identity(w.field, n)
    assert (w.S * w.S) == I * w.central_sign, "S^2 is not central"
    assert (w.T ** w.p) == I, "T does not have order p"
    st3 = (w.S * w.T) ** 3
    assert st3 == I, "(S T)^3 is not the identity"


def sl13_auxiliary(w: WeilGenerators) -> tuple[RepMatrix, RepMatrix, RepMatrix]:
    """P = S T^-1 S, Q = S T^3 and the normalizer word H = Q^5 P^4 Q^6 P^8 Q^5 P^5 Q.

    H is a signed permutation matrix of order 12 (order 6 projectively) that
    together with T generates a subgroup of order 156, the preimage of the
    Borel normalizer of <T>; conjugation gives H^-1 T H = T^4.
    """
    if w.p != 13:
        raise ValueError("auxiliary words are specific to p=13")
    P = w.S * (w.T ** -1) * w.S
    Q = w.S * (w.T ** 3)
    H = Q ** 5 * P ** 4 * Q ** 6 * P ** 8 * Q ** 5 * P ** 5 * Q
    return P, Q, H


def matrix_of(group: PSLGroup, w: WeilGenerators, g: GroupElement) -> RepMatrix:
    """Weil matrix of a group element, via its shortest S/T word."""
    word = group.word_of(g)
    out = RepMatrix.identity(w.field, w.dim)
    for sym in word:
        out = out * (w.S if sym == "S" else w.T)
    return out
