"""The group action on the quartic span: action matrices, traces, invariant
subspaces, character tables, isotypic decomposition, and the classical
multiplicity formula for differentials.

Matrix convention: row i of action(g) holds the coefficients of the
substituted form basis[i](M_g x) in the basis.  Substitution composes
contravariantly, so this row layout is exactly what makes
action(g) * action(h) == action(g*h) -- and it keeps each printed expansion
of a transformed form readable as one row of the matrix of S.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .cyclo import CycloField, CycloNum, gauss_sum
from .group import (
    GroupElement,
    PSLGroup,
    _sl_mul,
    matrix_of,
    psl_group,
    sl_classes,
    weil_generators,
)
from .locus import b_forms_11, b_forms_13
from .mpoly import MPoly, RepMatrix, matrix_rank, poly_rank, poly_span_solver


class StabilityError(Exception):
    """A substituted basis form escaped the span it was supposed to live in."""


B_ORDER_11 = ("B1_1", "B4_1", "B5_1", "B9_1", "B3_1",
              "B1_2", "B4_2", "B5_2", "B9_2", "B3_2")

B_ORDER_13 = ("B0_0", "B0_1", "B0_2",
              "B1_1", "B3_1", "B9_1", "B12_1", "B10_1", "B4_1",
              "B1_2", "B3_2", "B9_2", "B12_2", "B10_2", "B4_2",
              "B5", "B2", "B6", "B8", "B11", "B7")


class SpanRep:
    """The representation of PSL(2, F_p) on the span of the defining quartics.

    basis is the preferred generating set: the single invariant quartic for
    p = 7, the ten B-forms for p = 11, the twenty-one for p = 13.  The center
    acts trivially (degree 4 absorbs the sign of -I), so matrices built from
    any matrix lift of a PSL element agree.
    """

    __slots__ = ("p", "field", "names", "basis", "weil", "_solve", "_cache")

    def __init__(self, p: int):
        w = weil_generators(p)
        self.p = p
        self.field = w.field
        self.weil = w
        if p == 7:
            lam, mu, nu = MPoly.variables(w.field, 3)
            self.names = ("f",)
            self.basis = [lam ** 3 * mu + mu ** 3 * nu + nu ** 3 * lam]
        elif p == 11:
            forms = b_forms_11(w.field)
            self.names = B_ORDER_11
            self.basis = [forms[k] for k in self.names]
        elif p == 13:
            forms = b_forms_13(w.field)
            self.names = B_ORDER_13
            self.basis = [forms[k] for k in self.names]
        else:
            raise ValueError(f"no quartic span tabulated for p={p}")
        self._solve = poly_span_solver(self.basis)
        self._cache: dict[GroupElement, RepMatrix] = {}

    def combo(self, coeffs: dict[str, int]) -> MPoly:
        """Integer combination of named basis forms."""
        acc = MPoly.zero(self.field, self.basis[0].nvars)
        for name, c in coeffs.items():
            acc = acc + self.basis[self.names.index(name)] * self.field.from_rational(c)
        return acc

    def action_of_weil(self, m: RepMatrix) -> RepMatrix:
        """Matrix (rows = transformed basis forms) of substitution by m."""
        rows = []
        for name, b in zip(self.names, self.basis):
            sol = self._solve(b.substitute_linear(m))
            if sol is None:
                raise StabilityError(f"image of {name} left the span")
            rows.append(sol)
        return RepMatrix(self.field, rows)

    def action(self, g: GroupElement) -> RepMatrix:
        try:
            return self._cache[g]
        except KeyError:
            m = matrix_of(psl_group(self.p), self.weil, g)
            out = self.action_of_weil(m)
            self._cache[g] = out
            return out

    @property
    def dim(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=None)
def span_rep(p: int) -> SpanRep:
    return SpanRep(p)


def action_matrix(g: GroupElement, R: SpanRep) -> RepMatrix:
    return R.action(g)


def trace_pair(R: SpanRep) -> tuple[CycloNum, CycloNum]:
    """(trace of the matrix of S, trace of the matrix of T)."""
    p = R.p
    return (R.action(GroupElement.S(p)).trace(), R.action(GroupElement.T(p)).trace())


# --- invariant subspaces ---------------------------------------------------------

V1_13 = ({"B0_0": 3, "B0_1": 1, "B0_2": -1},)

V7_13 = (
    {"B0_1": 1, "B0_2": 1},
    {"B1_1": 1, "B1_2": -3},
    {"B3_1": 1, "B3_2": -3},
    {"B9_1": 1, "B9_2": -3},
    {"B12_1": 1, "B12_2": 3},
    {"B10_1": 1, "B10_2": 3},
    {"B4_1": 1, "B4_2": 3},
)

V13_13 = (
    {"B0_0": 4, "B0_1": -1, "B0_2": 1},
    {"B5": 1}, {"B2": 1}, {"B6": 1}, {"B8": 1}, {"B11": 1}, {"B7": 1},
    {"B1_1": 1, "B1_2": 1},
    {"B3_1": 1, "B3_2": 1},
    {"B9_1": 1, "B9_2": 1},
    {"B12_1": -1, "B12_2": 1},
    {"B10_1": -1, "B10_2": 1},
    {"B4_1": -1, "B4_2": 1},
)


def _closed_under(forms: list[MPoly], mats: list[RepMatrix]) -> bool:
    solve = poly_span_solver(forms)
    for m in mats:
        for f in forms:
            if solve(f.substitute_linear(m)) is None:
                return False
    return True


def verify_paper_bases(p: int) -> dict:
    """Check the stated invariant subspaces and their direct-sum decomposition.

    For p = 13 this is the full split into pieces of dimension 1, 7, 13,
    including the explicit anchor identities for the images of the
    distinguished vectors under S.
    """
    R = span_rep(p)
    w = R.weil
    gens = [w.S, w.T]
    report: dict = {"p": p, "dim": R.dim}
    if p in (7, 11):
        report["dims"] = [R.dim]
        report["stable"] = _closed_under(R.basis, gens)
        if p == 7:
            f = R.basis[0]
            report["trivial"] = (
                f.substitute_linear(w.S) == f and f.substitute_linear(w.T) == f
            )
        return report

    v1 = [R.combo(c) for c in V1_13]
    v7 = [R.combo(c) for c in V7_13]
    v13 = [R.combo(c) for c in V13_13]
    report["dims"] = [poly_rank(v1), poly_rank(v7), poly_rank(v13)]
    for label, sub in (("V1", v1), ("V7", v7), ("V13", v13)):
        if not _closed_under(sub, gens):
            raise StabilityError(f"{label} is not closed under S and T")
    report["stable"] = True
    report["direct_sum"] = poly_rank(v1 + v7 + v13) == R.dim == sum(report["dims"])

    # anchor identities for the distinguished vectors
    sqrt13 = gauss_sum(13)
    gen1 = v1[0]
    report["v1_fixed"] = (
        gen1.substitute_linear(w.S) == gen1 and gen1.substitute_linear(w.T) == gen1
    )
    lhs7 = v7[0].substitute_linear(w.S) * sqrt13
    rhs7 = MPoly.zero(R.field, 6)
    for f in v7:
        rhs7 = rhs7 + f
    report["v7_anchor"] = lhs7 == rhs7

    gen13 = v13[0]
    lhs13 = gen13.substitute_linear(w.S) * R.field.from_rational(13)
    rhs13 = -gen13
    for name in ("B5", "B2", "B6", "B8", "B11", "B7"):
        rhs13 = rhs13 + R.combo({name: 14})
    for c in V13_13[7:]:
        rhs13 = rhs13 + R.combo({k: 7 * v for k, v in c.items()})
    report["v13_anchor"] = lhs13 == rhs13
    return report


# --- character tables (class-algebra eigenvectors over an auxiliary prime) -----


@dataclass
class CharacterTable:
    p: int
    variant: str           # "PSL" or "SL"
    group_order: int
    exponent: int
    field: CycloField      # Q(zeta_exponent)
    sizes: list[int]       # class sizes
    orders: list[int]      # element orders per class
    inverse_class: list[int]
    rows: list[list[CycloNum]]
    degrees: list[int]
    aux_prime: int

    @property
    def nclasses(self) -> int:
        return len(self.sizes)

    def degree_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees))

    def trivial_row(self) -> int:
        one = self.field.one()
        for i, row in enumerate(self.rows):
            if self.degrees[i] == 1 and all(v == one for v in row):
                return i
        raise AssertionError("no trivial character found")

    def verify_orthogonality(self, exact: bool = True, tol: float = 1e-8) -> bool:
        """First (row) and second (column) orthogonality relations."""
        n, g = self.nclasses, self.group_order
        if exact:
            for a in range(n):
                for b in range(a, n):
                    acc = self.field.zero()
                    for k in range(n):
                        acc = acc + self.rows[a][k] * self.rows[b][k].conjugate() * self.sizes[k]
                    if acc != (g if a == b else 0):
                        return False
            for i in range(n):
                for j in range(i, n):
                    acc = self.field.zero()
                    for row in self.rows:
                        acc = acc + row[i] * row[j].conjugate()
                    target = Fraction(g, self.sizes[i]) if i == j else Fraction(0)
                    if acc != self.field.from_rational(target):
                        return False
            return True
        crows = [[v.to_complex() for v in row] for row in self.rows]
        for a in range(n):
            for b in range(a, n):
                acc = sum(self.sizes[k] * crows[a][k] * crows[b][k].conjugate() for k in range(n))
                if abs(acc - (g if a == b else 0)) > tol * g:
                    return False
        return True


class _LiftFailure(Exception):
    pass


def _lcm(values):
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def _aux_primes(e: int):
    """Primes ell = 1 (mod e), ascending."""
    ell = e + 1
    while True:
        if ell > 2 and all(ell % q for q in range(2, isqrt(ell) + 1)):
            yield ell
        ell += e


def _primitive_root(ell: int) -> int:
    n = ell - 1
    fac, m = [], n
    d = 2
    while d * d <= m:
        if m % d == 0:
            fac.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        fac.append(m)
    for g in range(2, ell):
        if all(pow(g, n // q, ell) != 1 for q in fac):
            return g
    raise AssertionError("no primitive root")


def _nullspace_mod(mat, ell):
    """Basis of the right kernel of mat over F_ell."""
    n = len(mat)
    rows = [list(r) for r in mat]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if rows[i][c] % ell), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], ell - 2, ell)
        rows[r] = [v * inv % ell for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(v - f * w) % ell for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = (-rows[ri][fc]) % ell
        basis.append(v)
    return basis


def _det_mod(mat, ell):
    n = len(mat)
    rows = [list(r) for r in mat]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] % ell), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c] % ell
        inv = pow(rows[c][c], ell - 2, ell)
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv % ell
                rows[i] = [(v - f * w) % ell for v, w in zip(rows[i], rows[c])]
    return det % ell


def _eigenvalues_mod(mat, ell):
    """Roots in F_ell of det(mat - x I), via interpolation of the
    characteristic polynomial and a full Horner scan."""
    n = len(mat)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        shifted = [[(mat[i][j] - (x if i == j else 0)) % ell for j in range(n)] for i in range(n)]
        ys.append(_det_mod(shifted, ell))
    # Lagrange interpolation to coefficient form (degree n)
    coeffs = [0] * (n + 1)
    for i, xi in enumerate(xs):
        num = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = [(-xj * a + (num[k - 1] if k else 0)) % ell
                   for k, a in enumerate(num)] + [num[-1]]
            denom = denom * (xi - xj) % ell
        scale = ys[i] * pow(denom, ell - 2, ell) % ell
        for k, a in enumerate(num):
            coeffs[k] = (coeffs[k] + scale * a) % ell
    roots = []
    for lam in range(ell):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * lam + c) % ell
        if acc == 0:
            roots.append(lam)
    return roots


def _class_data(p: int, variant: str):
    """Uniform view of the conjugacy data for PSL or SL."""
    if variant == "PSL":
        G = psl_group(p)
        classes = G.classes
        reps = [c.rep for c in classes]
        sizes = [c.size for c in classes]
        orders = [c.order for c in classes]
        members = [c.members for c in classes]
        class_of = G.class_of
        mul = lambda x, y: x * y
        inv = lambda x: x.inv()
        group_order = G.order
    elif variant == "SL":
        classes = sl_classes(p)
        reps = [c.rep for c in classes]
        sizes = [c.size for c in classes]
        orders = [c.order for c in classes]
        members = [c.members for c in classes]
        class_of = {}
        for i, c in enumerate(classes):
            for g in c.members:
                class_of[g] = i
        mul = lambda x, y: _sl_mul(p, x, y)

        def inv(x):
            a, b, c_, d = x
            return (d % p, -b % p, -c_ % p, a % p)

        group_order = p * (p * p - 1)
    else:
        raise ValueError("variant must be 'PSL' or 'SL'")
    return reps, sizes, orders, members, class_of, mul, inv, group_order


@lru_cache(maxsize=None)
def character_table(p: int, variant: str = "PSL", max_attempts: int = 24) -> CharacterTable:
    """Exact irreducible character table, computed from the class algebra.

    The class-multiplication matrices are simultaneously diagonalized over
    F_ell for an auxiliary prime ell = 1 (mod exponent); eigenvector entries
    are the normalized characters, degrees come from the second orthogonality
    relation, and values lift to Q(zeta_exponent) by matching root-of-unity
    multiplicities.  A failed lift retries with the next auxiliary prime.
    """
    reps, sizes, orders, members, class_of, mul, inv, group_order = _class_data(p, variant)
    K = len(reps)
    exponent = _lcm(orders)
    identity_class = orders.index(1)
    inverse_class = [class_of[inv(r)] for r in reps]

    # power map: class of reps[k]^s for s = 0..orders[k]-1
    power_class = []
    for k, r in enumerate(reps):
        row, x = [identity_class], None
        for s in range(1, orders[k]):
            x = r if x is None else mul(x, r)
            row.append(class_of[x])
        power_class.append(row)

    # class multiplication coefficients a[i][j][k]: C_i * C_j = sum a_ijk C_k
    a = [[[0] * K for _ in range(K)] for _ in range(K)]
    for i in range(K):
        for x in members[i]:
            xi = inv(x)
            for k, t in enumerate(reps):
                a[i][class_of[mul(xi, t)]][k] += 1

    for ell in _aux_primes(exponent):
        try:
            return _lift_table(
                p, variant, group_order, exponent, sizes, orders,
                inverse_class, power_class, a, ell, max_attempts,
            )
        except _LiftFailure:
            continue


def _lift_table(p, variant, group_order, exponent, sizes, orders,
                inverse_class, power_class, a, ell, max_attempts) -> CharacterTable:
    K = len(sizes)
    identity_class = orders.index(1)
    mats = [[[a[i][j][k] % ell for k in range(K)] for j in range(K)] for i in range(K)]

    rng = random.Random(p * 1000003 + ell)
    omegas = None
    for _ in range(max_attempts):
        combo = [rng.randrange(ell) for _ in range(K)]
        M = [[sum(combo[i] * mats[i][j][k] for i in range(K)) % ell for k in range(K)]
             for j in range(K)]
        roots = _eigenvalues_mod(M, ell)
        if len(set(roots)) != K:
            continue
        candidates = []
        ok = True
        for lam in roots:
            shifted = [[(M[i][j] - (lam if i == j else 0)) % ell for j in range(K)] for i in range(K)]
            null = _nullspace_mod(shifted, ell)
            if len(null) != 1 or null[0][identity_class] % ell == 0:
                ok = False
                break
            v = null[0]
            scale = pow(v[identity_class], ell - 2, ell)
            candidates.append([x * scale % ell for x in v])
        if not ok:
            continue
        # joint-eigenvector check against every class matrix
        for u in candidates:
            for i in range(K):
                w = [sum(mats[i][j][k] * u[k] for k in range(K)) % ell for j in range(K)]
                om = w[identity_class]
                if any((om * u[j] - w[j]) % ell for j in range(K)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            omegas = candidates
            break
    if omegas is None:
        raise _LiftFailure(f"no separating class-algebra combination mod {ell}")

    field = CycloField(exponent)
    zgen = _primitive_root(ell)
    zE = pow(zgen, (ell - 1) // exponent, ell)
    size_inv = [pow(s % ell, ell - 2, ell) for s in sizes]

    rows, degrees = [], []
    dmax = isqrt(group_order)
    for u in omegas:
        s = sum(u[k] * u[inverse_class[k]] * size_inv[k] for k in range(K)) % ell
        d2 = group_order % ell * pow(s, ell - 2, ell) % ell
        d = next((c for c in range(1, dmax + 1) if c * c % ell == d2), None)
        if d is None:
            raise _LiftFailure("degree is not a small square root")
        chit = [d * u[k] % ell * size_inv[k] % ell for k in range(K)]
        row = []
        for k in range(K):
            n = orders[k]
            zk = pow(zE, exponent // n, ell)
            zk_inv = pow(zk, ell - 2, ell)
            n_inv = pow(n, ell - 2, ell)
            mults = []
            for j in range(n):
                m = n_inv * sum(
                    chit[power_class[k][s_]] * pow(zk_inv, j * s_, ell)
                    for s_ in range(n)
                ) % ell
                mults.append(m)
            if sum(mults) != d or any(m > d for m in mults):
                raise _LiftFailure("eigenvalue multiplicities fail the degree check")
            val = field.zero()
            for j, m in enumerate(mults):
                if m:
                    val = val + field.zeta(exponent // n * j) * m
            row.append(val)
        rows.append(row)
        degrees.append(d)

    if sum(d * d for d in degrees) != group_order:
        raise _LiftFailure("degree inventory misses the group order")
    order_idx = sorted(range(K), key=lambda i: (degrees[i], [str(v) for v in rows[i]]))
    tbl = CharacterTable(
        p=p, variant=variant, group_order=group_order, exponent=exponent,
        field=field, sizes=list(sizes), orders=list(orders),
        inverse_class=list(inverse_class),
        rows=[rows[i] for i in order_idx], degrees=[degrees[i] for i in order_idx],
        aux_prime=ell,
    )
    if not tbl.verify_orthogonality(exact=(variant == "PSL")):
        raise _LiftFailure("orthogonality fails after lifting")
    return tbl


# --- decomposition ---------------------------------------------------------------


def rep_character(R: SpanRep) -> list[CycloNum]:
    """Trace of the action on one representative per conjugacy class."""
    G = psl_group(R.p)
    return [R.action(c.rep).trace() for c in G.classes]


def _as_int(x: CycloNum) -> int:
    frac = x.as_fraction()
    if frac.denominator != 1:
        raise ValueError(f"expected an integer, got {frac}")
    return frac.numerator


def decompose(R: SpanRep, tbl: CharacterTable) -> dict:
    """Multiplicities of the irreducibles inside the quartic-span action.

    Returns {p, dims, multiplicities, norm, traces, identification}; the
    multiplicity list is aligned with tbl.rows.  Requires a PSL table (the
    center acts trivially on quartics).
    """
    if tbl.variant != "PSL" or tbl.p != R.p:
        raise ValueError("decomposition needs the PSL table of the same prime")
    G = psl_group(R.p)
    chi = [v.embed(tbl.field) for v in rep_character(R)]
    n, g = tbl.nclasses, tbl.group_order

    def pair(xs, ys):
        acc = tbl.field.zero()
        for k in range(n):
            acc = acc + xs[k] * ys[k].conjugate() * tbl.sizes[k]
        return acc.as_fraction() / g

    mults = []
    for row in tbl.rows:
        m = pair(chi, row)
        if m.denominator != 1 or m < 0:
            raise ValueError(f"non-integral multiplicity {m}")
        mults.append(int(m))
    if sum(m * d for m, d in zip(mults, tbl.degrees)) != R.dim:
        raise AssertionError("multiplicities do not add up to the span dimension")
    for k in range(n):
        acc = tbl.field.zero()
        for m, row in zip(mults, tbl.rows):
            if m:
                acc = acc + row[k] * m
        if acc != chi[k]:
            raise AssertionError("character reconstruction fails")
    norm = pair(chi, chi)

    s_class = G.class_of[G.S]
    t_class = G.class_of[G.T]
    trS, trT = trace_pair(R)
    ident = {"degrees": sorted(d for m, d in zip(mults, tbl.degrees) for _ in range(m))}
    if R.p == 11 and mults.count(1) == 1 and sum(mults) == 1:
        j = mults.index(1)
        fingerprint = (tbl.rows[j][s_class], tbl.rows[j][t_class])
        same = [i for i, d in enumerate(tbl.degrees)
                if d == tbl.degrees[j]
                and (tbl.rows[i][s_class], tbl.rows[i][t_class]) == fingerprint]
        ident["discrete_series"] = tbl.degrees[j] == R.p - 1
        ident["label"] = "chi_5" if same == [j] else None
    return {
        "p": R.p,
        "dims": [d for m, d in zip(mults, tbl.degrees) if m],
        "multiplicities": mults,
        "norm": norm,
        "traces": {"S": str(trS), "T": str(trT)},
        "identification": ident,
    }


# --- multiplicity of irreducibles among the differentials -----------------------


def hecke_multiplicity(tbl: CharacterTable, row: int) -> int:
    """Multiplicity of the given irreducible in the (doubled) space of
    holomorphic differentials of the degree-p curve:

        r = f - (1/p) sum_{n mod p} chi(T^n) - (1/2) sum_{n mod 2} chi(S^n)
              - (1/3) sum_{n mod 3} chi((ST)^n),

    with the trivial character excluded (it contributes nothing).
    """
    if tbl.variant != "PSL":
        raise ValueError("the multiplicity formula runs over PSL classes")
    if row == tbl.trivial_row():
        return 0
    G = psl_group(tbl.p)
    chi = tbl.rows[row]
    f = tbl.degrees[row]

    def csum(g: GroupElement, count: int) -> CycloNum:
        acc, x = tbl.field.zero(), G.identity
        for _ in range(count):
            acc = acc + chi[G.class_of[x]]
            x = x * g
        return acc

    r = (tbl.field.from_rational(f)
         - csum(G.T, tbl.p) * Fraction(1, tbl.p)
         - csum(G.S, 2) * Fraction(1, 2)
         - csum(G.S * G.T, 3) * Fraction(1, 3))
    value = r.as_fraction()
    if value.denominator != 1 or value < 0:
        raise ValueError(f"multiplicity formula returned {value}")
    return int(value)


def hecke_genus(tbl: CharacterTable) -> int:
    """Half the dimension of the doubled differential space: the genus."""
    total = sum(hecke_multiplicity(tbl, i) * d for i, d in enumerate(tbl.degrees))
    assert total % 2 == 0
    return total // 2


# --- isotypic projector ----------------------------------------------------------


def isotypic_projector(R: SpanRep) -> RepMatrix:
    """Group average of the action: the projector onto the trivial part.

    Assembled from the Borel factorization g = T^m D^u r with r running over
    {1} and {S T^nu}: the T-average is a coordinate projection because the
    basis diagonalizes T, so the full sum needs only a handful of matrix
    products.
    """
    G = psl_group(R.p)
    p, n, F = R.p, R.dim, R.field
    aT = R.action(G.T)
    for i in range(n):
        for j in range(n):
            if i != j and aT.rows[i][j]:
                raise StabilityError("basis does not diagonalize T")
    one, zero = F.one(), F.zero()
    # sum of aT^m over m mod p: p on the fixed coordinates, 0 elsewhere
    et = RepMatrix.diagonal(
        F, [p * one if aT.rows[i][i] == one else zero for i in range(n)]
    )
    aD = R.action(G.torus_generator())
    torus_sum = RepMatrix.identity(F, n)
    acc = RepMatrix.identity(F, n)
    for _ in range((p - 1) // 2 - 1):
        acc = acc * aD
        torus_sum = torus_sum + acc
    borel = et * torus_sum
    cosets = RepMatrix.identity(F, n) + R.action(G.S) * et
    return borel * cosets * Fraction(1, G.order)


def projector_rank(P: RepMatrix) -> int:
    return matrix_rank(P.rows, P.field)
