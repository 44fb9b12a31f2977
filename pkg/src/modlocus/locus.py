"""Defining ideals of the modular loci in P^{(p-3)/2}.

Coordinates are E_1..E_m, m = (p-1)/2, the odd-function basis on Z/pZ with
E_{-t} = -E_t and E_0 = 0.  The ideal is generated by three-term quartics
indexed by four distinct residues; for p = 11 and p = 13 the same graded
piece has a second presentation by senary/quinary B-forms whose coordinate
dictionaries are recorded here as well.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .cyclo import CycloField, CycloNum
from .mpoly import MPoly, RepMatrix, matrix_rank, poly_span_solver


def fold(p: int, t: int) -> tuple[int, int]:
    """Fold a residue into the index range 1..(p-1)/2: returns (index, sign)."""
    t %= p
    if t == 0:
        return 0, 0
    m = (p - 1) // 2
    return (t, 1) if t <= m else (p - t, -1)


def _e(field: CycloField, p: int, t: int) -> MPoly:
    idx, sgn = fold(p, t)
    m = (p - 1) // 2
    if sgn == 0:
        return MPoly.zero(field, m)
    v = MPoly.variable(field, m, idx - 1)
    return v if sgn > 0 else -v


def quartic(p: int, w: int, x: int, y: int, z: int, field: CycloField | None = None) -> MPoly:
    """The quartic E_{w+x}E_{w-x}E_{y+z}E_{y-z} + two terms cycling (x,y,z)."""
    F = field if field is not None else CycloField(p)

    def pair(a, b, c, d):
        return _e(F, p, a + b) * _e(F, p, a - b) * _e(F, p, c + d) * _e(F, p, c - d)

    return pair(w, x, y, z) + pair(w, y, z, x) + pair(w, z, x, y)


class QuarticSystem:
    """The deduplicated quartic generators of I(L(X(p))), canonically signed."""

    def __init__(self, p: int, field: CycloField, labels, quartics, raw_count: int):
        self.p = p
        self.field = field
        self.labels = tuple(labels)
        self.quartics = tuple(quartics)
        self.raw_count = raw_count
        self._solver = None

    @property
    def nvars(self) -> int:
        return (self.p - 1) // 2

    def __len__(self):
        return len(self.quartics)

    def solver(self):
        if self._solver is None:
            self._solver = poly_span_solver(list(self.quartics))
        return self._solver

    def contains(self, f: MPoly):
        """Coordinates of f in the quartic span, or None."""
        return self.solver()(f)

    def membership(self, point):
        """Exact bool for cyclotomic points; scale-normalized residual for
        numeric points (max |quartic| / ||point||_inf^4)."""
        if all(isinstance(c, CycloNum) for c in point):
            return all(q.evaluate(point).is_zero() for q in self.quartics)
        pt = [complex(c) for c in point]
        scale = max(abs(c) for c in pt)
        if scale == 0.0:
            raise ValueError("zero point is not projective")
        return max(abs(q.evaluate(pt)) for q in self.quartics) / scale ** 4

    def tangent_check(self, t: int):
        """(Jacobian rank at kappa_t, True iff the kernel is the line through
        kappa_t and kappa_{3t} and the rank is (p-1)/2 - 2)."""
        F, m = self.field, self.nvars
        pt = kappa_point(self.p, t, F)
        rows = [[q.derivative(j).evaluate(pt) for j in range(m)] for q in self.quartics]
        rank = matrix_rank(rows, F)

        def annihilates(vec):
            for row in rows:
                acc = F.zero()
                for r, v in zip(row, vec):
                    acc = acc + r * v
                if not acc.is_zero():
                    return False
            return True

        k1 = kappa_point(self.p, t, F)
        k3 = kappa_point(self.p, 3 * t, F)
        independent = fold(self.p, t)[0] != fold(self.p, 3 * t)[0]
        ok = rank == m - 2 and independent and annihilates(k1) and annihilates(k3)
        return rank, ok

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "conductor": self.field.M,
            "raw_count": self.raw_count,
            "distinct": len(self.quartics),
            "labels": [list(l) for l in self.labels],
            "quartics": [q.to_json() for q in self.quartics],
        }


def _lex_normalize(q: MPoly) -> MPoly:
    """Flip the sign so the lexicographically greatest monomial has
    coefficient +1 (all quartic coefficients here are +-1)."""
    lead = max(q.terms, key=lambda e: e)
    c = q.terms[lead]
    for r in c.nums:
        if r != 0:
            return q if r > 0 else -q
    return q


@lru_cache(maxsize=None)
def generate_ideal(p: int, conductor: int | None = None) -> QuarticSystem:
    """All quartics for 0 <= a < b < c < d <= (p-1)/2, deduplicated.

    Canonical label: lexicographically least producing tuple; canonical sign:
    lex-leading monomial gets coefficient +1.
    """
    if p < 7:
        raise ValueError("the quartic system is degenerate for p < 7")
    F = CycloField(conductor if conductor is not None else p)
    m = (p - 1) // 2
    seen: dict[MPoly, tuple] = {}
    order: list[tuple] = []
    raw = 0
    for label in combinations(range(m + 1), 4):
        raw += 1
        q = quartic(p, *label, field=F)
        if q.is_zero():
            continue
        assert q.is_homogeneous() and q.degree() == 4
        qn = q.monic_sign()
        if qn not in seen:
            seen[qn] = label
            order.append(label)
    labels = sorted(order)
    quartics = []
    by_label = {v: k for k, v in seen.items()}
    for label in labels:
        quartics.append(_lex_normalize(by_label[label]))
    return QuarticSystem(p, F, labels, quartics, raw)


def kappa_point(p: int, t: int, field: CycloField | None = None):
    """Coordinates of kappa_t: the h_t basis point (single nonzero entry)."""
    F = field if field is not None else CycloField(p)
    idx, sgn = fold(p, t)
    if sgn == 0:
        raise ValueError("t must be nonzero mod p")
    m = (p - 1) // 2
    return [F.from_rational(Fraction(sgn if j == idx - 1 else 0)) for j in range(m)]


# --- coordinate dictionaries -----------------------------------------------
#
# The theta-normalized coordinates used for the explicit generator matrices
# differ from E_1..E_m by a signed permutation and (for p = 13) a common
# phase.  The phase drops out of every conjugation, so the matrices below
# stay over Q(zeta_p).

_FRAME = {
    # z_i = (common scalar) * sign * E_{target}; rows express the theta-frame
    # variable in terms of the E variables.
    7: [(1, 1), (2, 1), (3, -1)],          # (lambda, mu, nu)
    11: [(1, 1), (2, -1), (4, 1), (3, 1), (5, 1)],   # (y1, y4, y5, y9, y3)
    13: [(1, -1), (3, -1), (4, 1), (5, 1), (2, 1), (6, 1)],  # (z1..z6)
}


def frame_matrix(p: int, field: CycloField | None = None) -> RepMatrix:
    """Signed permutation P with theta-frame variables = P * (E variables)."""
    F = field if field is not None else CycloField(p)
    m = (p - 1) // 2
    rows = []
    for target, sgn in _FRAME[p]:
        row = [F.from_rational(Fraction(sgn if j == target - 1 else 0)) for j in range(m)]
        rows.append(row)
    return RepMatrix(F, rows)


@lru_cache(maxsize=None)
def weil_in_e_frame(p: int):
    """(S, T) generator matrices conjugated into the E coordinates."""
    from .group import weil_generators

    w = weil_generators(p)
    P = frame_matrix(p, w.field)
    Pinv = P.inv()
    return Pinv * w.S * P, Pinv * w.T * P


# --- B-forms -----------------------------------------------------------------


def b_forms_11(field: CycloField | None = None) -> dict[str, MPoly]:
    """The ten quartics in (y1, y4, y5, y9, y3) spanning the p=11 ideal."""
    F = field if field is not None else CycloField(11)
    y1, y4, y5, y9, y3 = MPoly.variables(F, 5)
    return {
        "B1_1": y4 ** 3 * y9 + y9 ** 3 * y5 + y3 ** 3 * y1,
        "B4_1": y5 ** 3 * y3 + y3 ** 3 * y9 + y1 ** 3 * y4,
        "B5_1": y9 ** 3 * y1 + y1 ** 3 * y3 + y4 ** 3 * y5,
        "B9_1": y3 ** 3 * y4 + y4 ** 3 * y1 + y5 ** 3 * y9,
        "B3_1": y1 ** 3 * y5 + y5 ** 3 * y4 + y9 ** 3 * y3,
        "B1_2": y9 ** 2 * y1 * y4 - y3 ** 2 * y1 * y5 - y5 ** 2 * y9 * y4,
        "B4_2": y3 ** 2 * y4 * y5 - y1 ** 2 * y4 * y9 - y9 ** 2 * y3 * y5,
        "B5_2": y1 ** 2 * y5 * y9 - y4 ** 2 * y5 * y3 - y3 ** 2 * y1 * y9,
        "B9_2": y4 ** 2 * y9 * y3 - y5 ** 2 * y9 * y1 - y1 ** 2 * y4 * y3,
        "B3_2": y5 ** 2 * y3 * y1 - y9 ** 2 * y3 * y4 - y4 ** 2 * y5 * y1,
    }


def b_forms_13(field: CycloField | None = None) -> dict[str, MPoly]:
    """The twenty-one quartics in (z1..z6) generating the p=13 ideal."""
    F = field if field is not None else CycloField(13)
    z1, z2, z3, z4, z5, z6 = MPoly.variables(F, 6)
    forms = {
        "B0_0": z1 * z2 * z4 * z5 + z2 * z3 * z5 * z6 + z3 * z1 * z6 * z4,
        "B0_1": z1 * z5 ** 3 + z2 * z6 ** 3 + z3 * z4 ** 3,
        "B0_2": z1 ** 3 * z6 + z2 ** 3 * z4 + z3 ** 3 * z5,
        "B1_1": z3 * z5 ** 3 + z1 ** 3 * z4 - z1 * z2 ** 3,
        "B1_2": z2 * z4 * z6 ** 2 - z3 ** 2 * z6 * z4 - z1 ** 2 * z2 * z5,
        "B3_1": z2 * z4 ** 3 + z3 ** 3 * z6 - z3 * z1 ** 3,
        "B3_2": z1 * z6 * z5 ** 2 - z2 ** 2 * z5 * z6 - z3 ** 2 * z1 * z4,
        "B9_1": z1 * z6 ** 3 + z2 ** 3 * z5 - z2 * z3 ** 3,
        "B9_2": z3 * z5 * z4 ** 2 - z1 ** 2 * z4 * z5 - z2 ** 2 * z3 * z6,
        "B12_1": z1 * z4 ** 3 + z2 ** 3 * z6 + z4 * z5 ** 3,
        "B12_2": z2 * z5 * z4 ** 2 - z3 ** 2 * z1 * z5 - z6 ** 2 * z3 * z1,
        "B10_1": z3 * z6 ** 3 + z1 ** 3 * z5 + z6 * z4 ** 3,
        "B10_2": z1 * z4 * z6 ** 2 - z2 ** 2 * z3 * z4 - z5 ** 2 * z2 * z3,
        "B4_1": z2 * z5 ** 3 + z3 ** 3 * z4 + z5 * z6 ** 3,
        "B4_2": z3 * z6 * z5 ** 2 - z1 ** 2 * z2 * z6 - z4 ** 2 * z1 * z2,
        "B5": -(z2 ** 2) * z1 * z5 + z4 * z5 * z6 ** 2 + z2 * z3 * z4 ** 2,
        "B2": -(z1 ** 2) * z3 * z4 + z6 * z4 * z5 ** 2 + z1 * z2 * z6 ** 2,
        "B6": -(z3 ** 2) * z2 * z6 + z5 * z6 * z4 ** 2 + z3 * z1 * z5 ** 2,
        "B8": z2 * z4 * z5 ** 2 + z1 * z2 * z3 ** 2 + z1 ** 2 * z5 * z6,
        "B11": z1 * z6 * z4 ** 2 + z3 * z1 * z2 ** 2 + z3 ** 2 * z4 * z5,
        "B7": z3 * z5 * z6 ** 2 + z2 * z3 * z1 ** 2 + z2 ** 2 * z6 * z4,
    }
    for f in forms.values():
        assert f.is_homogeneous() and f.degree() == 4
    return forms


# B-form <-> quartic pairings for p = 13: substituting the z -> E dictionary
# into the B-form yields sign * Phi_label, exactly, over Q(zeta_104).
B_QUARTIC_PAIRS_13 = (
    ("B0_0", 1, (1, 2, 3, 5)),
    ("B0_1", -1, (0, 2, 5, 6)),
    ("B0_2", -1, (0, 1, 3, 4)),
    ("B1_1", 1, (0, 1, 2, 3)),
    ("B1_2", 1, (0, 1, 4, 6)),
    ("B3_1", 1, (0, 1, 4, 5)),
    ("B3_2", -1, (0, 2, 3, 4)),
    ("B9_1", -1, (0, 3, 4, 6)),
    ("B9_2", -1, (0, 1, 3, 5)),
    ("B12_1", 1, (0, 2, 3, 5)),
    ("B12_2", 1, (0, 4, 5, 6)),
    ("B10_1", -1, (0, 1, 5, 6)),
    ("B10_2", 1, (0, 2, 3, 6)),
    ("B4_1", -1, (0, 2, 4, 6)),
    ("B4_2", 1, (0, 1, 2, 5)),
    ("B5", 1, (0, 3, 5, 6)),
    ("B2", -1, (0, 1, 2, 6)),
    ("B6", -1, (0, 2, 4, 5)),
    ("B8", -1, (0, 1, 2, 4)),
    ("B11", -1, (0, 3, 4, 5)),
    ("B7", -1, (0, 1, 3, 6)),
)


def b_correspondence() -> dict[str, tuple[int, tuple]]:
    """Verify the 21 pairings between B-forms and quartics for p = 13.

    The dictionary is z_i = phase * sign * E_{sigma(i)} with phase
    e^{pi i/4} = zeta_104^13; phase^4 = -1 contributes a global unit that the
    stated signs absorb.  Returns {name: (sign, label)}; raises on mismatch.
    """
    F104 = CycloField(104)
    phase = F104.zeta(13)
    m = 6
    rows = []
    for target, sgn in _FRAME[13]:
        row = [F104.zero()] * m
        row[target - 1] = phase * sgn
        rows.append(row)
    out = {}
    forms = b_forms_13()
    for name, sign, label in B_QUARTIC_PAIRS_13:
        mapped = forms[name].embed(F104).substitute_linear(rows)
        target = quartic(13, *label, field=F104) * sign
        if mapped != target:
            raise AssertionError(f"correspondence fails for {name} <-> {sign:+d}*Phi{label}")
        out[name] = (sign, label)
    return out


def klein_relations_11(field: CycloField | None = None) -> list[MPoly]:
    """The fifteen classical relations in (y1,y4,y5,y9,y3): three seed forms
    closed up under the cycle (y1 y4 y5 y9 y3).

    Their span is 15-dimensional and equals the span of the 4x4 minors of
    the Hessian matrix of the cubic (see hessian_minors_11); the quartic
    span is a 10-dimensional subspace of it.
    """
    F = field if field is not None else CycloField(11)
    y1, y4, y5, y9, y3 = MPoly.variables(F, 5)
    seeds = [
        y4 * y5 * y9 * y3 - y1 ** 2 * y5 * y3 + y1 ** 2 * y4 ** 2 + y3 ** 3 * y1,
        y1 ** 2 * y5 * y9 - y4 ** 2 * y5 * y3 - y3 ** 2 * y1 * y9,
        y4 ** 3 * y9 + y9 ** 3 * y5 + y3 ** 3 * y1,
    ]
    shift = [[F.one() if j == (i + 1) % 5 else F.zero() for j in range(5)] for i in range(5)]
    out = []
    for f in seeds:
        for _ in range(5):
            out.append(f)
            f = f.substitute_linear(shift)
    return out


def hessian_cubic_11(field: CycloField | None = None) -> MPoly:
    """The invariant cubic y1^2 y9 + y4^2 y3 + y5^2 y1 + y9^2 y4 + y3^2 y5."""
    F = field if field is not None else CycloField(11)
    y1, y4, y5, y9, y3 = MPoly.variables(F, 5)
    return y1 ** 2 * y9 + y4 ** 2 * y3 + y5 ** 2 * y1 + y9 ** 2 * y4 + y3 ** 2 * y5


def hessian_minors_11(field: CycloField | None = None) -> dict[tuple, MPoly]:
    """The fifteen 4x4 minors of (1/2) Hess(cubic), keyed by the deleted
    (row, column) pair.  All of them vanish on the curve; only the five with
    |i-k| = 1 mod 5 lie in the quartic span."""
    F = field if field is not None else CycloField(11)
    from .mpoly import poly_det

    nabla = hessian_cubic_11(F)
    half = F.from_rational(Fraction(1, 2))
    hess = [[nabla.derivative(i).derivative(j) * half for j in range(5)] for i in range(5)]
    out = {}
    for i in range(5):
        for k in range(i, 5):
            rows = [[hess[r][c] for c in range(5) if c != k] for r in range(5) if r != i]
            out[(i, k)] = poly_det(rows)
    return out


def b_to_e_11(field: CycloField | None = None) -> dict[str, MPoly]:
    """The p=11 B-forms rewritten in E coordinates via (y1,y4,y5,y9,y3) =
    (E1, -E2, E4, E3, E5)."""
    F = field if field is not None else CycloField(11)
    rows = frame_matrix(11, F).rows
    return {name: f.substitute_linear(rows) for name, f in b_forms_11(F).items()}
