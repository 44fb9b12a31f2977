"""Sparse multivariate polynomials over cyclotomic fields, plus the small
amount of exact linear algebra the representation work needs.

Monomial order is grevlex throughout (leading terms, canonical JSON order,
sign normalizations).
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycloField, CycloNum


def grevlex_key(exps: tuple[int, ...]):
    """Sort key: bigger key = bigger monomial in graded reverse lex order."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: CycloField, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], CycloNum] = {}
        if terms:
            for e, c in terms.items() if isinstance(terms, dict) else terms:
                if c:
                    prev = self.terms.get(e)
                    s = c if prev is None else prev + c
                    if s:
                        self.terms[e] = s
                    else:
                        del self.terms[e]

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars)

    @classmethod
    def constant(cls, field, nvars, value):
        c = value if isinstance(value, CycloNum) else field.from_rational(value)
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars, i, power: int = 1):
        e = [0] * nvars
        e[i] = power
        return cls(field, nvars, {tuple(e): field.one()})

    @classmethod
    def variables(cls, field, nvars):
        return [cls.variable(field, nvars, i) for i in range(nvars)]

    def _coeff(self, value) -> CycloNum:
        if isinstance(value, CycloNum):
            if value.field is not self.field:
                raise ValueError("coefficient field mismatch")
            return value
        return self.field.from_rational(value)

    # --- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading(self):
        """(exponents, coefficient) of the grevlex-leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def monic_sign(self) -> "MPoly":
        """Scale by -1 if needed so the leading coefficient's first nonzero
        rational coordinate is positive (used for canonical quartic signs)."""
        _, c = self.leading()
        for n in c.nums:
            if n > 0:
                return self
            if n < 0:
                return -self
        return self

    # --- arithmetic --------------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.field is not other.field or self.nvars != other.nvars:
            raise ValueError("polynomial ring mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            other = MPoly.constant(self.field, self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            s = c if prev is None else prev + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        p = MPoly(self.field, self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MPoly(self.field, self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            other = MPoly.constant(self.field, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            c0 = self._coeff(other)
            if not c0:
                return MPoly(self.field, self.nvars)
            p = MPoly(self.field, self.nvars)
            p.terms = {e: c * c0 for e, c in self.terms.items()}
            return p
        self._check(other)
        out: dict[tuple[int, ...], CycloNum] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                prev = out.get(e)
                s = c if prev is None else prev + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        p = MPoly(self.field, self.nvars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            other = MPoly.constant(self.field, self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return (
            self.field is other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field.M, self.nvars, frozenset(self.terms.items())))

    # --- calculus / substitution ---------------------------------------------

    def derivative(self, i: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        p = MPoly(self.field, self.nvars)
        p.terms = out
        return p

    def substitute_linear(self, rows) -> "MPoly":
        """Replace x_i by sum_j rows[i][j] * x_j."""
        if isinstance(rows, RepMatrix):
            rows = rows.rows
        forms = []
        for row in rows:
            f = MPoly(self.field, self.nvars)
            f.terms = {}
            for j, c in enumerate(row):
                c = self._coeff(c)
                if c:
                    e = [0] * self.nvars
                    e[j] = 1
                    f.terms[tuple(e)] = c
            forms.append(f)
        if len(forms) != self.nvars:
            raise ValueError("substitution needs one linear form per variable")
        powers: dict[tuple[int, int], MPoly] = {}

        def power(i, k):
            if k == 0:
                return MPoly.constant(self.field, self.nvars, 1)
            try:
                return powers[(i, k)]
            except KeyError:
                p = power(i, k - 1) * forms[i]
                powers[(i, k)] = p
                return p

        acc = MPoly(self.field, self.nvars)
        for e, c in self.terms.items():
            t = MPoly.constant(self.field, self.nvars, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            acc = acc + t
        return acc

    def permute_variables(self, perm) -> "MPoly":
        """x_i -> x_perm[i]."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * self.nvars
            for i, k in enumerate(e):
                e2[perm[i]] = k
            out[tuple(e2)] = c
        p = MPoly(self.field, self.nvars)
        p.terms = out
        return p

    def evaluate(self, values):
        """Evaluate at a point; exact if every value is a CycloNum, complex
        otherwise."""
        exact = all(isinstance(v, CycloNum) for v in values)
        if exact:
            acc = self.field.zero()
            for e, c in self.terms.items():
                t = c
                for v, k in zip(values, e):
                    if k:
                        t = t * v ** k
                acc = acc + t
            return acc
        acc = 0j
        for e, c in self.terms.items():
            t = complex(c.to_complex())
            for v, k in zip(values, e):
                if k:
                    t *= complex(v) ** k
            acc += t
        return acc

    def galois(self, k: int) -> "MPoly":
        """Apply zeta -> zeta^k to every coefficient."""
        p = MPoly(self.field, self.nvars)
        p.terms = {e: c.galois(k) for e, c in self.terms.items()}
        return p

    def embed(self, target: CycloField) -> "MPoly":
        p = MPoly(target, self.nvars)
        p.terms = {e: c.embed(target) for e, c in self.terms.items()}
        return p

    # --- division ----------------------------------------------------------

    def divmod_single(self, g: "MPoly"):
        """Multivariate division by a single polynomial (grevlex leading term).

        Returns (q, r) with self = q*g + r and no monomial of r divisible by
        the leading monomial of g.  A single divisor is a Groebner basis of
        the ideal it generates, so r == 0 iff self lies in (g).
        """
        import heapq

        self._check(g)
        ge, gc = g.leading()
        gcinv = gc.inverse()
        def heap_key(e):  # min-heap => this pops grevlex-largest first
            return (-sum(e), tuple(reversed(e)))

        gtail = [(e, c) for e, c in g.terms.items() if e != ge]
        work = dict(self.terms)
        heap = [(heap_key(e), e) for e in work]
        heapq.heapify(heap)
        q: dict[tuple[int, ...], CycloNum] = {}
        rem: dict[tuple[int, ...], CycloNum] = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = work.pop(e, None)
            if c is None:
                continue  # already consumed (duplicate heap entry)
            if all(a >= b for a, b in zip(e, ge)):
                shift = tuple(a - b for a, b in zip(e, ge))
                qc = c * gcinv
                q[shift] = q.get(shift, self.field.zero()) + qc
                # every monomial produced here is grevlex-smaller than e
                for te, tc in gtail:
                    ne = tuple(a + b for a, b in zip(shift, te))
                    prev = work.get(ne)
                    if prev is None:
                        heapq.heappush(heap, (heap_key(ne), ne))
                        nv = -(qc * tc)
                    else:
                        nv = prev - qc * tc
                    if nv:
                        work[ne] = nv
                    else:
                        work.pop(ne, None)
            else:
                rem[e] = c
        qp = MPoly(self.field, self.nvars)
        qp.terms = {e: c for e, c in q.items() if c}
        rp = MPoly(self.field, self.nvars)
        rp.terms = rem
        return qp, rp

    def reduce_mod(self, g: "MPoly") -> "MPoly":
        return self.divmod_single(g)[1]

    # --- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        terms = sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)
        return {
            "nvars": self.nvars,
            "conductor": self.field.M,
            "terms": [{"exps": list(e), "coeff": str(c)} for e, c in terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MPoly":
        field = CycloField(data["conductor"])
        p = cls(field, data["nvars"])
        for t in data["terms"]:
            c = CycloNum.parse(t["coeff"])
            if c.field is not field:
                c = c.embed(field)
            p = p + cls(field, data["nvars"], {tuple(t["exps"]): c})
        return p

    def to_str(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        bits = []
        for e, c in sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True):
            mono = "*".join(
                f"{names[i]}^{k}" if k > 1 else names[i]
                for i, k in enumerate(e)
                if k
            )
            if c.is_rational() and mono:
                q = c.as_fraction()
                if q == 1:
                    bits.append(f"+ {mono}")
                    continue
                if q == -1:
                    bits.append(f"- {mono}")
                    continue
                sign = "-" if q < 0 else "+"
                bits.append(f"{sign} {abs(q)}*{mono}")
            else:
                bits.append(f"+ ({c})*{mono}" if mono else f"+ ({c})")
        s = " ".join(bits)
        return s[2:] if s.startswith("+ ") else "-" + s[2:] if s.startswith("- ") else s

    __repr__ = to_str


def jacobian(polys: list[MPoly]) -> list[list[MPoly]]:
    return [[p.derivative(i) for i in range(p.nvars)] for p in polys]


def poly_det(mat: list[list[MPoly]]) -> MPoly:
    """Determinant by expansion along the first column (small matrices only)."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    f, nv = mat[0][0].field, mat[0][0].nvars
    acc = MPoly.zero(f, nv)
    for i in range(n):
        if mat[i][0].is_zero():
            continue
        minor = [row[1:] for k, row in enumerate(mat) if k != i]
        term = mat[i][0] * poly_det(minor)
        acc = acc + term if i % 2 == 0 else acc - term
    return acc


def elementary_symmetric(items, k: int):
    """e_k of a list of ring elements (polynomials or numbers)."""
    if not 0 <= k <= len(items):
        raise ValueError("k out of range")
    if k == 0:
        return 1
    e: list = [None] * (k + 1)  # e[j] of the processed prefix; None means zero
    for x in items:
        top = min(k, 1 + sum(1 for v in e[1:] if v is not None))
        for j in range(top, 0, -1):
            t = x if j == 1 else (e[j - 1] * x if e[j - 1] is not None else None)
            if t is not None:
                e[j] = t if e[j] is None else e[j] + t
    return e[k]


# --- exact linear algebra ---------------------------------------------------


class RepMatrix:
    """A dense matrix over one cyclotomic field."""

    __slots__ = ("field", "rows")

    def __init__(self, field: CycloField, rows):
        self.field = field
        self.rows = [
            [c if isinstance(c, CycloNum) else field.from_rational(c) for c in row]
            for row in rows
        ]

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, field, entries):
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self):
        return len(self.rows)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            return RepMatrix(self.field, [[c * other for c in row] for row in self.rows])
        if isinstance(other, RepMatrix):
            bt = list(zip(*other.rows))
            out = []
            for row in self.rows:
                out.append([_dot(row, col, self.field) for col in bt])
            return RepMatrix(self.field, out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            return self * other
        return NotImplemented

    def __add__(self, other):
        return RepMatrix(
            self.field,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        return RepMatrix(
            self.field,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return RepMatrix(self.field, [[-c for c in row] for row in self.rows])

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = RepMatrix.identity(self.field, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        return self.field is other.field and self.rows == other.rows

    def transpose(self):
        return RepMatrix(self.field, [list(r) for r in zip(*self.rows)])

    def trace(self) -> CycloNum:
        acc = self.field.zero()
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def is_scalar(self):
        """Return the scalar c if the matrix is c*I, else None."""
        c = self.rows[0][0]
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                if i == j:
                    if v != c:
                        return None
                elif v:
                    return None
        return c

    def apply_vector(self, vec):
        return [_dot(row, vec, self.field) for row in self.rows]

    def inv(self) -> "RepMatrix":
        n = self.n
        aug = [list(row) + RepMatrix.identity(self.field, n).rows[i] for i, row in enumerate(self.rows)]
        rref_rows, pivots = rref(aug, self.field)
        if pivots != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return RepMatrix(self.field, [row[n:] for row in rref_rows])

    def galois(self, k: int) -> "RepMatrix":
        return RepMatrix(self.field, [[c.galois(k) for c in row] for row in self.rows])

    def to_complex(self):
        return [[c.to_complex() for c in row] for row in self.rows]

    def __repr__(self):
        return "RepMatrix([\n  " + ",\n  ".join(
            "[" + ", ".join(str(c) for c in row) + "]" for row in self.rows
        ) + "\n])"


def _dot(row, col, field):
    acc = field.zero()
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def rref(rows, field):
    """Reduced row echelon form over a cyclotomic field.

    Returns (new_rows, pivot_columns).  Input rows are lists of CycloNum.
    """
    rows = [list(r) for r in rows]
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, m):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def matrix_rank(rows, field) -> int:
    if not rows:
        return 0
    return len(rref(rows, field)[1])


def poly_rank(polys) -> int:
    """Dimension of the linear span of a list of polynomials."""
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return 0
    field = polys[0].field
    monos = sorted({e for f in polys for e in f.terms})
    rows = [[f.terms.get(e, field.zero()) for e in monos] for f in polys]
    return matrix_rank(rows, field)


def solve_in_span(columns, target, field):
    """Write target as a linear combination of the given column vectors.

    columns: list of length-m vectors (CycloNum); target: length-m vector.
    Returns the coefficient list, or None if target is outside the span.
    """
    if not columns:
        return None if any(t for t in target) else []
    m = len(target)
    aug = []
    for i in range(m):
        row = [col[i] for col in columns]
        row.append(target[i])
        aug.append(row)
    rows, pivots = rref(aug, field)
    k = len(columns)
    if k in pivots:
        return None  # inconsistent: pivot in the rhs column
    sol = [field.zero()] * k
    for rix, c in enumerate(pivots):
        sol[c] = rows[rix][k]
    # verify (guards against underdetermined systems silently succeeding)
    for i in range(m):
        acc = field.zero()
        for j, col in enumerate(columns):
            if sol[j]:
                acc = acc + sol[j] * col[i]
        if acc != target[i]:
            return None
    return sol


def poly_span_solver(basis: list[MPoly]):
    """Precompute a monomial frame for repeatedly solving in span(basis).

    Returns a function target -> coefficient list (or None).
    """
    if not basis:
        raise ValueError("empty basis")
    field = basis[0].field
    monos = sorted({e for b in basis for e in b.terms}, key=grevlex_key)
    index = {e: i for i, e in enumerate(monos)}
    cols = []
    for b in basis:
        v = [field.zero()] * len(monos)
        for e, c in b.terms.items():
            v[index[e]] = c
        cols.append(v)

    def solve(target: MPoly):
        v = [field.zero()] * len(monos)
        for e, c in target.terms.items():
            i = index.get(e)
            if i is None:
                return None  # uses a monomial outside the span's support
            v[i] = c
        return solve_in_span(cols, v, field)

    return solve
