"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored in the power basis 1, zeta, ..., zeta^(d-1) modulo the
M-th cyclotomic polynomial, as integer coordinate vectors over a single
positive denominator.  That layout keeps products inside plain integer
convolutions, which matters once matrices of these things get multiplied in
bulk.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

MAX_CONDUCTOR = 1 << 16


def _poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        q, r = divmod(c, den[dd])
        if r:
            raise ArithmeticError("non-exact polynomial division")
        out[k] = q
        if q:
            for j in range(dd + 1):
                num[k + j] -= q * den[j]
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_coeffs(M: int) -> tuple[int, ...]:
    """Coefficients of the M-th cyclotomic polynomial, ascending order."""
    if M == 1:
        return (-1, 1)
    poly = [-1] + [0] * (M - 1) + [1]  # x^M - 1
    for d in range(1, M):
        if M % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_coeffs(d))
    return tuple(poly)


class CycloField:
    """The field Q(zeta_M), interned by conductor."""

    _cache: dict[int, "CycloField"] = {}

    def __new__(cls, M: int) -> "CycloField":
        try:
            return cls._cache[M]
        except KeyError:
            pass
        if not (1 <= M <= MAX_CONDUCTOR):
            raise ValueError(f"conductor {M} out of range 1..{MAX_CONDUCTOR}")
        self = object.__new__(cls)
        self.M = M
        phi = cyclotomic_coeffs(M)
        self.degree = len(phi) - 1
        self._phi = phi
        self._powtab = [(1,) + (0,) * (self.degree - 1)]
        self._croots: list[complex] | None = None
        cls._cache[M] = self
        return self

    def __repr__(self) -> str:
        return f"CycloField({self.M})"

    def power(self, k: int) -> tuple[int, ...]:
        """zeta^k as a reduced integer coordinate vector (k >= 0)."""
        tab = self._powtab
        d = self.degree
        phi = self._phi
        while len(tab) <= k:
            nxt = [0] + list(tab[-1])
            top = nxt.pop()
            if top:
                for j in range(d):
                    nxt[j] -= top * phi[j]
            tab.append(tuple(nxt))
        return tab[k]

    # --- element constructors -------------------------------------------

    def zero(self) -> "CycloNum":
        return CycloNum(self, (0,) * self.degree, 1, _normalized=True)

    def one(self) -> "CycloNum":
        return self.from_rational(1)

    def zeta(self, k: int = 1) -> "CycloNum":
        return CycloNum(self, self.power(k % self.M), 1, _normalized=True)

    def from_rational(self, q) -> "CycloNum":
        q = Fraction(q)
        nums = (q.numerator,) + (0,) * (self.degree - 1)
        return CycloNum(self, nums, q.denominator, _normalized=True)

    def element(self, coeffs) -> "CycloNum":
        """Element from rational coefficients of 1, zeta, zeta^2, ... (any length)."""
        fracs = [Fraction(c) for c in coeffs]
        common = 1
        for f in fracs:
            common = common * f.denominator // gcd(common, f.denominator)
        nums = [0] * self.degree
        for e, f in enumerate(fracs):
            c = f.numerator * (common // f.denominator)
            if c:
                vec = self.power(e)
                for j in range(self.degree):
                    nums[j] += c * vec[j]
        return CycloNum(self, tuple(nums), common)

    def _complex_roots(self) -> list[complex]:
        if self._croots is None:
            w = cmath.exp(2j * cmath.pi / self.M)
            r, self._croots = 1.0 + 0.0j, []
            for _ in range(self.degree):
                self._croots.append(r)
                r *= w
        return self._croots


class CycloNum:
    """An element of Q(zeta_M)."""

    __slots__ = ("field", "nums", "den")

    def __init__(self, field: CycloField, nums, den: int = 1, _normalized=False):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            if den < 0:
                den = -den
                nums = tuple(-n for n in nums)
            g = den
            for n in nums:
                g = gcd(g, n)
                if g == 1:
                    break
            if g > 1:
                den //= g
                nums = tuple(n // g for n in nums)
        self.field = field
        self.nums = tuple(nums)
        self.den = den

    # --- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.field is not self.field:
                raise ValueError(
                    f"field mismatch: Q(zeta_{self.field.M}) vs Q(zeta_{other.field.M})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    # --- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self, o
        g = gcd(a.den, b.den)
        da, db = b.den // g, a.den // g
        nums = tuple(x * da + y * db for x, y in zip(a.nums, b.nums))
        return CycloNum(self.field, nums, da * a.den)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.field, tuple(-n for n in self.nums), self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloNum(self.field, tuple(n * other for n in self.nums), self.den)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.degree
        a, b = self.nums, o.nums
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        nums = list(conv[:d])
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                vec = self.field.power(k)
                for j in range(d):
                    nums[j] += c * vec[j]
        return CycloNum(self.field, tuple(nums), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_M."""
        if not any(self.nums):
            raise ZeroDivisionError("inverse of zero")
        # work over Q[x]; r0 = Phi_M, r1 = self (as polynomial)
        r0 = [Fraction(c) for c in self.field._phi]
        r1 = [Fraction(n, self.den) for n in self.nums]
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [Fraction(1)]  # coefficients of self in the Bezout identity
        while len(r1) > 1:
            q, r = _frac_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
            while r1 and r1[-1] == 0:
                r1.pop()
        if not r1:
            raise ZeroDivisionError("element not invertible (zero divisor?)")
        c = r1[0]
        inv = [x / c for x in s1]
        return self.field.element(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # --- structure maps -----------------------------------------------------

    def galois(self, k: int) -> "CycloNum":
        """Apply the automorphism zeta -> zeta^k (k coprime to the conductor)."""
        M = self.field.M
        if gcd(k, M) != 1:
            raise ValueError(f"{k} not coprime to conductor {M}")
        d = self.field.degree
        nums = [0] * d
        for e, c in enumerate(self.nums):
            if c:
                vec = self.field.power((e * k) % M)
                for j in range(d):
                    nums[j] += c * vec[j]
        return CycloNum(self.field, tuple(nums), self.den)

    def conjugate(self) -> "CycloNum":
        return self.galois(self.field.M - 1) if self.field.M > 1 else self

    def embed(self, target: CycloField) -> "CycloNum":
        """Image under zeta_M -> zeta_N^(N/M), for M dividing N."""
        if target is self.field:
            return self
        N, M = target.M, self.field.M
        if N % M:
            raise ValueError(f"no embedding: {M} does not divide {N}")
        step = N // M
        nums = [0] * target.degree
        for e, c in enumerate(self.nums):
            if c:
                vec = target.power((e * step) % N)
                for j in range(target.degree):
                    nums[j] += c * vec[j]
        return CycloNum(target, tuple(nums), self.den)

    def to_complex(self) -> complex:
        roots = self.field._complex_roots()
        return sum(n * r for n, r in zip(self.nums, roots) if n) / self.den

    # --- predicates and views ------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.nums)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, CycloNum):
            return NotImplemented
        return (
            self.field is other.field
            and self.den == other.den
            and self.nums == other.nums
        )

    def __hash__(self):
        return hash((self.field.M, self.nums, self.den))

    def __bool__(self):
        return any(self.nums)

    # --- serialization ---------------------------------------------------------

    def __str__(self) -> str:
        inner = ", ".join(str(Fraction(n, self.den)) for n in self.nums)
        return f"cyclo({self.field.M})[{inner}]"

    __repr__ = __str__

    _TOKEN = re.compile(r"^\s*cyclo\((\d+)\)\[([^\]]*)\]\s*$")

    @classmethod
    def parse(cls, s: str) -> "CycloNum":
        m = cls._TOKEN.match(s)
        if not m:
            raise ValueError(f"not a cyclotomic literal: {s!r}")
        field = CycloField(int(m.group(1)))
        body = m.group(2).strip()
        coeffs = [Fraction(t.strip()) for t in body.split(",")] if body else []
        return field.element(coeffs)


# --- Fraction-polynomial helpers for the inverse ------------------------------


def _frac_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] / b[-1]
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _frac_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _frac_sub(a, b):
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for j, bj in enumerate(b):
        out[j] -= bj
    return out


# --- quadratic Gauss sums ------------------------------------------------------


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


@lru_cache(maxsize=None)
def gauss_sum(p: int) -> CycloNum:
    """The quadratic Gauss sum g = sum_k (k|p) zeta_p^k in Q(zeta_p).

    g^2 = (-1)^((p-1)/2) p; with principal branches g = sqrt(p) for p = 1 mod 4
    and g = i*sqrt(p) for p = 3 mod 4.
    """
    F = CycloField(p)
    acc = F.zero()
    for k in range(1, p):
        acc = acc + legendre(k, p) * F.zeta(k)
    target = p if p % 4 == 1 else -p
    assert acc * acc == F.from_rational(target)
    return acc
