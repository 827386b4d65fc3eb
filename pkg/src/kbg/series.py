"""Truncated power series with exact rational coefficients.

``TruncSeries`` holds c_0..c_N of a one-variable series; ``BiTruncSeries``
holds a dense rectangle c[i][j], 0 <= i <= Nx, 0 <= j <= Nz, where the second
variable is whatever marker the caller needs (a shift counter, a part counter,
a second cyclic index).  Arithmetic never reads past the bounds.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "DEFAULT_N",
    "TruncSeries",
    "BiTruncSeries",
    "s_add",
    "s_mul",
    "s_inv_one_minus_monomial",
    "s_log",
    "s_exp",
    "s_substitute_power",
    "bi_eval_second",
]

DEFAULT_N = 64

_ZERO = Fraction(0)
_ONE = Fraction(1)


class TruncSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a truncated series needs at least the constant term")
        self.coeffs = cs

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, N: int) -> TruncSeries:
        return cls([0] * (N + 1))

    @classmethod
    def one(cls, N: int) -> TruncSeries:
        return cls.monomial(0, N)

    @classmethod
    def monomial(cls, k: int, N: int, c=1) -> TruncSeries:
        cs = [0] * (N + 1)
        if k <= N:
            cs[k] = c
        return cls(cs)

    @classmethod
    def from_function(cls, f, N: int) -> TruncSeries:
        return cls(f(n) for n in range(N + 1))

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _same_bound(self, other: TruncSeries) -> None:
        if other.N != self.N:
            raise ValueError(f"degree bounds differ: {self.N} vs {other.N}")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return self + TruncSeries.monomial(0, self.N, other)
        self._same_bound(other)
        return TruncSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self) -> TruncSeries:
        return TruncSeries(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = Fraction(other)
            return TruncSeries(c * a for a in self.coeffs)
        self._same_bound(other)
        a, b = self.coeffs, other.coeffs
        N = self.N
        # skip zero coefficients: most partition-style series are sparse at small degree
        out = [_ZERO] * (N + 1)
        bnz = [(j, bj) for j, bj in enumerate(b) if bj]
        for i, ai in enumerate(a):
            if not ai:
                continue
            lim = N - i
            for j, bj in bnz:
                if j > lim:
                    break
                out[i + j] += ai * bj
        return TruncSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncSeries:
        if k < 0:
            raise ValueError("negative powers are not supported; use inverse()")
        result = TruncSeries.one(self.N)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> TruncSeries:
        """Multiplicative inverse; requires a nonzero constant term."""
        a = self.coeffs
        if a[0] == 0:
            raise ValueError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        b = [inv0]
        for n in range(1, self.N + 1):
            s = sum((a[k] * b[n - k] for k in range(1, n + 1)), _ZERO)
            b.append(-s * inv0)
        return TruncSeries(b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def truncate(self, N: int) -> TruncSeries:
        if N > self.N:
            return TruncSeries(self.coeffs + (_ZERO,) * (N - self.N))
        return TruncSeries(self.coeffs[: N + 1])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_ints(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    def evaluate(self, x) -> complex | float:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.N >= 8 else ""
        return f"TruncSeries(N={self.N}: [{head}{more}])"


def s_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def s_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def s_inv_one_minus_monomial(k: int, N: int) -> TruncSeries:
    """``1/(1 - x**k)`` truncated at degree N."""
    if k < 1:
        raise ValueError(f"monomial exponent must be positive, got {k}")
    return TruncSeries(1 if m % k == 0 else 0 for m in range(N + 1))


def s_log(a: TruncSeries) -> TruncSeries:
    """Formal logarithm of a series with constant term 1."""
    if a[0] != 1:
        raise ValueError(f"log needs constant term 1, got {a[0]}")
    c = a.coeffs
    b = [_ZERO]
    for n in range(1, a.N + 1):
        s = n * c[n]
        for k in range(1, n):
            if b[k] and c[n - k]:
                s -= k * b[k] * c[n - k]
        b.append(s / n)
    return TruncSeries(b)


def s_exp(a: TruncSeries) -> TruncSeries:
    """Formal exponential of a series with constant term 0."""
    if a[0] != 0:
        raise ValueError(f"exp needs constant term 0, got {a[0]}")
    c = a.coeffs
    b = [_ONE]
    for n in range(1, a.N + 1):
        s = _ZERO
        for k in range(1, n + 1):
            if c[k] and b[n - k]:
                s += k * c[k] * b[n - k]
        b.append(s / n)
    return TruncSeries(b)


def s_substitute_power(a: TruncSeries, p: int) -> TruncSeries:
    """``a(x**p)`` truncated at the same bound."""
    if p < 1:
        raise ValueError(f"substitution power must be positive, got {p}")
    out = [_ZERO] * (a.N + 1)
    for m, c in enumerate(a.coeffs):
        if p * m > a.N:
            break
        out[p * m] = c
    return TruncSeries(out)


class BiTruncSeries:
    """Dense truncated series in x (first index) and a second variable."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rs = tuple(tuple(Fraction(c) for c in row) for row in rows)
        if not rs or not rs[0]:
            raise ValueError("empty bivariate series")
        width = len(rs[0])
        if any(len(r) != width for r in rs):
            raise ValueError("bivariate storage must be rectangular")
        self.rows = rs

    @property
    def bounds(self) -> tuple[int, int]:
        return len(self.rows) - 1, len(self.rows[0]) - 1

    @classmethod
    def zero(cls, Nx: int, Nz: int) -> BiTruncSeries:
        return cls([[0] * (Nz + 1) for _ in range(Nx + 1)])

    @classmethod
    def from_x(cls, s: TruncSeries, Nz: int) -> BiTruncSeries:
        """Embed a one-variable series as the second-variable-degree-0 slice."""
        return cls([[c] + [0] * Nz for c in s.coeffs])

    @classmethod
    def from_second(cls, s: TruncSeries, Nx: int) -> BiTruncSeries:
        """Embed a one-variable series in the second variable."""
        zero = [0] * (s.N + 1)
        return cls([list(s.coeffs)] + [zero] * Nx)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def _same_bounds(self, other: BiTruncSeries) -> None:
        if other.bounds != self.bounds:
            raise ValueError(f"bounds differ: {self.bounds} vs {other.bounds}")

    def __add__(self, other: BiTruncSeries) -> BiTruncSeries:
        self._same_bounds(other)
        return BiTruncSeries(
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        )

    def __neg__(self) -> BiTruncSeries:
        return BiTruncSeries([-c for c in r] for r in self.rows)

    def __sub__(self, other: BiTruncSeries) -> BiTruncSeries:
        return self + (-other)

    def __mul__(self, other):
        Nx, Nz = self.bounds
        if not isinstance(other, BiTruncSeries):
            c = Fraction(other)
            return BiTruncSeries([c * v for v in r] for r in self.rows)
        self._same_bounds(other)
        out = [[_ZERO] * (Nz + 1) for _ in range(Nx + 1)]
        bnz = [
            (i2, j2, v)
            for i2, row in enumerate(other.rows)
            for j2, v in enumerate(row)
            if v
        ]
        for i1, row in enumerate(self.rows):
            for j1, u in enumerate(row):
                if not u:
                    continue
                for i2, j2, v in bnz:
                    i, j = i1 + i2, j1 + j2
                    if i <= Nx and j <= Nz:
                        out[i][j] += u * v
        return BiTruncSeries(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiTruncSeries):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def substitute_power_x(self, p: int) -> BiTruncSeries:
        """Replace x by x**p."""
        Nx, Nz = self.bounds
        out = [[_ZERO] * (Nz + 1) for _ in range(Nx + 1)]
        for i, row in enumerate(self.rows):
            if p * i > Nx:
                break
            out[p * i] = list(row)
        return BiTruncSeries(out)

    def shift_second(self) -> BiTruncSeries:
        """Multiply by the second variable (top slice falls off the bound)."""
        return BiTruncSeries([_ZERO] + list(r[:-1]) for r in self.rows)

    def eval_second(self, value) -> TruncSeries:
        v = Fraction(value)
        out = []
        for row in self.rows:
            acc = _ZERO
            for c in reversed(row):
                acc = acc * v + c
            out.append(acc)
        return TruncSeries(out)

    def diagonal(self) -> TruncSeries:
        Nx, Nz = self.bounds
        return TruncSeries(self.rows[i][i] for i in range(min(Nx, Nz) + 1))

    def first_difference(self, other: BiTruncSeries):
        """First (i, j, self, other) where coefficients differ, or None."""
        self._same_bounds(other)
        for i, (ra, rb) in enumerate(zip(self.rows, other.rows)):
            for j, (a, b) in enumerate(zip(ra, rb)):
                if a != b:
                    return i, j, a, b
        return None

    def __repr__(self) -> str:
        return f"BiTruncSeries(bounds={self.bounds})"


def bi_eval_second(a: BiTruncSeries, value) -> TruncSeries:
    return a.eval_second(value)
