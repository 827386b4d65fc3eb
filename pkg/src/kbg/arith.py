"""Exact scalar arithmetic: p-adic valuation/norm, Q(sqrt d) numbers, quaternions.

Everything here is immutable and hashable so values can be used as dictionary
keys during group enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "is_prime",
    "prime_divisors",
    "nu_p",
    "p_norm",
    "PAdic",
    "QuadNum",
    "Quat",
    "quat_mul",
]


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_divisors(n: int) -> list[int]:
    """Sorted list of the distinct primes dividing ``n``."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _check(n: int, p: int) -> None:
    if n < 1:
        raise ValueError(f"valuation of {n} is undefined (need n >= 1)")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def nu_p(n: int, p: int) -> int:
    """Largest ``v`` with ``p**v`` dividing ``n``.

    >>> nu_p(54, 3)
    3
    """
    _check(n, p)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_norm(n: int, p: int) -> Fraction:
    """The p-adic norm ``p**-nu_p(n)`` as an exact rational."""
    return Fraction(1, p ** nu_p(n, p))


@dataclass(frozen=True)
class PAdic:
    """A positive integer together with its p-adic valuation and norm."""

    n: int
    p: int

    def __post_init__(self) -> None:
        _check(self.n, self.p)

    @property
    def v(self) -> int:
        return nu_p(self.n, self.p)

    @property
    def norm(self) -> Fraction:
        return p_norm(self.n, self.p)


_ALLOWED_D = (2, 5)


class QuadNum:
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and ``d`` in {2, 5}."""

    __slots__ = ("a", "b", "d", "_hash")

    def __init__(self, a=0, b=0, d: int = 2):
        if d not in _ALLOWED_D:
            raise ValueError(f"only d in {_ALLOWED_D} is supported, got {d}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d
        self._hash = hash((self.a, self.b, d))

    def _coerce(self, other) -> QuadNum:
        if isinstance(other, QuadNum):
            if other.d != self.d:
                raise ValueError(f"mismatched fields: sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNum(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadNum:
        return QuadNum(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNum(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNum(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadNum:
        return QuadNum(self.a, -self.b, self.d)

    def field_norm(self) -> Fraction:
        """``self * self.conjugate()``, which is rational."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> QuadNum:
        n = self.field_norm()
        if n == 0:
            raise ZeroDivisionError("QuadNum division by zero")
        return QuadNum(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadNum):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self) -> str:
        return f"QuadNum({self.a}, {self.b}, d={self.d})"


class Quat:
    """Quaternion ``w + x i + y j + z k`` with QuadNum coefficients over one field."""

    __slots__ = ("w", "x", "y", "z", "d", "_hash")

    def __init__(self, w, x, y, z, d: int = 2):
        coords = []
        for c in (w, x, y, z):
            if isinstance(c, QuadNum):
                if c.d != d:
                    raise ValueError(f"coefficient over sqrt({c.d}) in a sqrt({d}) quaternion")
                coords.append(c)
            else:
                coords.append(QuadNum(c, 0, d))
        self.w, self.x, self.y, self.z = coords
        self.d = d
        self._hash = hash((self.w, self.x, self.y, self.z))

    @classmethod
    def one(cls, d: int = 2) -> Quat:
        return cls(1, 0, 0, 0, d)

    def __mul__(self, other: Quat) -> Quat:
        if not isinstance(other, Quat):
            return NotImplemented
        return quat_mul(self, other)

    def __neg__(self) -> Quat:
        return Quat(-self.w, -self.x, -self.y, -self.z, self.d)

    def conjugate(self) -> Quat:
        return Quat(self.w, -self.x, -self.y, -self.z, self.d)

    def norm(self) -> QuadNum:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inverse(self) -> Quat:
        n = self.norm()
        c = self.conjugate()
        return Quat(c.w / n, c.x / n, c.y / n, c.z / n, self.d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quat):
            return NotImplemented
        return (self.w, self.x, self.y, self.z) == (other.w, other.x, other.y, other.z)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Quat({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def quat_mul(q1: Quat, q2: Quat) -> Quat:
    """Hamilton product."""
    if q1.d != q2.d:
        raise ValueError(f"mismatched fields: sqrt({q1.d}) vs sqrt({q2.d})")
    a1, b1, c1, d1 = q1.w, q1.x, q1.y, q1.z
    a2, b2, c2, d2 = q2.w, q2.x, q2.y, q2.z
    return Quat(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        q1.d,
    )
