"""Symbolic group descriptors and the textual group-spec grammar.

Grammar (whitespace ignored)::

    cyc:m        cyclic group Z_m, m >= 1
    bincyc:m     binary cyclic group Z_{2m}, m >= 1
    dic:n        binary dihedral (dicyclic) group of order 4n, n >= 1
    sym:n        symmetric group S_n
    weylB:n      hyperoctahedral group W(B_n) = Z_2 wr S_n
    weylD:n      W(D_n), n >= 2
    sl2:q        SL(2, F_q), q prime
    binO         binary octahedral group (order 48)
    exc:NAME     exceptional group from the fixture table
    prod(a,b)    direct product
    wreath(a,n)  a wr S_n
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .arith import is_prime

__all__ = [
    "GroupSpec",
    "Cyclic",
    "BinaryCyclic",
    "BinaryDihedral",
    "Symmetric",
    "WeylB",
    "WeylD",
    "SL2",
    "BinaryOctahedral",
    "Exceptional",
    "Product",
    "Wreath",
    "EXCEPTIONAL_ORDERS",
    "SpecError",
    "parse_group",
    "group_order",
]


class SpecError(ValueError):
    """Malformed or out-of-range group spec."""


EXCEPTIONAL_ORDERS = {
    "A4": 12,
    "S4": 24,
    "S5": 120,
    "A5": 60,
    "BinT": 24,
    "BinI": 120,
    "BinO": 48,
    "WD4": 192,
    "WF4": 1152,
    "WG2": 12,
    "WE6": 51840,
    "WE7": 2903040,
    "WE8": 696729600,
    "H3": 120,
    "H4": 14400,
}


class GroupSpec:
    """Base class of all group descriptors."""

    def __str__(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise SpecError(msg)


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    order: int

    def __post_init__(self):
        _need(self.order >= 1, f"cyc needs order >= 1, got {self.order}")

    def __str__(self):
        return f"cyc:{self.order}"


@dataclass(frozen=True)
class BinaryCyclic(GroupSpec):
    m: int

    def __post_init__(self):
        _need(self.m >= 1, f"bincyc needs m >= 1, got {self.m}")

    def __str__(self):
        return f"bincyc:{self.m}"


@dataclass(frozen=True)
class BinaryDihedral(GroupSpec):
    n: int

    def __post_init__(self):
        _need(self.n >= 1, f"dic needs n >= 1, got {self.n}")

    def __str__(self):
        return f"dic:{self.n}"


@dataclass(frozen=True)
class Symmetric(GroupSpec):
    n: int

    def __post_init__(self):
        _need(self.n >= 0, f"sym needs n >= 0, got {self.n}")

    def __str__(self):
        return f"sym:{self.n}"


@dataclass(frozen=True)
class WeylB(GroupSpec):
    n: int

    def __post_init__(self):
        _need(self.n >= 0, f"weylB needs n >= 0, got {self.n}")

    def __str__(self):
        return f"weylB:{self.n}"


@dataclass(frozen=True)
class WeylD(GroupSpec):
    n: int

    def __post_init__(self):
        _need(self.n >= 2, f"weylD needs n >= 2, got {self.n}")

    def __str__(self):
        return f"weylD:{self.n}"


@dataclass(frozen=True)
class SL2(GroupSpec):
    q: int

    def __post_init__(self):
        _need(is_prime(self.q), f"sl2 needs a prime field size, got {self.q}")

    def __str__(self):
        return f"sl2:{self.q}"


@dataclass(frozen=True)
class BinaryOctahedral(GroupSpec):
    def __str__(self):
        return "binO"


@dataclass(frozen=True)
class Exceptional(GroupSpec):
    name: str

    def __post_init__(self):
        _need(
            self.name in EXCEPTIONAL_ORDERS,
            f"unknown exceptional group {self.name!r}; known: {', '.join(EXCEPTIONAL_ORDERS)}",
        )

    def __str__(self):
        return f"exc:{self.name}"


@dataclass(frozen=True)
class Product(GroupSpec):
    left: GroupSpec
    right: GroupSpec

    def __str__(self):
        return f"prod({self.left},{self.right})"


@dataclass(frozen=True)
class Wreath(GroupSpec):
    inner: GroupSpec
    n: int

    def __post_init__(self):
        _need(self.n >= 0, f"wreath needs n >= 0, got {self.n}")

    def __str__(self):
        return f"wreath({self.inner},{self.n})"


_ATOMS = {
    "cyc": Cyclic,
    "bincyc": BinaryCyclic,
    "dic": BinaryDihedral,
    "sym": Symmetric,
    "weylB": WeylB,
    "weylD": WeylD,
    "sl2": SL2,
}

_TOKEN = re.compile(r"\s*(prod|wreath|binO|exc:[A-Za-z0-9]+|[A-Za-z0-9]+:-?\d+|-?\d+|[(),])")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecError(f"cannot parse group spec at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_group(text: str) -> GroupSpec:
    """Parse a group spec string such as ``"wreath(dic:2,3)"``."""
    tokens = _tokenize(text)
    spec, rest = _parse(tokens)
    if rest:
        raise SpecError(f"trailing input in group spec {text!r}: {' '.join(rest)}")
    return spec


def _expect(tokens: list[str], tok: str) -> list[str]:
    if not tokens or tokens[0] != tok:
        raise SpecError(f"expected {tok!r} in group spec")
    return tokens[1:]


def _parse(tokens: list[str]) -> tuple[GroupSpec, list[str]]:
    if not tokens:
        raise SpecError("empty group spec")
    head, rest = tokens[0], tokens[1:]
    if head == "binO":
        return BinaryOctahedral(), rest
    if head.startswith("exc:"):
        return Exceptional(head[4:]), rest
    if head == "prod":
        rest = _expect(rest, "(")
        a, rest = _parse(rest)
        rest = _expect(rest, ",")
        b, rest = _parse(rest)
        return Product(a, b), _expect(rest, ")")
    if head == "wreath":
        rest = _expect(rest, "(")
        a, rest = _parse(rest)
        rest = _expect(rest, ",")
        if not rest or not re.fullmatch(r"-?\d+", rest[0]):
            raise SpecError("wreath needs an integer degree")
        n = int(rest[0])
        return Wreath(a, n), _expect(rest[1:], ")")
    if ":" in head:
        kind, _, arg = head.partition(":")
        if kind in _ATOMS:
            return _ATOMS[kind](int(arg)), rest
    raise SpecError(f"unknown group family {head!r}")


def group_order(spec: GroupSpec) -> int:
    """Order of the group a spec describes (exact integer)."""
    if isinstance(spec, Cyclic):
        return spec.order
    if isinstance(spec, BinaryCyclic):
        return 2 * spec.m
    if isinstance(spec, BinaryDihedral):
        return 4 * spec.n
    if isinstance(spec, Symmetric):
        return math.factorial(spec.n)
    if isinstance(spec, WeylB):
        return 2**spec.n * math.factorial(spec.n)
    if isinstance(spec, WeylD):
        return 2 ** (spec.n - 1) * math.factorial(spec.n)
    if isinstance(spec, SL2):
        return spec.q * (spec.q**2 - 1)
    if isinstance(spec, BinaryOctahedral):
        return 48
    if isinstance(spec, Exceptional):
        return EXCEPTIONAL_ORDERS[spec.name]
    if isinstance(spec, Product):
        return group_order(spec.left) * group_order(spec.right)
    if isinstance(spec, Wreath):
        return group_order(spec.inner) ** spec.n * math.factorial(spec.n)
    raise TypeError(f"not a group spec: {spec!r}")
