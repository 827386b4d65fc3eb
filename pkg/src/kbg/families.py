"""Closed-form counts r~(p, G) = r(p, G) + 1 for each group family, plus the
bundled exceptional-group table and OEIS b-file fixtures.

Sequence conventions used throughout:

* ``r_tilde_cyclic(p, n)`` is for Z_{n+1};
* ``r_tilde_binary_cyclic(p, n)`` is for Z_{2(n+1)};
* ``r_tilde_bindih(p, n)`` is for the dicyclic group of order 4n (n >= 1).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import accumulate
from operator import add
from typing import Iterable, Sequence

from .arith import is_prime, nu_p, prime_divisors
from .groups import (
    EXCEPTIONAL_ORDERS,
    SL2,
    BinaryCyclic,
    BinaryDihedral,
    BinaryOctahedral,
    Cyclic,
    Exceptional,
    GroupSpec,
    Product,
    Symmetric,
    WeylB,
    WeylD,
    Wreath,
)

__all__ = [
    "RankProfile",
    "NoClosedForm",
    "BINDIH_NOTE",
    "partition_counts",
    "prime_powers_upto",
    "symmetric_table",
    "r_tilde_cyclic",
    "r_tilde_binary_cyclic",
    "r_tilde_product",
    "r_tilde_bindih",
    "r_tilde_bindih_short",
    "bindih_discrepancy",
    "r_tilde_symmetric",
    "r_tilde_weyl_B",
    "r_tilde_weyl_D",
    "weyl_D_series_value",
    "even_parts_count",
    "even_lengths_count",
    "r_tilde_wreath",
    "exceptional_profile",
    "exceptional_names",
    "load_exceptional_table",
    "load_bfile",
    "OeisCheck",
    "run_oeis_regression",
    "r_tilde",
    "closed_form_profile",
    "order_primes",
    "ORACLE_EXCEPTIONALS",
    "enumerable_instances",
]


class NoClosedForm(ValueError):
    """No closed-form rank formula is available for this group."""


@dataclass
class RankProfile:
    """Per-prime counts r(p, G) for one group."""

    group: str
    ranks: dict[int, int]
    total_classes: int | None = None
    order: int | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if any(r < 0 for r in self.ranks.values()):
            raise ValueError(f"negative rank in {self.ranks}")

    def r(self, p: int) -> int:
        return self.ranks.get(p, 0)

    def r_tilde(self, p: int) -> int:
        return self.r(p) + 1

    @property
    def primes(self) -> list[int]:
        return sorted(self.ranks)


BINDIH_NOTE = (
    "binary dihedral, p=2: the short closed form r~ = 2 + 2^(v-1), v = nu_2(2n), "
    "is 1 below the class inventory (identity, a^n, two order-4 classes, paired "
    "a^m classes), which gives r~ = 3 + 2^(v-1); e.g. the quaternion group has 5 "
    "classes, all of 2-power order. Ranks here use the class inventory."
)


# ---------------------------------------------------------------------------
# partition counting
# ---------------------------------------------------------------------------


def prime_powers_upto(p: int, N: int) -> list[int]:
    """1, p, p^2, ... not exceeding N (always contains 1)."""
    out, k = [], 1
    while k <= max(N, 1):
        out.append(k)
        k *= p
    return out


def partition_counts(parts: Iterable[int], N: int) -> list[int]:
    """Number of partitions of 0..N with parts from ``parts`` (repeats allowed).

    A part listed twice counts as two distinguishable colours.  Each pass is
    the unbounded-knapsack update ``a[m] += a[m - k]``, executed either as a
    running sum per residue class (small k) or block by block (large k) so the
    inner loops stay in C.
    """
    a = [1] + [0] * N
    for k in parts:
        if k < 1:
            raise ValueError(f"part sizes must be positive, got {k}")
        if k > N:
            continue
        if k * k <= N:
            for r in range(k):
                a[r::k] = list(accumulate(a[r::k]))
        else:
            for start in range(k, N + 1, k):
                a[start : start + k] = map(add, a[start : start + k], a[start - k : start])
    return a


_sym_lock = threading.Lock()


@lru_cache(maxsize=64)
def _symmetric_table_cached(p: int, N: int) -> tuple[int, ...]:
    return tuple(partition_counts(prime_powers_upto(p, N), N))


def symmetric_table(p: int, N: int) -> tuple[int, ...]:
    """r~(p, S_n) for n = 0..N: partitions of n into powers of p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    with _sym_lock:
        return _symmetric_table_cached(p, N)


def _table_bound(n: int) -> int:
    b = 64
    while b < n:
        b *= 2
    return b


def r_tilde_symmetric(p: int, n: int) -> int:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return symmetric_table(p, _table_bound(n))[n]


# ---------------------------------------------------------------------------
# cyclic, binary cyclic, products, binary dihedral
# ---------------------------------------------------------------------------


def r_tilde_cyclic(p: int, n: int) -> int:
    """r~(p, Z_{n+1}) = p^nu_p(n+1)."""
    return p ** nu_p(n + 1, p)


def r_tilde_binary_cyclic(p: int, n: int) -> int:
    """r~(p, Z_{2(n+1)})."""
    return p ** nu_p(2 * (n + 1), p)


def r_tilde_product(a: RankProfile, b: RankProfile, p: int) -> int:
    """The order of a pair is the lcm of the orders, so r~ multiplies."""
    return a.r_tilde(p) * b.r_tilde(p)


def r_tilde_bindih(p: int, n: int) -> int:
    """r~(p, Dic_n) for the order-4n dicyclic group, from its class list.

    Classes: {1}, {a^n}, {a^m, a^-m} for m != 0, n, and the two classes of
    x and a x (order 4).
    """
    if n < 1:
        raise ValueError(f"binary dihedral needs n >= 1, got {n}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = nu_p(2 * n, p)
    if p == 2:
        # 2^v elements of 2-power order in <a>; 0 and n are singletons
        return 1 + 1 + 2 + (2**v - 2) // 2
    return 1 + (p**v - 1) // 2


def r_tilde_bindih_short(p: int, n: int) -> int:
    """The short closed form 2 + 2^(v-1) (p = 2); agrees with r_tilde_bindih for odd p."""
    if n < 1:
        raise ValueError(f"binary dihedral needs n >= 1, got {n}")
    if p == 2:
        return 2 + 2 ** (nu_p(2 * n, 2) - 1)
    return r_tilde_bindih(p, n)


def bindih_discrepancy(n: int) -> tuple[int, int]:
    """(short form, class inventory) at p = 2 for Dic_n."""
    return r_tilde_bindih_short(2, n), r_tilde_bindih(2, n)


# ---------------------------------------------------------------------------
# Weyl groups B and D
# ---------------------------------------------------------------------------


def r_tilde_weyl_B(p: int, n: int) -> int:
    """Pairs of partitions (positive, negative cycles); negative cycles force p = 2."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    a = symmetric_table(p, _table_bound(n))
    if p != 2:
        return a[n]
    return sum(a[m] * a[n - m] for m in range(n + 1))


@lru_cache(maxsize=16)
def _even_parts_table(N: int) -> tuple[int, ...]:
    # parity-tracking knapsack over parts 1, 2, 4, ...
    even = [1] + [0] * N
    odd = [0] * (N + 1)
    for k in prime_powers_upto(2, N):
        if k > N:
            continue
        for m in range(k, N + 1):
            even[m], odd[m] = even[m] + odd[m - k], odd[m] + even[m - k]
    return tuple(even)


def even_parts_count(n: int) -> int:
    """Partitions of n into powers of 2 with an even number of parts."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _even_parts_table(_table_bound(n))[n]


@lru_cache(maxsize=16)
def _even_lengths_table(N: int) -> tuple[int, ...]:
    return tuple(partition_counts([k for k in prime_powers_upto(2, N) if k > 1], N))


def even_lengths_count(n: int) -> int:
    """Partitions of n into powers of 2, none equal to 1."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _even_lengths_table(_table_bound(n))[n]


def weyl_D_series_value(p: int, n: int) -> int:
    """The W(D_n) count formula evaluated without the n >= 2 guard.

    At n = 0, 1 this gives 2 and 1, the constant and linear terms of the
    closed-form generating function; those indices are not groups of type D.
    """
    a = symmetric_table(p, _table_bound(n))
    if p != 2:
        return a[n]
    return sum(a[m] * even_parts_count(n - m) for m in range(n + 1)) + even_lengths_count(n)


def r_tilde_weyl_D(p: int, n: int) -> int:
    """Negative cycles must be even in number; an all-positive, all-even-length
    cycle type splits into two classes."""
    if n < 2:
        raise ValueError(f"W(D_n) needs n >= 2, got {n}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return weyl_D_series_value(p, n)


# ---------------------------------------------------------------------------
# wreath products
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _wreath_table(p: int, colours: int, N: int) -> tuple[int, ...]:
    parts = [k for k in prime_powers_upto(p, N) for _ in range(colours)]
    return tuple(partition_counts(parts, N))


def r_tilde_wreath(p: int, inner_r_tilde: int, n: int) -> int:
    """Partitions of n into p-power parts, each part coloured by one of the
    inner group's r~(p, G) classes of p-power order."""
    if inner_r_tilde < 1:
        raise ValueError(f"inner r~ must be >= 1, got {inner_r_tilde}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _wreath_table(p, inner_r_tilde, _table_bound(n))[n]


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def _data_text(name: str) -> str:
    return resources.files("kbg").joinpath("data", name).read_text()


def load_exceptional_table(text: str | None = None) -> dict[str, dict[int, int]]:
    """Parse ``name p:r p:r ...`` lines; ``#`` starts a comment."""
    if text is None:
        text = _data_text("exceptional.txt")
    table = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, *fields = line.split()
        ranks = {}
        for f in fields:
            p, _, r = f.partition(":")
            ranks[int(p)] = int(r)
        table[name] = ranks
    return table


_EXCEPTIONAL = load_exceptional_table()


def exceptional_names() -> list[str]:
    return list(_EXCEPTIONAL)


def exceptional_profile(name: str) -> RankProfile:
    try:
        ranks = _EXCEPTIONAL[name]
    except KeyError:
        raise ValueError(f"unknown exceptional group {name!r}") from None
    return RankProfile(f"exc:{name}", dict(ranks), order=EXCEPTIONAL_ORDERS.get(name))


def load_bfile(anumber: str) -> dict[int, int]:
    """Read a bundled OEIS b-file (``n a(n)`` per line) such as ``"A018819"``."""
    text = _data_text(f"b{anumber[1:]}.txt")
    out = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        n, v = line.split()
        out[int(n)] = int(v)
    return out


@dataclass(frozen=True)
class OeisCheck:
    anumber: str
    quantity: str
    terms: int
    first_mismatch: tuple[int, int, int] | None  # (n, fixture, computed)

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def describe(self) -> str:
        head = f"[{'PASS' if self.passed else 'FAIL'}] {self.anumber}: {self.quantity}, n < {self.terms}"
        if self.first_mismatch:
            n, want, got = self.first_mismatch
            head += f"; first mismatch at n={n}: fixture {want}, computed {got}"
        return head

    def to_record(self) -> dict:
        return {
            "anumber": self.anumber,
            "quantity": self.quantity,
            "terms": self.terms,
            "passed": self.passed,
            "first_mismatch": None if self.first_mismatch is None else [str(v) for v in self.first_mismatch],
        }


def _oeis_check(anumber: str, quantity: str, N: int, computed, shift: int = 0) -> OeisCheck:
    data = load_bfile(anumber)
    for n in range(N):
        if n + shift not in data:
            raise ValueError(f"{anumber} fixture has no term {n + shift}")
        want, got = data[n + shift], computed(n)
        if want != got:
            return OeisCheck(anumber, quantity, N, (n, want, got))
    return OeisCheck(anumber, quantity, N, None)


def run_oeis_regression(N: int = 64) -> list[OeisCheck]:
    """Closed forms against the bundled b-files for n = 0 .. N-1.

    A062051 counts partitions into powers of 3, i.e. r~(3, S_n) = r(3, S_n) + 1.
    """
    return [
        _oeis_check("A018819", "r~(2, S_n)", N, lambda n: r_tilde_symmetric(2, n)),
        _oeis_check("A062051", "r~(3, S_n)", N, lambda n: r_tilde_symmetric(3, n)),
        _oeis_check("A006519", "r~(2, Z_(n+1)) vs a(n+1)", N, lambda n: r_tilde_cyclic(2, n), shift=1),
    ]


# ---------------------------------------------------------------------------
# dispatch over group specs
# ---------------------------------------------------------------------------

_SL2_FIXTURE = {3: "BinT", 5: "BinI"}


def r_tilde(spec: GroupSpec, p: int) -> int:
    """Closed-form r~(p, G) for any spec that has one."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(spec, Cyclic):
        return r_tilde_cyclic(p, spec.order - 1)
    if isinstance(spec, BinaryCyclic):
        return r_tilde_binary_cyclic(p, spec.m - 1)
    if isinstance(spec, BinaryDihedral):
        return r_tilde_bindih(p, spec.n)
    if isinstance(spec, Symmetric):
        return r_tilde_symmetric(p, spec.n)
    if isinstance(spec, WeylB):
        return r_tilde_weyl_B(p, spec.n)
    if isinstance(spec, WeylD):
        return r_tilde_weyl_D(p, spec.n)
    if isinstance(spec, SL2):
        if spec.q not in _SL2_FIXTURE:
            raise NoClosedForm(f"no closed form for {spec}; use the oracle")
        return exceptional_profile(_SL2_FIXTURE[spec.q]).r_tilde(p)
    if isinstance(spec, BinaryOctahedral):
        return exceptional_profile("BinO").r_tilde(p)
    if isinstance(spec, Exceptional):
        return exceptional_profile(spec.name).r_tilde(p)
    if isinstance(spec, Product):
        return r_tilde(spec.left, p) * r_tilde(spec.right, p)
    if isinstance(spec, Wreath):
        return r_tilde_wreath(p, r_tilde(spec.inner, p), spec.n)
    raise TypeError(f"not a group spec: {spec!r}")


def _primes_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if is_prime(q)]


def order_primes(spec: GroupSpec) -> list[int]:
    """Primes dividing |G|, found structurally (no factorial is factored)."""
    if isinstance(spec, Cyclic):
        return prime_divisors(spec.order) if spec.order > 1 else []
    if isinstance(spec, BinaryCyclic):
        return prime_divisors(2 * spec.m)
    if isinstance(spec, BinaryDihedral):
        return prime_divisors(4 * spec.n)
    if isinstance(spec, Symmetric):
        return _primes_upto(spec.n)
    if isinstance(spec, WeylB):
        return sorted(set(_primes_upto(spec.n)) | ({2} if spec.n >= 1 else set()))
    if isinstance(spec, WeylD):
        return sorted(set(_primes_upto(spec.n)) | {2})
    if isinstance(spec, SL2):
        return prime_divisors(spec.q * (spec.q**2 - 1))
    if isinstance(spec, BinaryOctahedral):
        return [2, 3]
    if isinstance(spec, Exceptional):
        return prime_divisors(EXCEPTIONAL_ORDERS[spec.name])
    if isinstance(spec, Product):
        return sorted(set(order_primes(spec.left)) | set(order_primes(spec.right)))
    if isinstance(spec, Wreath):
        if spec.n == 0:
            return []
        return sorted(set(order_primes(spec.inner)) | set(_primes_upto(spec.n)))
    raise TypeError(f"not a group spec: {spec!r}")


def closed_form_profile(spec: GroupSpec, primes: Sequence[int] | None = None) -> RankProfile:
    if primes is None:
        primes = order_primes(spec)
    ranks = {p: r_tilde(spec, p) - 1 for p in primes}
    notes = []
    if _contains_bindih(spec) and 2 in ranks:
        notes.append(BINDIH_NOTE)
    return RankProfile(str(spec), ranks, notes=notes)


def _contains_bindih(spec: GroupSpec) -> bool:
    if isinstance(spec, BinaryDihedral):
        return True
    if isinstance(spec, Product):
        return _contains_bindih(spec.left) or _contains_bindih(spec.right)
    if isinstance(spec, Wreath):
        return _contains_bindih(spec.inner)
    return False


# ---------------------------------------------------------------------------
# instances small enough for the brute-force oracle
# ---------------------------------------------------------------------------

ORACLE_EXCEPTIONALS = ("A4", "S4", "S5", "A5", "BinT", "BinI", "BinO", "WD4", "WG2", "WF4", "H3", "H4")

_WREATH_INSTANCES = (
    "wreath(cyc:2,2)",
    "wreath(cyc:2,3)",
    "wreath(cyc:2,4)",
    "wreath(cyc:2,5)",
    "wreath(cyc:2,6)",
    "wreath(cyc:3,3)",
    "wreath(cyc:3,4)",
    "wreath(cyc:4,3)",
    "wreath(cyc:5,3)",
    "wreath(cyc:6,3)",
    "wreath(sym:3,3)",
    "wreath(sym:3,4)",
    "wreath(dic:2,3)",
    "wreath(dic:3,2)",
    "wreath(sl2:3,2)",
    "wreath(exc:A4,2)",
    "wreath(prod(cyc:2,cyc:3),3)",
)


def enumerable_instances() -> list[str]:
    """Group specs on which closed forms are checked against enumeration."""
    out = [f"cyc:{m}" for m in range(1, 32)]
    out += [f"bincyc:{m}" for m in range(1, 32)]
    out += [f"dic:{n}" for n in range(1, 13)]
    out += [f"sym:{n}" for n in range(0, 8)]
    out += [f"weylB:{n}" for n in range(0, 7)]
    out += [f"weylD:{n}" for n in range(2, 7)]
    out += [f"prod(cyc:{n},cyc:{m})" for n in range(1, 9) for m in range(1, 9)]
    out += ["sl2:3", "sl2:5", "binO"]
    out += [f"exc:{name}" for name in ORACLE_EXCEPTIONALS]
    out += list(_WREATH_INSTANCES)
    return out
