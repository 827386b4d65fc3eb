"""Brute-force ground truth: enumerate a finite group, split it into conjugacy
classes, and count the classes whose elements have prime-power order.

Nothing here uses a rank formula; it is the independent check for
:mod:`kbg.families`.
"""
from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Hashable, Sequence

from .arith import QuadNum, Quat, is_prime, prime_divisors
from .families import BINDIH_NOTE, RankProfile, closed_form_profile, enumerable_instances, order_primes
from .groups import (
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
    group_order,
    parse_group,
)

__all__ = [
    "DEFAULT_CAP",
    "CapExceeded",
    "NotEnumerable",
    "Perm",
    "Mat2",
    "Dicyclic",
    "WreathElem",
    "ProductElem",
    "GroupTable",
    "ConjClass",
    "oracle_cap",
    "generators_for",
    "enumerate_group",
    "conjugacy_classes",
    "element_order",
    "rank_profile_bruteforce",
    "oracle_profile",
    "FIXTURE_ONLY",
    "SweepEntry",
    "SweepReport",
    "cross_check",
    "run_oracle_sweep",
]

DEFAULT_CAP = 10**6

# No concrete model is provided for these; their ranks are fixture values only.
FIXTURE_ONLY = frozenset({"WE6", "WE7", "WE8"})


class CapExceeded(RuntimeError):
    """The group is larger than the configured enumeration cap."""


class NotEnumerable(ValueError):
    """No concrete element representation exists for this group."""


def oracle_cap() -> int:
    """Enumeration cap, overridable with ``KBG_ORACLE_CAP``."""
    raw = os.environ.get("KBG_ORACLE_CAP")
    return int(raw) if raw else DEFAULT_CAP


# ---------------------------------------------------------------------------
# element representations
# ---------------------------------------------------------------------------


class Perm:
    """Permutation of {0..m-1} stored as its image tuple; ``a * b`` applies b first."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        self.images = tuple(images)
        self._hash = hash(self.images)

    @classmethod
    def identity(cls, m: int) -> Perm:
        return cls(range(m))

    @classmethod
    def cycle(cls, m: int, points: Sequence[int]) -> Perm:
        img = list(range(m))
        for a, b in zip(points, list(points[1:]) + [points[0]]):
            img[a] = b
        return cls(img)

    def __mul__(self, other: Perm) -> Perm:
        a = self.images
        return Perm([a[i] for i in other.images])

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"


class Mat2:
    """2x2 matrix ``[[a, b], [c, d]]`` over F_q."""

    __slots__ = ("a", "b", "c", "d", "q", "_hash")

    def __init__(self, a: int, b: int, c: int, d: int, q: int):
        self.a, self.b, self.c, self.d = a % q, b % q, c % q, d % q
        self.q = q
        self._hash = hash((self.a, self.b, self.c, self.d, q))

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.q

    def __mul__(self, o: Mat2) -> Mat2:
        q = self.q
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
            q,
        )

    def inverse(self) -> Mat2:
        det_inv = pow(self.det(), -1, self.q)
        return Mat2(self.d * det_inv, -self.b * det_inv, -self.c * det_inv, self.a * det_inv, self.q)

    def __eq__(self, o) -> bool:
        return (
            isinstance(o, Mat2)
            and (self.a, self.b, self.c, self.d, self.q) == (o.a, o.b, o.c, o.d, o.q)
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]] mod {self.q})"


class Dicyclic:
    """``a**i x**eps`` in <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>."""

    __slots__ = ("i", "eps", "n", "_hash")

    def __init__(self, i: int, eps: int, n: int):
        self.i = i % (2 * n)
        self.eps = eps
        self.n = n
        self._hash = hash((self.i, eps, n))

    def __mul__(self, o: Dicyclic) -> Dicyclic:
        n = self.n
        if self.eps == 0:
            return Dicyclic(self.i + o.i, o.eps, n)
        # x a^j = a^-j x, and x x = a^n
        if o.eps == 0:
            return Dicyclic(self.i - o.i, 1, n)
        return Dicyclic(self.i - o.i + n, 0, n)

    def inverse(self) -> Dicyclic:
        if self.eps == 0:
            return Dicyclic(-self.i, 0, self.n)
        # (a^i x)^2 = a^n, so its inverse is a^i x a^n = a^(i+n) x
        return Dicyclic(self.i + self.n, 1, self.n)

    def __eq__(self, o) -> bool:
        return isinstance(o, Dicyclic) and (self.i, self.eps, self.n) == (o.i, o.eps, o.n)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Dicyclic(a^{self.i} x^{self.eps}, n={self.n})"


class WreathElem:
    """``(base, top)`` in G wr S_n.

    Composition follows the action (i, g) -> (top(i), base[top(i)] * g), so
    ``(f, s) * (h, t) = (k, s*t)`` with ``k[i] = f[i] * h[s^-1(i)]``.
    """

    __slots__ = ("base", "top", "_hash")

    def __init__(self, base: tuple, top: Perm):
        self.base = tuple(base)
        self.top = top
        self._hash = hash((self.base, top))

    def __mul__(self, o: WreathElem) -> WreathElem:
        sinv = self.top.inverse().images
        f, h = self.base, o.base
        return WreathElem([f[i] * h[sinv[i]] for i in range(len(f))], self.top * o.top)

    def inverse(self) -> WreathElem:
        s = self.top.images
        f = self.base
        return WreathElem([f[s[j]].inverse() for j in range(len(f))], self.top.inverse())

    def __eq__(self, o) -> bool:
        return isinstance(o, WreathElem) and self.base == o.base and self.top == o.top

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"WreathElem({list(self.base)}, {self.top})"


class ProductElem:
    __slots__ = ("left", "right", "_hash")

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self._hash = hash((left, right))

    def __mul__(self, o: ProductElem) -> ProductElem:
        return ProductElem(self.left * o.left, self.right * o.right)

    def inverse(self) -> ProductElem:
        return ProductElem(self.left.inverse(), self.right.inverse())

    def __eq__(self, o) -> bool:
        return isinstance(o, ProductElem) and self.left == o.left and self.right == o.right

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"({self.left!r}, {self.right!r})"


# ---------------------------------------------------------------------------
# concrete models
# ---------------------------------------------------------------------------


def _symmetric_gens(n: int) -> tuple[list[Perm], Perm]:
    e = Perm.identity(n)
    if n < 2:
        return [], e
    return [Perm.cycle(n, [0, 1]), Perm.cycle(n, list(range(n)))], e


def _signed_gens(n: int, even: bool) -> tuple[list[Perm], Perm]:
    # point i < n is +i, point i + n is -i
    m = 2 * n
    e = Perm.identity(m)
    gens = []
    if n >= 2:
        swap = list(range(m))
        swap[0], swap[1], swap[n], swap[n + 1] = 1, 0, n + 1, n
        gens.append(Perm(swap))
        rot = [(i + 1) % n for i in range(n)] + [n + (i + 1) % n for i in range(n)]
        gens.append(Perm(rot))
    if even:
        if n >= 2:
            # +0 -> -1, +1 -> -0
            fs = list(range(m))
            fs[0], fs[1], fs[n], fs[n + 1] = n + 1, n, 1, 0
            gens.append(Perm(fs))
    elif n >= 1:
        flip = list(range(m))
        flip[0], flip[n] = n, 0
        gens.append(Perm(flip))
    return gens, e


def _sl2_gens(q: int) -> tuple[list[Mat2], Mat2]:
    return [Mat2(1, 1, 0, 1, q), Mat2(1, 0, 1, 1, q)], Mat2(1, 0, 0, 1, q)


def _quat_gens(kind: str) -> tuple[list[Quat], Quat]:
    half = Fraction(1, 2)
    if kind == "BinT":
        e = Quat.one(2)
        return [Quat(0, 1, 0, 0), Quat(half, half, half, half)], e
    if kind == "BinO":
        r = QuadNum(0, half, 2)  # 1/sqrt(2)
        e = Quat.one(2)
        return [Quat(r, r, 0, 0), Quat(half, half, half, half)], e
    if kind == "BinI":
        phi = QuadNum(half, half, 5)
        phi_inv = QuadNum(-half, half, 5)
        e = Quat.one(5)
        return [
            Quat(half, half, half, half, d=5),
            Quat(phi * half, phi_inv * half, half, 0, d=5),
        ], e
    raise NotEnumerable(kind)


def _dot(u, v):
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def reflection_group_gens(roots: Sequence[tuple], mirrors: Sequence[tuple] | None = None) -> tuple[list[Perm], Perm]:
    """Reflections as permutations of a root set closed under them.

    ``mirrors`` defaults to one root from each +/- pair of ``roots``.
    """
    index = {r: i for i, r in enumerate(roots)}
    if mirrors is None:
        mirrors = []
        for a in roots:
            if tuple(-c for c in a) not in mirrors:
                mirrors.append(a)
    gens: list[Perm] = []
    for a in mirrors:
        aa = _dot(a, a)
        img = []
        for v in roots:
            k = 2 * _dot(v, a) / aa
            w = tuple(vc - k * ac for vc, ac in zip(v, a))
            if w not in index:
                raise ValueError("root set is not closed under reflections")
            img.append(index[w])
        gens.append(Perm(img))
    return gens, Perm.identity(len(roots))


def _signs(k: int):
    for mask in range(2**k):
        yield tuple(-1 if mask >> b & 1 else 1 for b in range(k))


def f4_roots() -> list[tuple]:
    roots = set()
    for i in range(4):
        for s in (1, -1):
            v = [Fraction(0)] * 4
            v[i] = Fraction(s)
            roots.add(tuple(v))
        for j in range(i + 1, 4):
            for si, sj in _signs(2):
                v = [Fraction(0)] * 4
                v[i], v[j] = Fraction(si), Fraction(sj)
                roots.add(tuple(v))
    for sg in _signs(4):
        roots.add(tuple(Fraction(s, 2) for s in sg))
    return sorted(roots)


def h3_roots() -> list[tuple]:
    half = Fraction(1, 2)
    zero, one = QuadNum(0, 0, 5), QuadNum(1, 0, 5)
    phi = QuadNum(half, half, 5)
    phi_inv = QuadNum(-half, half, 5)
    roots = []
    for i in range(3):
        for s in (1, -1):
            v = [zero] * 3
            v[i] = one * s
            roots.append(tuple(v))
    base = (one * half, phi * half, phi_inv * half)
    for sg in _signs(3):
        signed = [c * s for c, s in zip(base, sg)]
        for shift in range(3):
            roots.append(tuple(signed[(k + shift) % 3] for k in range(3)))
    return roots


def h4_roots() -> list[tuple]:
    """The 120 unit roots of H4 (the 600-cell vertices) over Q(sqrt 5)."""
    half = Fraction(1, 2)
    zero, one = QuadNum(0, 0, 5), QuadNum(1, 0, 5)
    phi = QuadNum(half, half, 5)
    phi_inv = QuadNum(-half, half, 5)
    roots = []
    for i in range(4):
        for s in (1, -1):
            v = [zero] * 4
            v[i] = one * s
            roots.append(tuple(v))
    for sg in _signs(4):
        roots.append(tuple(one * Fraction(s, 2) for s in sg))
    even_perms = [q for q in permutations(range(4)) if _parity(q) == 0]
    base = (zero, one * half, phi * half, phi_inv * half)
    for sg in _signs(3):
        signed = (zero,) + tuple(c * s for c, s in zip(base[1:], sg))
        for q in even_perms:
            roots.append(tuple(signed[q[k]] for k in range(4)))
    return roots


def _chain_roots(roots: Sequence[tuple], dots: Sequence) -> list[tuple]:
    """Roots r_0..r_k forming a linear Coxeter diagram: r_i . r_(i+1) = dots[i],
    all other pairs orthogonal."""

    def extend(chain):
        if len(chain) == len(dots) + 1:
            return chain
        for r in roots:
            if _dot(chain[-1], r) != dots[len(chain) - 1]:
                continue
            if any(_dot(c, r) != 0 for c in chain[:-1]):
                continue
            found = extend(chain + [r])
            if found:
                return found
        return None

    for r0 in roots:
        found = extend([r0])
        if found:
            return found
    raise ValueError("no simple system with the requested diagram")


def _parity(q: Sequence[int]) -> int:
    return sum(1 for a in range(len(q)) for b in range(a + 1, len(q)) if q[a] > q[b]) % 2


def _exceptional_gens(name: str):
    if name in FIXTURE_ONLY:
        raise NotEnumerable(f"exc:{name} has no concrete model; its ranks are fixture values")
    if name == "A4":
        return [Perm.cycle(4, [0, 1, 2]), Perm([1, 0, 3, 2])], Perm.identity(4)
    if name == "S4":
        return _symmetric_gens(4)
    if name == "S5":
        return _symmetric_gens(5)
    if name == "A5":
        return [Perm.cycle(5, [0, 1, 2]), Perm.cycle(5, [0, 1, 2, 3, 4])], Perm.identity(5)
    if name in ("BinT", "BinO", "BinI"):
        return _quat_gens(name)
    if name == "WD4":
        return _signed_gens(4, even=True)
    if name == "WG2":
        # dihedral group of the hexagon
        return [Perm.cycle(6, list(range(6))), Perm([(-i) % 6 for i in range(6)])], Perm.identity(6)
    if name == "WF4":
        return reflection_group_gens(f4_roots())
    if name == "H3":
        return reflection_group_gens(h3_roots())
    if name == "H4":
        half = Fraction(1, 2)
        cos_pi5 = QuadNum(Fraction(1, 4), Fraction(1, 4), 5)
        roots = h4_roots()
        return reflection_group_gens(roots, _chain_roots(roots, [-cos_pi5, -half, -half]))
    raise NotEnumerable(name)  # pragma: no cover


def generators_for(spec: GroupSpec) -> tuple[list, Hashable]:
    """Concrete generators and identity for a group spec."""
    if isinstance(spec, Cyclic):
        m = spec.order
        return ([Perm.cycle(m, list(range(m)))] if m > 1 else []), Perm.identity(m)
    if isinstance(spec, BinaryCyclic):
        m = 2 * spec.m
        return [Perm.cycle(m, list(range(m)))], Perm.identity(m)
    if isinstance(spec, BinaryDihedral):
        n = spec.n
        return [Dicyclic(1, 0, n), Dicyclic(0, 1, n)], Dicyclic(0, 0, n)
    if isinstance(spec, Symmetric):
        return _symmetric_gens(spec.n)
    if isinstance(spec, WeylB):
        return _signed_gens(spec.n, even=False)
    if isinstance(spec, WeylD):
        return _signed_gens(spec.n, even=True)
    if isinstance(spec, SL2):
        return _sl2_gens(spec.q)
    if isinstance(spec, BinaryOctahedral):
        return _quat_gens("BinO")
    if isinstance(spec, Exceptional):
        return _exceptional_gens(spec.name)
    if isinstance(spec, Product):
        lg, le = generators_for(spec.left)
        rg, re_ = generators_for(spec.right)
        gens = [ProductElem(g, re_) for g in lg] + [ProductElem(le, h) for h in rg]
        return gens, ProductElem(le, re_)
    if isinstance(spec, Wreath):
        ig, ie = generators_for(spec.inner)
        n = spec.n
        top_e = Perm.identity(n)
        e = WreathElem([ie] * n, top_e)
        if n == 0:
            return [], e
        gens = [WreathElem([g] + [ie] * (n - 1), top_e) for g in ig]
        tg, _ = _symmetric_gens(n)
        gens += [WreathElem([ie] * n, t) for t in tg]
        return gens, e
    raise TypeError(f"not a group spec: {spec!r}")


# ---------------------------------------------------------------------------
# tables and classes
# ---------------------------------------------------------------------------


@dataclass
class GroupTable:
    elements: list
    index: dict
    generators: list
    identity: Hashable
    label: str = ""

    @property
    def order(self) -> int:
        return len(self.elements)

    @classmethod
    def from_generators(cls, gens, identity, cap: int | None = None, label: str = "") -> GroupTable:
        """Breadth-first closure of ``gens`` under right multiplication."""
        cap = oracle_cap() if cap is None else cap
        elements = [identity]
        index = {identity: 0}
        queue = deque([identity])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = g * s
                if h not in index:
                    if len(elements) >= cap:
                        raise CapExceeded(f"{label or 'group'} has more than {cap} elements")
                    index[h] = len(elements)
                    elements.append(h)
                    queue.append(h)
        return cls(elements, index, list(gens), identity, label)


@dataclass(frozen=True)
class ConjClass:
    representative: Hashable = field(compare=False)
    size: int
    element_order: int


def enumerate_group(spec: GroupSpec, cap: int | None = None) -> GroupTable:
    cap = oracle_cap() if cap is None else cap
    gens, e = generators_for(spec)  # raises NotEnumerable for fixture-only groups
    predicted = group_order(spec)
    if predicted > cap:
        raise CapExceeded(f"{spec} has order {predicted} > cap {cap}")
    table = GroupTable.from_generators(gens, e, cap=cap, label=str(spec))
    if table.order != predicted:
        raise AssertionError(f"{spec}: enumerated {table.order} elements, expected {predicted}")
    return table


def element_order(g, identity=None) -> int:
    """Least k >= 1 with g**k equal to the identity."""
    if identity is None:
        identity = g * g.inverse()
    k, h = 1, g
    while h != identity:
        h = h * g
        k += 1
    return k


def conjugacy_classes(table: GroupTable) -> list[ConjClass]:
    """Orbits of the conjugation action by the generators, in discovery order."""
    conj = [(s, s.inverse()) for s in table.generators]
    index = table.index
    seen = bytearray(table.order)
    classes = []
    for start, g0 in enumerate(table.elements):
        if seen[start]:
            continue
        seen[start] = 1
        size = 1
        stack = [g0]
        while stack:
            g = stack.pop()
            for s, si in conj:
                h = s * g * si
                k = index[h]
                if not seen[k]:
                    seen[k] = 1
                    size += 1
                    stack.append(h)
        classes.append(ConjClass(g0, size, element_order(g0, table.identity)))
    return classes


def _is_power_of(m: int, p: int) -> bool:
    if m < p:
        return False
    while m % p == 0:
        m //= p
    return m == 1


def rank_profile_bruteforce(
    table: GroupTable, primes: Sequence[int] | None = None, classes: list[ConjClass] | None = None
) -> RankProfile:
    """Count classes of order p^d, d >= 1, for each prime (default: primes dividing |G|)."""
    if primes is None:
        primes = prime_divisors(table.order)
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    if classes is None:
        classes = conjugacy_classes(table)
    ranks = {p: sum(1 for c in classes if _is_power_of(c.element_order, p)) for p in primes}
    return RankProfile(table.label, ranks, total_classes=len(classes), order=table.order)


def oracle_profile(spec: GroupSpec, primes: Sequence[int] | None = None, cap: int | None = None) -> RankProfile:
    return rank_profile_bruteforce(enumerate_group(spec, cap=cap), primes)


# ---------------------------------------------------------------------------
# closed form vs enumeration
# ---------------------------------------------------------------------------


@dataclass
class SweepEntry:
    group: str
    order: int
    classes: int
    closed: dict[int, int]
    enumerated: dict[int, int]
    seconds: float

    @property
    def agree(self) -> bool:
        return self.closed == self.enumerated

    def describe(self) -> str:
        status = "ok  " if self.agree else "FAIL"
        ranks = " ".join(f"{p}:{self.enumerated[p]}" for p in sorted(self.enumerated))
        line = f"{status} {self.group:<28} order={self.order:<7} classes={self.classes:<4} r: {ranks}"
        if not self.agree:
            line += f"  closed form: {self.closed}"
        return line

    def to_record(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "classes": self.classes,
            "closed": {str(p): r for p, r in sorted(self.closed.items())},
            "oracle": {str(p): r for p, r in sorted(self.enumerated.items())},
            "agree": self.agree,
        }


@dataclass
class SweepReport:
    entries: list[SweepEntry]
    notes: list[str]

    @property
    def passed(self) -> bool:
        return all(e.agree for e in self.entries)

    def to_text(self) -> str:
        lines = [e.describe() for e in self.entries]
        lines += [f"note: {n}" for n in self.notes]
        ok = sum(e.agree for e in self.entries)
        lines.append(f"{ok}/{len(self.entries)} instances agree")
        return "\n".join(lines)

    def to_record(self) -> dict:
        return {
            "passed": self.passed,
            "entries": [e.to_record() for e in self.entries],
            "notes": list(self.notes),
        }


def cross_check(spec: GroupSpec | str, cap: int | None = None) -> SweepEntry:
    if isinstance(spec, str):
        spec = parse_group(spec)
    t0 = time.perf_counter()
    primes = order_primes(spec)
    closed = closed_form_profile(spec, primes)
    enumerated = oracle_profile(spec, primes, cap=cap)
    return SweepEntry(
        str(spec),
        enumerated.order,
        enumerated.total_classes,
        dict(closed.ranks),
        dict(enumerated.ranks),
        time.perf_counter() - t0,
    )


def run_oracle_sweep(instances: Sequence[str] | None = None, cap: int | None = None) -> SweepReport:
    if instances is None:
        instances = enumerable_instances()
    entries = [cross_check(s, cap) for s in instances]
    notes = []
    if any("dic:" in e.group for e in entries):
        notes.append(BINDIH_NOTE)
    return SweepReport(entries, notes)
