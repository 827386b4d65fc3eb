"""Floating-point layer: the Mellin transform of the type-A log series, the
divergence of g(p, A, x, 1) near roots of unity, figure grids, and the growth
of r~(p, S_n).
"""
from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .arith import is_prime
from .families import partition_counts, prime_powers_upto

__all__ = [
    "PoleError",
    "gamma",
    "zeta",
    "dirichlet_F",
    "dirichlet_tail_bound",
    "cutoffs_for",
    "closed_form_F",
    "mellin_log_one_minus",
    "MellinCheck",
    "mellin_check",
    "g_numeric",
    "divergence_probe",
    "GridPoint",
    "figure_grid",
    "write_grid_csv",
    "TrendPoint",
    "asymptotic_trend",
    "trend_holds",
]


class PoleError(ValueError):
    """Argument too close to a pole of the function being evaluated."""


# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(s: complex) -> complex:
    """Gamma function via the Lanczos approximation (reflection for Re s < 1/2)."""
    s = complex(s)
    if s.real <= 0 and abs(s.imag) < 1e-12 and abs(s.real - round(s.real)) < 1e-12:
        raise PoleError(f"Gamma has a pole at {s.real:g}")
    if s.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * s) * gamma(1 - s))
    z = s - 1
    x = _LANCZOS[0]
    for i in range(1, _LANCZOS_G + 2):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return cmath.sqrt(2 * cmath.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


def _borwein_d(n: int) -> list[float]:
    d, acc = [], 0.0
    for i in range(n + 1):
        acc += n * math.factorial(n + i - 1) * 4**i / (math.factorial(n - i) * math.factorial(2 * i))
        d.append(acc)
    return d


_BORWEIN_N = 60
_BORWEIN_D = _borwein_d(_BORWEIN_N)


def zeta(s: complex) -> complex:
    """Riemann zeta for Re s > 0, s != 1, from Borwein's accelerated
    alternating (eta) series."""
    s = complex(s)
    if s.real <= 0:
        raise ValueError("zeta is only implemented for Re s > 0")
    if abs(s - 1) < 1e-9:
        raise PoleError("zeta has a pole at s = 1")
    n, d = _BORWEIN_N, _BORWEIN_D
    total = 0j
    for k in range(n):
        total += (-1) ** k * (d[k] - d[n]) / (k + 1) ** s
    eta = -total / d[n]
    return eta / (1 - 2 ** (1 - s))


def _validate(p: int, s: complex) -> complex:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    s = complex(s)
    if s.real <= 0:
        raise ValueError(f"the Dirichlet double sum needs Re s > 0, got {s}")
    return s


def dirichlet_F(p: int, s: complex, j_max: int, k_max: int) -> complex:
    """Gamma(s) * sum_{0<=j<=j_max, 1<=k<=k_max} (k p^j)^-s / k, summed term by term."""
    s = _validate(p, s)
    if j_max < 1 or k_max < 1:
        raise ValueError("cutoffs must be >= 1")
    k = np.arange(1, k_max + 1, dtype=float)
    total = 0j
    for j in range(j_max + 1):
        total += complex(((k * float(p) ** j) ** (-s) / k).sum())
    return gamma(s) * total


def dirichlet_tail_bound(p: int, s: complex, j_max: int, k_max: int) -> float:
    """Upper bound on |Gamma(s)| times the omitted part of the double sum."""
    s = _validate(p, s)
    sig = s.real
    q = p ** (-sig)
    geo = 1 / (1 - q)  # bound on the full j-sum
    zeta_bound = 1 + 1 / sig  # zeta(sig + 1) <= 1 + 1/sig
    j_tail = q ** (j_max + 1) * geo
    k_tail = k_max ** (-sig) / sig
    return abs(gamma(s)) * (j_tail * zeta_bound + geo * k_tail)


MAX_K = 2_000_000


def cutoffs_for(p: int, s: complex, tail_tol: float, max_k: int = MAX_K) -> tuple[int, int]:
    """Smallest (j_max, k_max) with each tail contribution below tail_tol / 2.
    k_max is clipped at ``max_k``; the tail bound then reports the shortfall."""
    s = _validate(p, s)
    sig = s.real
    g = abs(gamma(s))
    q = p ** (-sig)
    geo = 1 / (1 - q)
    j_max = 1
    while g * q ** (j_max + 1) * geo * (1 + 1 / sig) > tail_tol / 2:
        j_max += 1
    log_k = math.log(2 * g * geo / (sig * tail_tol)) / sig
    k_max = max_k if log_k > math.log(max_k) else max(1, math.ceil(math.exp(log_k)))
    return j_max, k_max


def _near_pole_of_factor(p: int, s: complex) -> bool:
    # 1 - p^-s vanishes at s = 2 pi i m / log p
    if abs(s.real) > 1e-9:
        return False
    step = 2 * math.pi / math.log(p)
    return abs(s.imag / step - round(s.imag / step)) < 1e-9


def closed_form_F(p: int, s: complex) -> complex:
    """Gamma(s) zeta(s + 1) / (1 - p^-s)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    s = complex(s)
    if abs(s) < 1e-9:
        raise PoleError("s = 0: Gamma(s), zeta(s + 1) and 1/(1 - p^-s) are all singular")
    if _near_pole_of_factor(p, s):
        raise PoleError(f"1 - {p}^-s vanishes at s = {s}")
    return gamma(s) * zeta(s + 1) / (1 - p ** (-s))


def mellin_log_one_minus(s: complex) -> complex:
    """Mellin transform of log(1 - e^-t): -Gamma(s) zeta(s + 1)."""
    return -gamma(s) * zeta(s + 1)


@dataclass(frozen=True)
class MellinCheck:
    p: int
    s: complex
    lhs: complex
    rhs: complex
    abs_err: float
    tail_bound: float
    tol: float = 1e-6

    @property
    def passed(self) -> bool:
        return self.abs_err <= self.tol and self.tail_bound <= self.tol

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "s": [self.s.real, self.s.imag],
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "abs_err": self.abs_err,
            "tail_bound": self.tail_bound,
            "tol": self.tol,
            "passed": self.passed,
        }


def mellin_check(p: int, s: complex, tol: float = 1e-6, tail_tol: float = 1e-7) -> MellinCheck:
    """Compare the truncated double sum against the closed form, with cutoffs
    chosen so the reported tail bound is below ``tail_tol``."""
    j_max, k_max = cutoffs_for(p, s, tail_tol)
    lhs = dirichlet_F(p, s, j_max, k_max)
    rhs = closed_form_F(p, s)
    tail = dirichlet_tail_bound(p, s, j_max, k_max)
    return MellinCheck(p, complex(s), lhs, rhs, abs(lhs - rhs), tail, tol)


# ---------------------------------------------------------------------------
# g(p, A, x, 1)
# ---------------------------------------------------------------------------


def g_numeric(p: int, x: complex, cutoff: int = 20) -> complex:
    """sum_{0<=j<cutoff} sum_{1<=k<=cutoff} x^(k p^j) / k."""
    if abs(x) >= 1:
        raise ValueError(f"need |x| < 1, got |x| = {abs(x)}")
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    x = complex(x)
    total = 0j
    y = x
    for _ in range(cutoff):
        pw = y
        for k in range(1, cutoff + 1):
            total += pw / k
            pw *= y
        y = y**p
    return total


def divergence_probe(
    p: int, l: int, radii: Sequence[float] = (0.9, 0.99, 0.999), cutoff: int = 20
) -> list[float]:
    """|g(p, A, r zeta_l, 1)| along the radii, zeta_l a primitive l-th root of unity."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if l < 1 or math.gcd(l, p) != 1:
        raise ValueError(f"need l >= 1 coprime to p, got l={l}, p={p}")
    if any(not 0 < r < 1 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing in (0, 1)")
    root = cmath.exp(2j * cmath.pi / l)
    return [abs(g_numeric(p, r * root, cutoff)) for r in radii]


@dataclass(frozen=True)
class GridPoint:
    re_x: float
    im_x: float
    re_g: float
    im_g: float


def figure_grid(p: int, cutoff: int = 20, resolution: int = 401) -> list[GridPoint]:
    """g(p, A, x, 1) sampled on a square grid over [-1, 1]^2, points with
    |x| >= 1 dropped, row-major (imaginary part outer, real part inner)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    axis = np.linspace(-1.0, 1.0, resolution)
    im, re = np.meshgrid(axis, axis, indexing="ij")
    x = (re + 1j * im).ravel()
    x = x[np.abs(x) < 1]
    total = np.zeros_like(x)
    y = x.copy()
    for _ in range(cutoff):
        pw = y.copy()
        for k in range(1, cutoff + 1):
            total += pw / k
            pw *= y
        y = y**p
    return [
        GridPoint(float(a.real), float(a.imag), float(b.real), float(b.imag))
        for a, b in zip(x, total)
    ]


def write_grid_csv(points: Iterable[GridPoint], fh: TextIO) -> int:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["re_x", "im_x", "re_g", "im_g"])
    n = 0
    for pt in points:
        w.writerow([repr(pt.re_x), repr(pt.im_x), repr(pt.re_g), repr(pt.im_g)])
        n += 1
    return n


# ---------------------------------------------------------------------------
# growth of r~(p, S_n)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrendPoint:
    n: int
    log_r_tilde: float
    ratio: float


def asymptotic_trend(p: int, checkpoints: Sequence[int]) -> list[TrendPoint]:
    """log r~(p, S_n) * 2 log p / log(n)^2 at each checkpoint, from exact counts."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    cps = list(checkpoints)
    if not cps or any(b <= a for a, b in zip(cps, cps[1:])) or cps[0] < 2:
        raise ValueError("checkpoints must be increasing and >= 2")
    if cps[-1] > 10**6:
        raise ValueError("checkpoints above 10^6 are not supported")
    counts = partition_counts(prime_powers_upto(p, cps[-1]), cps[-1])
    out = []
    for n in cps:
        lr = math.log(counts[n])
        out.append(TrendPoint(n, lr, lr * 2 * math.log(p) / math.log(n) ** 2))
    return out


def trend_holds(points: Sequence[TrendPoint], band: tuple[float, float] = (0.5, 1.5)) -> bool:
    """Final ratio inside ``band`` and |1 - ratio| strictly shrinking along the points."""
    if not points:
        return False
    gaps = [abs(1 - pt.ratio) for pt in points]
    inside = band[0] <= points[-1].ratio <= band[1]
    return inside and all(b < a for a, b in zip(gaps, gaps[1:]))
