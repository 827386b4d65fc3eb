from __future__ import annotations

import cmath
import io
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbg import analytic
from kbg.analytic import (
    PoleError,
    closed_form_F,
    dirichlet_F,
    dirichlet_tail_bound,
    divergence_probe,
    figure_grid,
    g_numeric,
    gamma,
    mellin_check,
    mellin_log_one_minus,
    zeta,
)
from kbg.gfcat import Family, build_series


def test_gamma_zeta_reference_values():
    assert abs(gamma(5) - 24) < 1e-9
    assert abs(zeta(2) - math.pi**2 / 6) < 1e-9
    assert abs(zeta(4) - math.pi**4 / 90) < 1e-9
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-9
    for n in range(1, 12):
        assert abs(gamma(n) - math.factorial(n - 1)) <= 1e-9 * math.factorial(n - 1)


@settings(max_examples=60)
@given(st.floats(0.05, 8), st.floats(-15, 15))
def test_gamma_zeta_against_mpmath(re, im):
    s = complex(re, im)
    assert abs(gamma(s) - complex(mpmath.gamma(s))) <= 1e-9 * max(1, abs(complex(mpmath.gamma(s))))
    if abs(s - 1) > 1e-3:
        ref = complex(mpmath.zeta(s))
        assert abs(zeta(s) - ref) <= 1e-9 * max(1, abs(ref))


def test_poles_rejected():
    with pytest.raises(PoleError):
        gamma(0)
    with pytest.raises(PoleError):
        gamma(-3)
    with pytest.raises(PoleError):
        zeta(1)
    with pytest.raises(PoleError):
        closed_form_F(2, 0)
    with pytest.raises(PoleError):
        closed_form_F(2, 2j * math.pi / math.log(2))
    with pytest.raises(ValueError):
        dirichlet_F(2, -1, 10, 10)
    with pytest.raises(ValueError):
        dirichlet_F(2, 2, 0, 10)


def test_closed_form_value():
    assert closed_form_F(2, 2) == pytest.approx(1.602742537, abs=1e-8)
    zeta3 = 1.2020569031595942
    assert closed_form_F(2, 2).real == pytest.approx(zeta3 / 0.75, abs=1e-12)
    zeta4 = math.pi**4 / 90
    assert closed_form_F(3, 3).real == pytest.approx(2 * zeta4 / (1 - 3**-3), abs=1e-12)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("s", [2, 3])
def test_mellin_agreement(p, s):
    c = mellin_check(p, s)
    assert c.tail_bound <= 1e-7
    assert c.abs_err <= 1e-6
    assert c.passed


@pytest.mark.parametrize("p,s", [(5, 2), (2, 1.5), (3, 2 + 3j)])
def test_mellin_other_points(p, s):
    assert mellin_check(p, s).passed


def test_tail_bound_dominates_error():
    for p, s in [(2, 2), (3, 1.5), (2, 2 + 1j)]:
        for J, K in [(3, 50), (10, 500)]:
            err = abs(dirichlet_F(p, s, J, K) - closed_form_F(p, s))
            assert err <= dirichlet_tail_bound(p, s, J, K)


def test_geometric_factor_in_j():
    # the j-sum alone is the geometric series 1/(1 - p^-s)
    p, s, K = 3, 2.5, 4000
    many = dirichlet_F(p, s, 40, K)
    first = gamma(s) * sum(k ** (-s - 1) for k in range(1, K + 1))
    assert many == pytest.approx(first / (1 - p ** (-s)), rel=1e-12)


def test_shift_relation():
    # (p^-s - 1) F = Mellin(log(1 - e^-t)) = -Gamma(s) zeta(s+1)
    for p in (2, 3, 5):
        for s in (2, 3, 1.5 + 2j):
            F = closed_form_F(p, s)
            M = mellin_log_one_minus(s)
            assert abs((p ** (-s) - 1) * F - M) < 1e-12
            assert abs(M + gamma(s) * zeta(s + 1)) < 1e-12


def test_large_p_limit():
    s = 2.5
    assert closed_form_F(10007, s) == pytest.approx(gamma(s) * zeta(s + 1), rel=1e-9)


def test_g_numeric():
    assert g_numeric(2, 0) == 0
    # independent summation: sum_j -log(1 - 0.5^(2^j))
    ref = -sum(math.log1p(-(0.5 ** (2**j))) for j in range(12))
    assert abs(g_numeric(2, 0.5, 20) - ref) < 1e-6
    assert abs(g_numeric(2, 0.5, 20) - 1.04930) < 1e-5
    with pytest.raises(ValueError):
        g_numeric(2, 1)
    with pytest.raises(ValueError):
        g_numeric(2, 0.3, 0)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("x", [Fraction(1, 4), Fraction(-1, 3), Fraction(2, 5)])
def test_g_numeric_matches_exact_series(p, x):
    exact = build_series(Family.LittleG, p, 64).eval_second(1)
    value = sum(float(c) * float(x) ** n for n, c in enumerate(exact.coeffs))
    # beyond degree 64 the coefficients are at most 2 in size
    tail = 2 * abs(float(x)) ** 65 / (1 - abs(float(x)))
    assert abs(g_numeric(p, float(x), 200) - value) <= tail + 1e-12


@pytest.mark.parametrize("p,l", [(2, 3), (2, 5), (3, 2), (3, 4), (2, 1)])
def test_divergence_probe_increasing(p, l):
    mags = divergence_probe(p, l)
    assert all(b > a for a, b in zip(mags, mags[1:]))


def test_divergence_probe_rejects():
    with pytest.raises(ValueError):
        divergence_probe(2, 4)
    with pytest.raises(ValueError):
        divergence_probe(3, 6)
    with pytest.raises(ValueError):
        divergence_probe(2, 3, radii=(0.9, 0.5))
    with pytest.raises(ValueError):
        divergence_probe(2, 3, radii=(0.9, 1.0))


def test_figure_grid():
    pts = figure_grid(2, resolution=41)
    assert all(abs(complex(pt.re_x, pt.im_x)) < 1 for pt in pts)
    # row-major: imaginary part outer, real part inner
    keys = [(pt.im_x, pt.re_x) for pt in pts]
    assert keys == sorted(keys)
    spot = min(pts, key=lambda pt: abs(complex(pt.re_x - 0.5, pt.im_x)))
    assert (spot.re_x, spot.im_x) == (0.5, 0.0)
    assert complex(spot.re_g, spot.im_g) == pytest.approx(g_numeric(2, 0.5, 20), abs=1e-12)
    other = figure_grid(3, resolution=41)
    assert [pt.re_g for pt in pts] != [pt.re_g for pt in other]
    with pytest.raises(ValueError):
        figure_grid(2, resolution=1)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 30), st.sampled_from([2, 3, 5]))
def test_grid_points_match_pointwise(res, p):
    for pt in figure_grid(p, cutoff=6, resolution=res)[::7]:
        x = complex(pt.re_x, pt.im_x)
        assert cmath.isclose(complex(pt.re_g, pt.im_g), g_numeric(p, x, 6), rel_tol=1e-9, abs_tol=1e-9)


def test_grid_csv():
    buf = io.StringIO()
    n = analytic.write_grid_csv(figure_grid(2, resolution=11), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "re_x,im_x,re_g,im_g"
    assert len(lines) == n + 1


def test_trend_small_and_validation():
    pts = analytic.asymptotic_trend(2, [10, 100])
    assert pts[0].ratio != pytest.approx(1, abs=0.1)
    assert math.exp(pts[1].log_r_tilde) == pytest.approx(analytic.partition_counts([1, 2, 4, 8, 16, 32, 64], 100)[100])
    with pytest.raises(ValueError):
        analytic.asymptotic_trend(2, [100, 10])
    with pytest.raises(ValueError):
        analytic.asymptotic_trend(2, [10**7])
