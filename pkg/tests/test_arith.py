from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kbg.arith import PAdic, QuadNum, Quat, is_prime, nu_p, p_norm, prime_divisors, quat_mul

PRIMES = [2, 3, 5, 7, 11, 13]
primes = st.sampled_from(PRIMES)
positive = st.integers(min_value=1, max_value=10**12)


@pytest.mark.parametrize("n,p,v", [(8, 2, 3), (7, 2, 0), (54, 3, 3), (1, 5, 0), (2**40 * 3, 2, 40)])
def test_nu_p_examples(n, p, v):
    assert nu_p(n, p) == v


@pytest.mark.parametrize("n,p,norm", [(8, 2, Fraction(1, 8)), (6, 5, 1), (12, 2, Fraction(1, 4))])
def test_p_norm_examples(n, p, norm):
    assert p_norm(n, p) == norm


@pytest.mark.parametrize("n,p", [(0, 2), (-4, 2), (8, 4), (8, 1)])
def test_nu_p_rejects(n, p):
    with pytest.raises(ValueError):
        nu_p(n, p)
    with pytest.raises(ValueError):
        p_norm(n, p)


@given(positive, primes)
def test_valuation_is_exact(n, p):
    v = nu_p(n, p)
    assert n % p**v == 0
    assert n % p ** (v + 1) != 0


@given(positive, positive, primes)
def test_p_norm_multiplicative(m, n, p):
    assert p_norm(m * n, p) == p_norm(m, p) * p_norm(n, p)


@given(positive, primes)
def test_padic_record(n, p):
    x = PAdic(n, p)
    assert x.norm == Fraction(1, p**x.v)
    assert x.v == nu_p(n, p)


def test_primes():
    assert [q for q in range(30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_divisors(360) == [2, 3, 5]
    assert prime_divisors(1) == []


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def quads(d):
    return st.builds(QuadNum, fracs, fracs, st.just(d))


@given(st.sampled_from([2, 5]).flatmap(lambda d: st.tuples(quads(d), quads(d))))
def test_quadnum_field_laws(pair):
    a, b = pair
    assert a + b == b + a
    assert a * b == b * a
    assert (a * a.conjugate()).b == 0
    assert (a * b).field_norm() == a.field_norm() * b.field_norm()
    if a.field_norm() != 0:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


def test_quadnum_mixed_fields_rejected():
    with pytest.raises(ValueError):
        QuadNum(1, 1, 2) + QuadNum(1, 1, 5)
    with pytest.raises(ValueError):
        QuadNum(1, 1, 3)


def test_quadnum_float():
    phi = QuadNum(Fraction(1, 2), Fraction(1, 2), 5)
    assert phi * phi == phi + 1
    assert float(phi) == pytest.approx(1.6180339887)


I = Quat(0, 1, 0, 0)
J = Quat(0, 0, 1, 0)
K = Quat(0, 0, 0, 1)


def test_quaternion_units():
    assert quat_mul(I, J) == K
    assert J * K == I
    assert K * I == J
    assert I * I == -Quat.one()
    q = Quat(1, 2, 3, 4)
    assert q * Quat.one() == q


def test_binary_octahedral_generator_squares_to_i():
    h = QuadNum(0, Fraction(1, 2), 2)  # 1/sqrt(2)
    g = Quat(h, h, 0, 0, d=2)
    assert g * g == Quat(0, 1, 0, 0, d=2)
    x = g
    for _ in range(7):
        x = x * g
    assert x == Quat.one(2)


def test_quat_mismatched_fields_rejected():
    with pytest.raises(ValueError):
        quat_mul(Quat(1, 0, 0, 0, 2), Quat(1, 0, 0, 0, 5))


def quats(d):
    return st.builds(Quat, quads(d), quads(d), quads(d), quads(d), st.just(d))


@given(st.sampled_from([2, 5]).flatmap(lambda d: st.tuples(quats(d), quats(d), quats(d))))
def test_quat_norm_multiplicative_and_associative(triple):
    a, b, c = triple
    assert (a * b).norm() == a.norm() * b.norm()
    assert (a * b) * c == a * (b * c)


def test_unit_quaternions_close():
    half = Fraction(1, 2)
    w = Quat(half, half, half, half)
    assert w.norm() == 1
    assert (w * I).norm() == 1
    assert w * w.inverse() == Quat.one()
