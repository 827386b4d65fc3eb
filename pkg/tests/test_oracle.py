from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbg.arith import prime_divisors
from kbg.groups import parse_group
from kbg.oracle import (
    CapExceeded,
    Dicyclic,
    GroupTable,
    NotEnumerable,
    Perm,
    WreathElem,
    conjugacy_classes,
    cross_check,
    element_order,
    enumerate_group,
    generators_for,
    oracle_profile,
    rank_profile_bruteforce,
)


def table(text):
    return enumerate_group(parse_group(text))


@pytest.mark.parametrize("text,order", [("sl2:3", 24), ("dic:2", 8), ("binO", 48), ("exc:BinI", 120), ("exc:H3", 120)])
def test_enumeration_orders(text, order):
    assert table(text).order == order


def test_quaternion_group_classes():
    classes = conjugacy_classes(table("dic:2"))
    assert sorted(c.size for c in classes) == [1, 1, 2, 2, 2]
    assert rank_profile_bruteforce(table("dic:2")).ranks == {2: 4}


def test_s4_classes_are_cycle_types():
    classes = conjugacy_classes(table("sym:4"))
    assert len(classes) == 5
    assert Counter(c.element_order for c in classes) == Counter({1: 1, 2: 2, 3: 1, 4: 1})


def test_trivial_group():
    t = table("sym:1")
    assert t.order == 1
    assert len(conjugacy_classes(t)) == 1


def test_element_orders():
    assert element_order(Dicyclic(0, 0, 2)) == 1
    assert element_order(Dicyclic(0, 1, 2)) == 4
    flip = Perm.cycle(2, [0, 1])
    e2 = Perm.identity(2)
    negative_4_cycle = WreathElem([flip, e2, e2, e2], Perm.cycle(4, [0, 1, 2, 3]))
    assert element_order(negative_4_cycle) == 8


def test_dicyclic_relations():
    for n in range(1, 7):
        a, x, e = Dicyclic(1, 0, n), Dicyclic(0, 1, n), Dicyclic(0, 0, n)
        an = Dicyclic(n, 0, n)
        assert x * x == an
        assert x * a * x.inverse() == a.inverse()
        g = e
        for _ in range(2 * n):
            g = g * a
        assert g == e


@pytest.mark.parametrize(
    "text,ranks",
    [
        ("exc:A4", {2: 1, 3: 2}),
        ("sl2:5", {2: 2, 3: 1, 5: 2}),
        ("dic:2", {2: 4}),
    ],
)
def test_profiles(text, ranks):
    assert oracle_profile(parse_group(text)).ranks == ranks


ENUMERABLE = ["cyc:12", "dic:5", "sym:5", "weylB:3", "weylD:4", "sl2:3", "binO", "exc:WG2", "prod(dic:2,cyc:3)", "wreath(cyc:3,2)"]


@pytest.mark.parametrize("text", ENUMERABLE)
def test_class_sizes_and_cauchy(text):
    t = table(text)
    classes = conjugacy_classes(t)
    assert sum(c.size for c in classes) == t.order
    assert all(t.order % c.size == 0 for c in classes)
    prof = rank_profile_bruteforce(t, [2, 3, 5, 7], classes)
    for p in [2, 3, 5, 7]:
        assert (prof.r(p) > 0) == (t.order % p == 0)


def test_class_members_share_order():
    t = table("weylB:3")
    conj = [(s, s.inverse()) for s in t.generators]
    for c in conjugacy_classes(t):
        for s, si in conj:
            assert element_order(s * c.representative * si) == c.element_order


def test_independent_of_generating_set():
    # S_5 from all adjacent transpositions rather than (0 1) and the 5-cycle
    gens = [Perm.cycle(5, [i, i + 1]) for i in range(4)]
    alt = GroupTable.from_generators(gens, Perm.identity(5))
    std = table("sym:5")
    a, b = rank_profile_bruteforce(alt), rank_profile_bruteforce(std)
    assert (a.ranks, a.total_classes) == (b.ranks, b.total_classes)


def test_sl2_matrix_and_quaternion_models_agree():
    for q, name in [(3, "BinT"), (5, "BinI")]:
        mat = oracle_profile(parse_group(f"sl2:{q}"))
        quat = oracle_profile(parse_group(f"exc:{name}"))
        assert (mat.ranks, mat.total_classes) == (quat.ranks, quat.total_classes)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["cyc:4", "dic:2", "sym:3", "exc:A4", "cyc:9"]), st.sampled_from(["cyc:2", "cyc:6", "dic:3", "sym:3"]))
def test_product_multiplies_r_tilde(a, b):
    pa, pb = oracle_profile(parse_group(a)), oracle_profile(parse_group(b))
    prod = oracle_profile(parse_group(f"prod({a},{b})"))
    for p in prime_divisors(prod.order):
        assert prod.r_tilde(p) == pa.r_tilde(p) * pb.r_tilde(p)


def test_cap_and_fixture_only():
    with pytest.raises(CapExceeded):
        enumerate_group(parse_group("weylB:9"))
    with pytest.raises(CapExceeded):
        enumerate_group(parse_group("sym:6"), cap=100)
    with pytest.raises(NotEnumerable):
        generators_for(parse_group("exc:WE7"))


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("KBG_ORACLE_CAP", "50")
    with pytest.raises(CapExceeded):
        enumerate_group(parse_group("sym:5"))


def test_cross_check_entry():
    entry = cross_check("wreath(sl2:3,2)")
    assert entry.order == 1152
    assert entry.agree
    assert entry.enumerated == {2: 8, 3: 5}
