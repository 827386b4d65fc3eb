from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kbg.groups import (
    BinaryDihedral,
    Cyclic,
    Exceptional,
    Product,
    SpecError,
    Wreath,
    group_order,
    parse_group,
)


@pytest.mark.parametrize(
    "text,order",
    [
        ("cyc:12", 12),
        ("bincyc:3", 6),
        ("dic:3", 12),
        ("sym:5", 120),
        ("weylB:4", 384),
        ("weylD:4", 192),
        ("sl2:5", 120),
        ("binO", 48),
        ("exc:WE8", 696729600),
        ("prod(cyc:3,cyc:9)", 27),
        ("wreath(dic:2,3)", 8**3 * 6),
        ("wreath(sl2:3, 2)", 24**2 * 2),
    ],
)
def test_orders(text, order):
    assert group_order(parse_group(text)) == order


@pytest.mark.parametrize(
    "bad", ["", "cyc", "cyc:0", "dic:0", "weylD:1", "sl2:4", "exc:E9", "prod(cyc:2)", "wreath(cyc:2,-1)", "foo:3", "cyc:2)"]
)
def test_rejects(bad):
    with pytest.raises(SpecError):
        parse_group(bad)


atoms = st.one_of(
    st.integers(1, 50).map(Cyclic),
    st.integers(1, 20).map(BinaryDihedral),
    st.sampled_from(["A4", "H3", "WE6"]).map(Exceptional),
)
specs = st.recursive(
    atoms,
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: Product(*t)),
        st.tuples(inner, st.integers(0, 4)).map(lambda t: Wreath(*t)),
    ),
    max_leaves=5,
)


@given(specs)
def test_round_trip(spec):
    assert parse_group(str(spec)) == spec
