import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpbounds.arith import DomainError, primes_up_to, vp
from cpbounds.catalog import GroupId, defining_characteristic, order
from cpbounds.cp import (
    ISOMORPHISM_CLASSES, Alternating, Cyclic, Explicit, LieType, characteristic_set, cp_nonabelian, cp_value,
    factor_order,
)
from cpbounds.parsing import parse_factor_list
from cpbounds.bounds import lie_groups
from cpbounds.config import SweepConfig

PRIMES = primes_up_to(100)
LIE = lie_groups(SweepConfig(classical_r_set=(2, 3, 4, 5, 7, 8, 9), m_max=4, exceptional_r_set=(2, 3, 8)))


def test_characteristic_sets():
    assert characteristic_set(Alternating(5)) == {2, 5}
    assert characteristic_set(LieType(GroupId("L", 2, 7))) == {7, 2}
    assert characteristic_set(Cyclic(3)) == set()
    assert characteristic_set(Alternating(7)) == set()
    assert characteristic_set(Explicit("M11", 7920)) == set()


def test_isomorphism_table_orders():
    for alt, lie in ISOMORPHISM_CLASSES:
        orders = {order(g) for g in lie}
        if alt is not None:
            orders.add(order(GroupId("Alt", alt)))
        assert len(orders) == 1


@pytest.mark.parametrize("f, n", [(Cyclic(7), 7), (Alternating(6), 360), (LieType(GroupId("Sz", None, 8)), 29120)])
def test_factor_order(f, n):
    assert factor_order(f) == n


def test_cp_examples():
    assert cp_value([Cyclic(2)] * 3, 2) == 3
    assert cp_value([Alternating(5)], 2) == 0
    assert cp_value([Alternating(5)], 3) == 1
    assert cp_nonabelian([Cyclic(2), Alternating(7)], 2) == 3
    assert cp_nonabelian([Cyclic(5)], 5) == 0
    assert cp_nonabelian([LieType(GroupId("U", 3, 3))], 2) == 5


def test_invalid_factors():
    with pytest.raises(DomainError):
        Cyclic(4)
    with pytest.raises(DomainError):
        Alternating(4)
    with pytest.raises(DomainError):
        LieType(GroupId("L", 2, 3))
    with pytest.raises(DomainError):
        cp_value([], 4)


@pytest.mark.parametrize("g", LIE, ids=str)
def test_defining_characteristic_excluded(g):
    assert cp_value([LieType(g)], defining_characteristic(g)) == 0


@pytest.mark.parametrize("p", PRIMES)
def test_isomorphism_consistency(p):
    for alt, lie in ISOMORPHISM_CLASSES:
        values = {cp_value([LieType(g)], p) for g in lie}
        if alt is not None:
            values.add(cp_value([Alternating(alt)], p))
        assert len(values) == 1


factor_strategy = st.one_of(
    st.sampled_from(PRIMES[:10]).map(Cyclic),
    st.integers(5, 12).map(Alternating),
    st.sampled_from(LIE).map(LieType),
    st.builds(Explicit, st.just("X"), st.integers(2, 10**6), st.frozensets(st.sampled_from(PRIMES[:5]), max_size=2)),
)


@settings(max_examples=200)
@given(st.lists(factor_strategy, max_size=8), st.lists(factor_strategy, max_size=8), st.sampled_from(PRIMES[:12]))
def test_cp_properties(a, b, p):
    total = sum(vp(p, factor_order(f)) for f in a)
    assert cp_nonabelian(a, p) <= cp_value(a, p) <= total
    assert cp_value(a + b, p) == cp_value(a, p) + cp_value(b, p)
    if all(p not in characteristic_set(f) for f in a):
        prod_ = 1
        for f in a:
            prod_ *= factor_order(f)
        assert cp_value(a, p) == vp(p, prod_)


def test_parse_then_cp():
    assert cp_value(parse_factor_list("C2,C2,A5"), 2) == 2
    assert cp_nonabelian(parse_factor_list("C2,C2,A5"), 2) == 0
    assert cp_value(parse_factor_list("L(2,7)"), 3) == 1
    assert cp_value(parse_factor_list("X(name=M11, order=7920, chars=)"), 2) == 4
