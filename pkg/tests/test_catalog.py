import pytest

from cpbounds import catalog
from cpbounds.arith import DomainError
from cpbounds.bounds import lie_groups
from cpbounds.catalog import GroupId, dim_lower_bound, largest_factors, order, validate
from cpbounds.config import SweepConfig
from cpbounds.parsing import parse_group
import oracles

DEFAULT_GROUPS = lie_groups(SweepConfig())

# Orders as listed in the ATLAS of Finite Groups; an independent source from the formulas.
ATLAS_ORDERS = {
    "L(3,4)": 20160,
    "L(4,2)": 20160,
    "U(4,2)": 25920,
    "U(3,4)": 62400,
    "U(4,3)": 3265920,
    "PSp(6,2)": 1451520,
    "Omega(7,3)": 4585351680,
    "POmega+(8,2)": 174182400,
    "POmega-(8,2)": 197406720,
    "G2(4)": 251596800,
    "3D4(2)": 211341312,
    "Sz(32)": 32537600,
    "F4(2)": 3311126603366400,
    "E6(2)": 214841575522005575270400,
    "2E6(2)": 76532479683774853939200,
    "E7(2)": 7997476042075799759100487262680802918400,
    "E8(2)": 337804753143634806261388190614085595079991692242467651576160959909068800000,
}


def test_brute_force_orders():
    assert order(parse_group("L(2,4)")) == oracles.psl2_order(4)
    assert order(parse_group("L(2,5)")) == oracles.psl2_order(5) == 60
    assert order(parse_group("L(2,7)")) == oracles.psl2_order(7) == 168
    assert order(parse_group("L(2,8)")) == oracles.psl2_order(8)
    assert order(parse_group("L(2,9)")) == oracles.psl2_order(9)
    assert order(parse_group("L(3,2)")) == oracles.psl3_order(2) == 168
    assert order(parse_group("L(3,3)")) == oracles.psl3_order(3)
    assert order(parse_group("U(3,3)")) == oracles.psu3_3_order() == 6048
    assert order(parse_group("PSp(4,3)")) == oracles.psp4_3_order() == 25920


def test_hand_evaluated_orders():
    assert order(parse_group("Sz(8)")) == 8**2 * (8 - 1) * (8**2 + 1) == 29120
    assert order(parse_group("G2(3)")) == 3**6 * (3**2 - 1) * (3**6 - 1) == 4245696
    assert order(GroupId("Alt", 5)) == 60


@pytest.mark.parametrize("text, expected", sorted(ATLAS_ORDERS.items()))
def test_atlas_orders(text, expected):
    assert order(parse_group(text)) == expected


@pytest.mark.parametrize(
    "g, reason_fragment",
    [
        (GroupId("Sz", None, 2), "nonsimple"),
        (GroupId("OmegaOdd", 3, 4), "odd"),
        (GroupId("L", 2, 2), "nonsimple"),
        (GroupId("L", 2, 3), "nonsimple"),
        (GroupId("U", 3, 2), "nonsimple"),
        (GroupId("PSp", 2, 2), "nonsimple"),
        (GroupId("TwoG2", None, 3), "nonsimple"),
        (GroupId("TwoF4", None, 2), "nonsimple"),
        (GroupId("G2", None, 2), "nonsimple"),
        (GroupId("L", 2, 6), "prime power"),
        (GroupId("Sz", None, 4), "2^(2e+1)"),
        (GroupId("TwoG2", None, 9), "3^(2e+1)"),
        (GroupId("POmegaPlus", 3, 2), "m >= 4"),
        (GroupId("Alt", 4), "nonsimple"),
    ],
)
def test_validate_rejections(g, reason_fragment):
    reason = validate(g)
    assert reason is not None and reason_fragment in reason


def test_sz2_is_solvable_order():
    # evaluated formula gives 20 < 60, the least order of a nonabelian simple group
    fo = catalog._EXCEPTIONAL_ORDERS["Sz"](2)
    assert fo.order(2) == 20


def test_validate_accepts():
    assert validate(GroupId("L", 2, 4)) is None
    assert validate(GroupId("TwoG2", None, 27)) is None


@pytest.mark.parametrize(
    "text, expected",
    [("3D4(2)", [273, 63]), ("E6(2)", [4095]), ("Sz(8)", [65]), ("PSp(8,2)", [2**6 - 1, 2**8 - 1])],
)
def test_largest_factors(text, expected):
    assert largest_factors(parse_group(text)) == expected


def test_largest_factors_rejects_alt():
    with pytest.raises(DomainError):
        largest_factors(GroupId("Alt", 6))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("L(2,7)", 3),
        ("U(4,2)", 5),
        ("POmega+(8,2)", 28),
        ("Sz(8)", 14),
        ("2F4(8)", 8**4 * 2 * 7),
        ("Omega(7,3)", 3**2 * (3**2 - 1)),
        ("Omega(7,7)", 7**4 - 1),
        ("POmega+(8,7)", (7**3 - 1) * (7**2 + 1)),
        ("F4(2)", 2**7 * 7 * 1 // 2),
        ("F4(3)", 3**6 * 8),
        ("PSp(4,3)", 4),
        ("PSp(4,4)", 4 * 3 * 3 // 2),
        ("U(3,3)", 3 * 8 // 4),
        ("Alt(7)", 3),
        ("Alt(5)", 2),
    ],
)
def test_dim_lower_bound(text, expected):
    assert dim_lower_bound(parse_group(text)) == expected


@pytest.mark.parametrize("text, p", [("Sz(8)", 2), ("2G2(27)", 3), ("L(3,9)", 3)])
def test_defining_characteristic(text, p):
    assert catalog.defining_characteristic(parse_group(text)) == p


def test_order_rejects_invalid():
    with pytest.raises(DomainError):
        order(GroupId("L", 2, 3))


@pytest.mark.parametrize("g", DEFAULT_GROUPS, ids=str)
def test_table_invariants(g):
    fo = catalog.factored_order(g)
    universal = fo.universal_order(g.r)
    assert universal % fo.divisor == 0
    assert universal // fo.divisor == order(g)
    assert all(v > 0 for v in fo.evaluate_factors(g.r))
    assert all(universal % f == 0 for f in largest_factors(g))
    ell = dim_lower_bound(g)
    assert ell >= 2
    prefactor = 9 if g.is_classical else 4
    assert prefactor * ell >= g.r ** catalog.dim_exponent(g)


def test_classical_growth_wider_range():
    for g in catalog.groups_in_range([2, 3, 4, 5, 7, 8, 9], 8):
        assert 9 * dim_lower_bound(g) >= g.r ** catalog.dim_exponent(g), g


def test_suzuki_root_exact():
    for e in range(1, 40):
        r = 2 ** (2 * e + 1)
        assert catalog._suzuki_root(r) ** 2 * 2 == r
