"""Simple groups of Lie type and alternating groups: ids, orders, and dimension bounds.

Orders are stored as sparse polynomials in the field size ``r``: the order of
the simple group is ``r**a * prod(factor(r)) / d``.  The largest-factor and
dimension-lower-bound data are the cross-characteristic tables used by the
valuation and prime-versus-dimension bounds in :mod:`cpbounds.bounds`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Optional

from cpbounds.arith import DomainError, alt_order, prime_power

CLASSICAL = ("L", "U", "PSp", "OmegaOdd", "POmegaPlus", "POmegaMinus")
EXCEPTIONAL = ("G2", "F4", "E6", "TwoE6", "E7", "E8", "ThreeD4", "TwoF4", "Sz", "TwoG2")
FAMILIES = CLASSICAL + EXCEPTIONAL + ("Alt",)

MIN_RANK = {"L": 2, "U": 3, "PSp": 2, "OmegaOdd": 3, "POmegaPlus": 4, "POmegaMinus": 4, "Alt": 5}

# (family, m, r) triples that satisfy the rank floors but are not simple
NONSIMPLE = {("L", 2, 2), ("L", 2, 3), ("U", 3, 2), ("PSp", 2, 2)}

Poly = tuple[tuple[int, int], ...]  # ((coefficient, exponent), ...)


@dataclass(frozen=True)
class GroupId:
    family: str
    m: Optional[int] = None
    r: Optional[int] = None

    def __str__(self) -> str:
        from cpbounds.parsing import format_group

        return format_group(self)

    @property
    def is_classical(self) -> bool:
        return self.family in CLASSICAL

    @property
    def is_exceptional(self) -> bool:
        return self.family in EXCEPTIONAL

    @property
    def is_lie_type(self) -> bool:
        return self.family != "Alt"


@dataclass(frozen=True)
class FactoredOrder:
    char_exponent: int
    factors: tuple[Poly, ...]
    divisor: int

    def evaluate_factors(self, r: int) -> list[int]:
        return [evaluate(f, r) for f in self.factors]

    def universal_order(self, r: int) -> int:
        """r**a times the product of the factors, before dividing by d."""
        return r**self.char_exponent * prod(self.evaluate_factors(r))

    def order(self, r: int) -> int:
        full = self.universal_order(r)
        if full % self.divisor:
            raise ArithmeticError(f"divisor {self.divisor} does not divide {full}")
        return full // self.divisor


def evaluate(poly: Poly, r: int) -> int:
    return sum(c * r**e for c, e in poly)


def _minus_one(e: int) -> Poly:
    return ((1, e), (-1, 0))


def _plus_one(e: int) -> Poly:
    return ((1, e), (1, 0))


def _sort_key_family(family: str) -> int:
    return FAMILIES.index(family)


def canonical_key(g: GroupId) -> tuple[int, int, int]:
    return (_sort_key_family(g.family), g.m or 0, g.r or 0)


def validate(g: GroupId) -> Optional[str]:
    """Return None if ``g`` names a simple group we support, else the reason it does not."""
    fam, m, r = g.family, g.m, g.r
    if fam not in FAMILIES:
        return f"unknown family {fam!r}"
    if fam == "Alt":
        if m is None:
            return "Alt needs a degree m"
        if r is not None:
            return "Alt takes no field size"
        if m < 5:
            return f"nonsimple: Alt({m}) needs m >= 5"
        return None
    if r is None:
        return f"{fam} needs a field size r"
    pk = prime_power(r)
    if pk is None:
        return f"field size {r} is not a prime power"
    p, k = pk
    if fam in CLASSICAL:
        if m is None:
            return f"{fam} needs a rank m"
        if m < MIN_RANK[fam]:
            return f"{fam} needs m >= {MIN_RANK[fam]}, got {m}"
        if fam == "OmegaOdd" and p == 2:
            return "OmegaOdd requires r odd"
        if (fam, m, r) in NONSIMPLE:
            return f"nonsimple: {fam} with m={m}, r={r}"
        return None
    if m is not None:
        return f"{fam} takes no rank parameter"
    if fam in ("Sz", "TwoF4"):
        if p != 2 or k % 2 == 0:
            return f"{fam} requires r = 2^(2e+1)"
        if k == 1:
            return f"nonsimple: {fam}(2) is excluded (needs e >= 1)"
    elif fam == "TwoG2":
        if p != 3 or k % 2 == 0:
            return "TwoG2 requires r = 3^(2e+1)"
        if k == 1:
            return "nonsimple: TwoG2(3) is excluded (needs e >= 1); use L(2,8)"
    elif fam == "G2" and r < 3:
        return "nonsimple: G2 requires r >= 3"
    return None


def require_valid(g: GroupId) -> None:
    reason = validate(g)
    if reason is not None:
        from cpbounds.parsing import format_group

        raise DomainError(f"invalid group {format_group(g)}: {reason}")


def factored_order(g: GroupId) -> FactoredOrder:
    require_valid(g)
    fam, m, r = g.family, g.m, g.r
    if fam == "Alt":
        raise DomainError("alternating groups have no Lie-type order formula")
    if fam == "L":
        return FactoredOrder(m * (m - 1) // 2, tuple(_minus_one(i) for i in range(2, m + 1)), gcd(m, r - 1))
    if fam == "U":
        factors = tuple(((1, i), (-((-1) ** i), 0)) for i in range(2, m + 1))
        return FactoredOrder(m * (m - 1) // 2, factors, gcd(m, r + 1))
    if fam in ("PSp", "OmegaOdd"):
        return FactoredOrder(m * m, tuple(_minus_one(2 * i) for i in range(1, m + 1)), gcd(2, r - 1))
    if fam in ("POmegaPlus", "POmegaMinus"):
        eps = 1 if fam == "POmegaPlus" else -1
        head = ((1, m), (-eps, 0))
        factors = (head,) + tuple(_minus_one(2 * i) for i in range(1, m))
        return FactoredOrder(m * (m - 1), factors, gcd(4, r**m - eps))
    return _EXCEPTIONAL_ORDERS[fam](r)


_EXCEPTIONAL_ORDERS = {
    "G2": lambda r: FactoredOrder(6, (_minus_one(2), _minus_one(6)), 1),
    "F4": lambda r: FactoredOrder(24, tuple(_minus_one(i) for i in (2, 6, 8, 12)), 1),
    "E6": lambda r: FactoredOrder(36, tuple(_minus_one(i) for i in (2, 5, 6, 8, 9, 12)), gcd(3, r - 1)),
    "TwoE6": lambda r: FactoredOrder(
        36,
        (_minus_one(2), _plus_one(5), _minus_one(6), _minus_one(8), _plus_one(9), _minus_one(12)),
        gcd(3, r + 1),
    ),
    "E7": lambda r: FactoredOrder(63, tuple(_minus_one(i) for i in (2, 6, 8, 10, 12, 14, 18)), gcd(2, r - 1)),
    "E8": lambda r: FactoredOrder(120, tuple(_minus_one(i) for i in (2, 8, 12, 14, 18, 20, 24, 30)), 1),
    "ThreeD4": lambda r: FactoredOrder(12, (_minus_one(2), ((1, 8), (1, 4), (1, 0)), _minus_one(6)), 1),
    "TwoF4": lambda r: FactoredOrder(12, (_minus_one(1), _plus_one(3), _minus_one(4), _plus_one(6)), 1),
    "Sz": lambda r: FactoredOrder(2, (_minus_one(1), _plus_one(2)), 1),
    "TwoG2": lambda r: FactoredOrder(3, (_minus_one(1), _plus_one(3)), 1),
}


def order(g: GroupId) -> int:
    """Exact order of the simple group ``g``."""
    require_valid(g)
    if g.family == "Alt":
        return alt_order(g.m)
    return factored_order(g).order(g.r)


def defining_characteristic(g: GroupId) -> int:
    require_valid(g)
    if g.family == "Alt":
        raise DomainError("Alt has no defining characteristic")
    return prime_power(g.r)[0]


def _suzuki_root(r: int) -> int:
    """sqrt(r/2) for r = 2^(2e+1), computed exactly as 2^e."""
    e2 = r.bit_length() - 2
    return 1 << (e2 // 2)


def largest_factors(g: GroupId) -> list[int]:
    """Order-formula factors that the dimension lower bound does not dominate."""
    require_valid(g)
    fam, m, r = g.family, g.m, g.r
    if fam == "Alt":
        raise DomainError("no largest-factor entry for alternating groups")
    if fam == "L":
        return [r**2 - 1] if m == 2 else [r**m - 1]
    if fam == "PSp":
        return [r ** (2 * i) - 1 for i in range(1, m + 1) if m < 2 * i]
    if fam == "U":
        return [r**m - (-1) ** m]
    if fam in ("POmegaPlus", "POmegaMinus"):
        return [r ** (2 * m - 2) - 1]
    if fam == "OmegaOdd":
        return [r ** (2 * m) - 1]
    if fam in ("E6", "TwoE6", "F4"):
        return [r**12 - 1]
    if fam == "E7":
        return [r**18 - 1]
    if fam == "E8":
        return [r**30 - 1]
    if fam == "G2":
        return [r**6 - 1]
    if fam == "ThreeD4":
        return [r**8 + r**4 + 1, r**6 - 1]
    if fam == "TwoF4":
        return [r**6 + 1]
    if fam == "Sz":
        return [r**2 + 1]
    if fam == "TwoG2":
        return [r**3 + 1]
    raise AssertionError(fam)


def dim_lower_bound(g: GroupId) -> int:
    """Lower bound on the dimension of a faithful cross-characteristic projective irreducible."""
    require_valid(g)
    fam, m, r = g.family, g.m, g.r
    if fam == "Alt":
        return max(m - 4, 2)
    if fam == "L":
        if m == 2:
            return (r - 1) // gcd(2, r - 1)
        return r ** (m - 1) - 1
    if fam == "PSp":
        if r % 2:
            return (r**m - 1) // 2
        return r ** (m - 1) * (r ** (m - 1) - 1) * (r - 1) // 2
    if fam == "U":
        if m % 2:
            return r * (r ** (m - 1) - 1) // (r + 1)
        return (r**m - 1) // (r + 1)
    if fam == "POmegaPlus":
        if r in (2, 3, 5):
            return r ** (m - 2) * (r ** (m - 1) - 1)
        return (r ** (m - 1) - 1) * (r ** (m - 2) + 1)
    if fam == "POmegaMinus":
        return (r ** (m - 1) + 1) * (r ** (m - 2) - 1)
    if fam == "OmegaOdd":
        if r in (3, 5):
            return r ** (m - 1) * (r ** (m - 1) - 1)
        return r ** (2 * m - 2) - 1
    if fam in ("E6", "TwoE6"):
        return r**9 * (r**2 - 1)
    if fam == "E7":
        return r**15 * (r**2 - 1)
    if fam == "E8":
        return r**27 * (r**2 - 1)
    if fam == "F4":
        if r % 2:
            return r**6 * (r**2 - 1)
        return r**7 * (r**3 - 1) * (r - 1) // 2
    if fam == "G2":
        return r * (r**2 - 1)
    if fam == "ThreeD4":
        return r**3 * (r**2 - 1)
    if fam == "TwoF4":
        return r**4 * _suzuki_root(r) * (r - 1)
    if fam == "Sz":
        return _suzuki_root(r) * (r - 1)
    if fam == "TwoG2":
        return r * (r - 1)
    raise AssertionError(fam)


# exponent alpha*m + beta with dim >= C1 * r**(alpha*m + beta)
def dim_exponent(g: GroupId) -> int:
    fam, m = g.family, g.m
    if fam in ("L", "U"):
        return m - 1
    if fam == "PSp":
        return m
    if fam in ("POmegaPlus", "POmegaMinus"):
        return 2 * m - 3
    if fam == "OmegaOdd":
        return 2 * m - 2
    return EXCEPTIONAL_DIM_EXPONENT[fam]


EXCEPTIONAL_DIM_EXPONENT = {
    "E6": 11, "E7": 17, "E8": 29, "F4": 8, "TwoE6": 11,
    "G2": 3, "ThreeD4": 5, "TwoF4": 5, "Sz": 1, "TwoG2": 2,
}


def groups_in_range(r_values, m_max: int, families=CLASSICAL) -> list[GroupId]:
    """All valid groups of the given families with r in ``r_values`` and m up to ``m_max``."""
    out = []
    for fam in families:
        for r in sorted(set(r_values)):
            if fam in CLASSICAL:
                for m in range(MIN_RANK[fam], m_max + 1):
                    g = GroupId(fam, m, r)
                    if validate(g) is None:
                        out.append(g)
            else:
                g = GroupId(fam, None, r)
                if validate(g) is None:
                    out.append(g)
    return sorted(out, key=canonical_key)
