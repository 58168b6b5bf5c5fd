"""c_p of a composition-factor multiset, with exceptional isomorphisms accounted for.

c_p sums v_p(|F|) over factors F that are not simple groups of Lie type in
characteristic p.  Whether F "is" of Lie type in characteristic p depends on
its isomorphism class, not on how the user wrote it down, so every factor
resolves to a set of characteristics through the table below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from cpbounds.arith import DomainError, alt_order, is_prime, vp
from cpbounds.catalog import GroupId, defining_characteristic, order, require_valid


@dataclass(frozen=True)
class Cyclic:
    order: int

    def __post_init__(self):
        if not is_prime(self.order):
            raise DomainError(f"cyclic composition factor needs prime order, got {self.order}")


@dataclass(frozen=True)
class Alternating:
    m: int

    def __post_init__(self):
        if self.m < 5:
            raise DomainError(f"Alt({self.m}) is not simple")


@dataclass(frozen=True)
class LieType:
    group: GroupId

    def __post_init__(self):
        require_valid(self.group)
        if self.group.family == "Alt":
            raise DomainError("use Alternating for Alt(m)")


@dataclass(frozen=True)
class Explicit:
    name: str
    order: int
    lie_characteristics: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.order < 2:
            raise DomainError("explicit factor order must be at least 2")
        object.__setattr__(self, "lie_characteristics", frozenset(self.lie_characteristics))


CompositionFactor = Union[Cyclic, Alternating, LieType, Explicit]

# Alt(6) carries {3} only: Sp4(2)' is a derived group, not a simple Lie-type group in our catalog.
ALT_CHARACTERISTICS = {5: frozenset({2, 5}), 6: frozenset({3}), 8: frozenset({2})}

LIE_CHARACTERISTICS = {
    GroupId("L", 2, 4): frozenset({2, 5}),
    GroupId("L", 2, 5): frozenset({2, 5}),
    GroupId("L", 2, 9): frozenset({3}),
    GroupId("L", 4, 2): frozenset({2}),
    GroupId("L", 2, 7): frozenset({2, 7}),
    GroupId("L", 3, 2): frozenset({2, 7}),
    GroupId("U", 4, 2): frozenset({2, 3}),
    GroupId("PSp", 2, 3): frozenset({2, 3}),
}

# isomorphic pairs as (alternating degree or None, list of Lie-type ids); used by tests
ISOMORPHISM_CLASSES = (
    (5, (GroupId("L", 2, 4), GroupId("L", 2, 5))),
    (6, (GroupId("L", 2, 9),)),
    (8, (GroupId("L", 4, 2),)),
    (None, (GroupId("L", 2, 7), GroupId("L", 3, 2))),
    (None, (GroupId("U", 4, 2), GroupId("PSp", 2, 3))),
)


def characteristic_set(f: CompositionFactor) -> frozenset:
    """Primes p for which ``f`` is a simple group of Lie type in characteristic p."""
    if isinstance(f, Cyclic):
        return frozenset()
    if isinstance(f, Alternating):
        return ALT_CHARACTERISTICS.get(f.m, frozenset())
    if isinstance(f, LieType):
        own = frozenset({defining_characteristic(f.group)})
        return own | LIE_CHARACTERISTICS.get(f.group, frozenset())
    if isinstance(f, Explicit):
        return f.lie_characteristics
    raise TypeError(f"not a composition factor: {f!r}")


def factor_order(f: CompositionFactor) -> int:
    if isinstance(f, Cyclic):
        return f.order
    if isinstance(f, Alternating):
        return alt_order(f.m)
    if isinstance(f, LieType):
        return order(f.group)
    if isinstance(f, Explicit):
        return f.order
    raise TypeError(f"not a composition factor: {f!r}")


def is_abelian(f: CompositionFactor) -> bool:
    return isinstance(f, Cyclic) or (isinstance(f, Explicit) and is_prime(f.order))


def cp_value(factors: Iterable[CompositionFactor], p: int) -> int:
    """Sum of v_p over factors not of Lie type in characteristic p."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return sum(vp(p, factor_order(f)) for f in factors if p not in characteristic_set(f))


def cp_nonabelian(factors: Iterable[CompositionFactor], p: int) -> int:
    """As :func:`cp_value`, restricted to nonabelian factors."""
    return cp_value([f for f in factors if not is_abelian(f)], p)
