"""Exact checkers for the valuation and dimension inequalities, and constant estimation.

Every logarithmic inequality ``v <= c * log(x) / log(p)`` is decided in the
exponentiated form ``p**v <= x**c``, so no verdict ever depends on floating
point.  ``slack`` fields are floats for reading only.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from cpbounds import catalog, cp
from cpbounds.arith import DomainError, alt_order, is_prime, legendre_factorial_vp, primes_up_to, product_vp, vp
from cpbounds.catalog import CLASSICAL, EXCEPTIONAL, FAMILIES, GroupId
from cpbounds.config import SweepConfig

CHECKS = ("artin", "classical", "exceptional", "dim", "prop25", "inline", "factorizations", "alt")

ANCHORS = {
    "artin": "cyclotomic-product-valuation",
    "classical": "classical-valuation-3m",
    "exceptional": "exceptional-valuation-30",
    "dim": "largest-factor-and-dimension-table",
    "prop25": "large-prime-constant-12-60",
    "inline": "inline-inequalities-9-and-3",
    "factorizations": "d4-f4-suzuki-factorizations",
    "alt": "alternating-legendre-bound",
}

A_KINDS = ("+r", "-r", "r2")

CLASSICAL_CONSTANT = 12
EXCEPTIONAL_CONSTANT = 60


@dataclass
class BoundReport:
    check: str
    subject: str
    bound: str
    holds: Optional[bool]  # None: hypotheses of the check's case split not met
    p: Optional[int] = None
    valuation: Optional[int] = None
    slack: Optional[float] = None
    family: str = ""
    m: Optional[int] = None
    r: Optional[int] = None
    extra: dict = field(default_factory=dict)

    @property
    def anchor(self) -> str:
        return ANCHORS[self.check]

    def sort_key(self) -> tuple:
        if self.family in FAMILIES:
            fam = FAMILIES.index(self.family)
        elif self.family in A_KINDS:
            fam = len(FAMILIES) + A_KINDS.index(self.family)
        else:
            fam = -1
        return (CHECKS.index(self.check), fam, self.m or 0, self.r or 0, self.p or 0, self.subject)

    def to_dict(self) -> dict:
        d = {"type": "bound", "check": self.check, "anchor": self.anchor}
        d.update(asdict(self))
        return d


@dataclass(frozen=True)
class ConstantEstimate:
    quantity: str
    supremum: Fraction
    witness: str
    points: int

    def to_dict(self) -> dict:
        return {
            "type": "estimate",
            "quantity": self.quantity,
            "supremum": str(self.supremum),
            "supremum_float": float(self.supremum),
            "witness": self.witness,
            "points": self.points,
        }


@dataclass(frozen=True)
class DimRatios:
    p_over_l: Fraction
    family_ratio: Fraction


@lru_cache(maxsize=None)
def _order(g: GroupId) -> int:
    return catalog.order(g)


def _slack(valuation: int, p: int, log_bound: float) -> float:
    if valuation == 0:
        return 0.0
    return valuation * math.log(p) / log_bound


def _require_coprime(p: int, r: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if r % p == 0:
        raise DomainError(f"p={p} divides the field size r={r}")


def check_artin(a_kind: str, r: int, m: int, p: int) -> BoundReport:
    """v_p of prod (a^i - 1) against Artin's three-case bound and the coarse (r+1)^(2m)."""
    if a_kind not in A_KINDS:
        raise DomainError(f"a_kind must be one of {A_KINDS}")
    if r < 2 or m < 1:
        raise DomainError("need r >= 2 and m >= 1")
    _require_coprime(p, r)
    a = {"+r": r, "-r": -r, "r2": r * r}[a_kind]
    v = product_vp(p, a, m)
    pv = p**v
    if r % 2 == 0:
        # 3^(m/2) is irrational for odd m; compare squares
        case_holds = pv * pv <= 3**m * (r + 1) ** (2 * m)
        desc = "3^(m/2)(r+1)^m"
        log_case = m / 2 * math.log(3) + m * math.log(r + 1)
    elif a_kind in ("+r", "-r"):
        case_holds = pv <= 2**m * (r + 1) ** m
        desc = "2^m(r+1)^m"
        log_case = m * math.log(2 * (r + 1))
    else:
        case_holds = pv <= 4**m * (r + 1) ** m
        desc = "4^m(r+1)^m"
        log_case = m * math.log(4 * (r + 1))
    coarse_holds = pv <= (r + 1) ** (2 * m)
    return BoundReport(
        check="artin",
        subject=f"a={a_kind} r={r} m={m}",
        bound=f"p^v <= {desc} and p^v <= (r+1)^(2m)",
        holds=case_holds and coarse_holds,
        p=p,
        valuation=v,
        slack=_slack(v, p, log_case),
        family=a_kind,
        m=m,
        r=r,
        extra={"case_holds": case_holds, "coarse_holds": coarse_holds},
    )


def check_classical(g: GroupId, p: int) -> BoundReport:
    """p^v_p(|G|) <= (r+1)^(3m) for classical G and p not dividing r."""
    catalog.require_valid(g)
    if not g.is_classical:
        raise DomainError(f"{g} is not classical")
    _require_coprime(p, g.r)
    v = vp(p, _order(g))
    return BoundReport(
        check="classical",
        subject=str(g),
        bound="p^v <= (r+1)^(3m)",
        holds=p**v <= (g.r + 1) ** (3 * g.m),
        p=p,
        valuation=v,
        slack=_slack(v, p, 3 * g.m * math.log(g.r + 1)),
        family=g.family,
        m=g.m,
        r=g.r,
    )


def check_exceptional(g: GroupId, p: int) -> BoundReport:
    """p^v_p(|G|) <= (r+1)^30 for exceptional G and p not dividing r."""
    catalog.require_valid(g)
    if not g.is_exceptional:
        raise DomainError(f"{g} is not exceptional")
    _require_coprime(p, g.r)
    v = vp(p, _order(g))
    return BoundReport(
        check="exceptional",
        subject=str(g),
        bound="p^v <= (r+1)^30",
        holds=p**v <= (g.r + 1) ** 30,
        p=p,
        valuation=v,
        slack=_slack(v, p, 30 * math.log(g.r + 1)),
        family=g.family,
        r=g.r,
    )


def check_dim_vs_p(g: GroupId, p: int) -> DimRatios:
    """Exact ratios p/l and r^(m-1)/l (classical) or r/l (exceptional)."""
    catalog.require_valid(g)
    if not g.is_lie_type:
        raise DomainError("dimension-versus-prime ratios need a group of Lie type")
    _require_coprime(p, g.r)
    if _order(g) % p:
        raise DomainError(f"{p} does not divide |{g}|")
    ell = catalog.dim_lower_bound(g)
    top = g.r ** (g.m - 1) if g.is_classical else g.r
    return DimRatios(Fraction(p, ell), Fraction(top, ell))


def check_special_factorizations(r: int) -> tuple[bool, bool, Optional[bool]]:
    """The 3D4, 2F4 and Suzuki factorizations at r; the third is None unless r = 2^(2e+1)."""
    first = r**8 + r**4 + 1 == (r**4 + r**2 + 1) * (r**4 - r**2 + 1)
    second = r**6 + 1 == (r**2 + 1) * (r**4 - r**2 + 1)
    third = None
    if r >= 2 and r & (r - 1) == 0 and (r.bit_length() - 1) % 2 == 1:
        root = math.isqrt(2 * r)
        third = (
            root * root == 2 * r
            and (r + 1) ** 2 - 2 * r == r**2 + 1
            and (r + 1 - root) * (r + 1 + root) == r**2 + 1
        )
    return first, second, third


def check_inline_inequalities(r: int, m: int) -> tuple[bool, bool]:
    """(r+1)^m <= 9(r^(m-1)-1)^2 and r+1 <= 3(r-1), exactly."""
    if r < 2 or m < 2:
        raise DomainError("need r >= 2 and m >= 2")
    s = r ** (m - 1) - 1
    return (r + 1) ** m <= 9 * s * s, r + 1 <= 3 * (r - 1)


def inline_row(r: int, m_max: int) -> tuple[int, list[int]]:
    """Check the first inline inequality for m = 2..m_max at fixed r.

    Powers are updated incrementally; the square on the right is only formed
    when bit lengths cannot settle the comparison (bitlen(9 s^2) >= 2 bitlen(s) + 2).
    Returns (number of exact comparisons, failing m values).
    """
    lhs = (r + 1) ** 2
    power = r
    exact, failures = 0, []
    for m in range(2, m_max + 1):
        s = power - 1
        if lhs.bit_length() >= 2 * s.bit_length() + 2:
            exact += 1
            if lhs > 9 * s * s:
                failures.append(m)
        lhs *= r + 1
        power *= r
    return exact, failures


def check_alt_bound(m: int, p: int) -> BoundReport:
    """v_p(|Alt(m)|) (p-1) <= m-1."""
    if m < 5:
        raise DomainError(f"Alt({m}) is not simple")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    v = legendre_factorial_vp(p, m) - (1 if p == 2 else 0)
    return BoundReport(
        check="alt",
        subject=f"Alt({m})",
        bound="v (p-1) <= m-1",
        holds=v * (p - 1) <= m - 1,
        p=p,
        valuation=v,
        slack=v * (p - 1) / (m - 1),
        family="Alt",
        m=m,
    )


def _factor(g: GroupId):
    return cp.Alternating(g.m) if g.family == "Alt" else cp.LieType(g)


def _require_quasisimple_hypotheses(g: GroupId, p: int, isomorphisms: bool = True) -> None:
    catalog.require_valid(g)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if g.is_lie_type and g.r % p == 0:
        raise DomainError(f"p={p} is the defining characteristic of {g}")
    if _order(g) % p:
        raise DomainError(f"p={p} does not divide |{g}|")
    if isomorphisms and p in cp.characteristic_set(_factor(g)):
        raise DomainError(f"{g} is isomorphic to a group of Lie type in characteristic {p}")
    if catalog.dim_lower_bound(g) < 2:
        raise DomainError(f"dimension bound for {g} is below 2")


def quasisimple_ratio(g: GroupId, p: int) -> Fraction:
    """v_p(|G|)(p-1)/(l-1), the constant needed at g for the quasisimple bound."""
    _require_quasisimple_hypotheses(g, p)
    ell = catalog.dim_lower_bound(g)
    return Fraction(vp(p, _order(g)) * (p - 1), ell - 1)


def check_prop25_constants(g: GroupId, p: int) -> BoundReport:
    """Large-prime case: v_p(|G|) <= 12 (classical) or <= 60 (exceptional).

    The valuation bound only needs p to avoid the defining characteristic of
    this particular presentation, so exceptional isomorphisms are not excluded
    here (L(3,2) at p=7 is a legitimate input even though L(3,2) = L(2,7)).
    """
    _require_quasisimple_hypotheses(g, p, isomorphisms=False)
    if not g.is_lie_type:
        raise DomainError("the large-prime case split applies to groups of Lie type")
    v = vp(p, _order(g))
    if g.is_classical:
        threshold = 3 * (g.r ** (g.m - 1) - 1)
        const, cond = CLASSICAL_CONSTANT, "p^2 >= 3(r^(m-1)-1)"
    else:
        threshold = 3 * (g.r - 1)
        const, cond = EXCEPTIONAL_CONSTANT, "p^2 >= 3(r-1)"
    applicable = p * p >= threshold
    return BoundReport(
        check="prop25",
        subject=str(g),
        bound=f"if {cond} then v <= {const}",
        holds=(v <= const) if applicable else None,
        p=p,
        valuation=v,
        slack=v / const if applicable else None,
        family=g.family,
        m=g.m,
        r=g.r,
    )


# ---------------------------------------------------------------- sweeps


def classical_groups(config: SweepConfig) -> list[GroupId]:
    return catalog.groups_in_range(config.classical_r_set, config.m_max, CLASSICAL)


def exceptional_groups(config: SweepConfig) -> list[GroupId]:
    groups = catalog.groups_in_range(config.exceptional_r_set, 0, EXCEPTIONAL)
    for r in config.ree_r_set:
        g = GroupId("TwoG2", None, r)
        if catalog.validate(g) is None and g not in groups:
            groups.append(g)
    return sorted(groups, key=catalog.canonical_key)


def lie_groups(config: SweepConfig) -> list[GroupId]:
    return classical_groups(config) + exceptional_groups(config)


def _primes(config: SweepConfig) -> list[int]:
    return primes_up_to(config.p_max)


def coprime_primes(g: GroupId, primes: Iterable[int], divides: bool = True) -> list[int]:
    """Primes not dividing r; when ``divides``, only those dividing |G|."""
    n = _order(g)
    return [p for p in primes if (g.r is None or g.r % p) and (not divides or n % p == 0)]


def _run(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _classical_for(args):
    g, primes, divides = args
    return [check_classical(g, p) for p in coprime_primes(g, primes, divides)]


def _exceptional_for(args):
    g, primes, divides = args
    return [check_exceptional(g, p) for p in coprime_primes(g, primes, divides)]


def _flatten(chunks) -> list:
    return [x for chunk in chunks for x in chunk]


def sweep_classical(config: SweepConfig, divides: bool = True) -> list[BoundReport]:
    primes = _primes(config)
    items = [(g, primes, divides) for g in classical_groups(config)]
    return _flatten(_run(_classical_for, items, config.jobs))


def sweep_exceptional(config: SweepConfig, divides: bool = True) -> list[BoundReport]:
    primes = _primes(config)
    items = [(g, primes, divides) for g in exceptional_groups(config)]
    return _flatten(_run(_exceptional_for, items, config.jobs))


def _artin_for(args):
    kind, r, m, primes, divides = args
    out = []
    a = {"+r": r, "-r": -r, "r2": r * r}[kind]
    prod = 1
    if divides:
        power = 1
        for _ in range(m):
            power *= a
            prod *= power - 1
    for p in primes:
        if r % p == 0 or (divides and prod % p):
            continue
        out.append(check_artin(kind, r, m, p))
    return out


def sweep_artin(config: SweepConfig, divides: bool = True) -> list[BoundReport]:
    primes = _primes(config)
    items = [
        (kind, r, m, primes, divides)
        for kind in A_KINDS
        for r in range(2, config.artin_r_max + 1)
        for m in range(1, config.artin_m_max + 1)
    ]
    return _flatten(_run(_artin_for, items, config.jobs))


def sweep_alt(config: SweepConfig) -> list[BoundReport]:
    primes = _primes(config)
    return [check_alt_bound(m, p) for m in range(5, config.alt_m_max + 1) for p in primes if p <= m]


def _prop25_for(args):
    g, primes = args
    out = []
    for p in coprime_primes(g, primes):
        try:
            out.append(check_prop25_constants(g, p))
        except DomainError:
            continue  # isomorphic to a group in characteristic p
    return out


def sweep_prop25(config: SweepConfig) -> list[BoundReport]:
    primes = _primes(config)
    items = [(g, primes) for g in lie_groups(config)]
    return _flatten(_run(_prop25_for, items, config.jobs))


def _inline_for(args):
    r, m_max = args
    exact, failures = inline_row(r, m_max)
    second = r + 1 <= 3 * (r - 1)
    return BoundReport(
        check="inline",
        subject=f"r={r} 2<=m<={m_max}",
        bound="(r+1)^m <= 9(r^(m-1)-1)^2 and r+1 <= 3(r-1)",
        holds=not failures and second,
        r=r,
        extra={"failing_m": failures, "exact_comparisons": exact, "second_holds": second},
    )


def sweep_inline(config: SweepConfig) -> list[BoundReport]:
    items = [(r, config.inline_m_max) for r in range(2, config.inline_r_max + 1)]
    return _run(_inline_for, items, config.jobs)


def sweep_factorizations(config: SweepConfig) -> list[BoundReport]:
    out = []
    for r in range(2, config.factorization_r_max + 1):
        a, b, c = check_special_factorizations(r)
        out.append(BoundReport(
            check="factorizations",
            subject=f"r={r}",
            bound="r^8+r^4+1 and r^6+1 factorizations",
            holds=a and b,
            r=r,
            extra={"d4": a, "f4": b},
        ))
    for e in range(1, config.suzuki_e_max + 1):
        r = 2 ** (2 * e + 1)
        c = check_special_factorizations(r)[2]
        out.append(BoundReport(
            check="factorizations",
            subject=f"r=2^{2 * e + 1}",
            bound="r^2+1 = (r+1-sqrt(2r))(r+1+sqrt(2r))",
            holds=bool(c),
            family="Sz",
            r=r,
        ))
    return out


def check_table(g: GroupId) -> BoundReport:
    """Largest factors divide d|G|, and the dimension bound respects its r-power growth."""
    fo = catalog.factored_order(g)
    universal = fo.universal_order(g.r)
    largest = catalog.largest_factors(g)
    divides = all(universal % f == 0 for f in largest)
    ell = catalog.dim_lower_bound(g)
    exponent = catalog.dim_exponent(g)
    prefactor_bound = 9 if g.is_classical else 4
    grows = prefactor_bound * ell >= g.r**exponent
    extra = {"largest_factors": largest, "dim_lower_bound": ell, "divides": divides, "growth": grows}
    if g.family == "POmegaMinus":
        # the minus-type bound is a single expression with no listed small-r exceptions
        extra["dim_bound_note"] = "single expression used for every r"
    return BoundReport(
        check="dim",
        subject=str(g),
        bound=f"largest factors | d|G|; l >= 2; l >= r^{exponent}/{prefactor_bound}",
        holds=divides and ell >= 2 and grows,
        family=g.family,
        m=g.m,
        r=g.r,
        extra=extra,
    )


def sweep_dim(config: SweepConfig) -> list[BoundReport]:
    return [check_table(g) for g in lie_groups(config)]


SWEEPS = {
    "artin": sweep_artin,
    "classical": sweep_classical,
    "exceptional": sweep_exceptional,
    "dim": sweep_dim,
    "prop25": sweep_prop25,
    "inline": sweep_inline,
    "factorizations": sweep_factorizations,
    "alt": sweep_alt,
}


def run_checks(selector: str, config: SweepConfig) -> list[BoundReport]:
    names = CHECKS if selector == "all" else (selector,)
    if any(n not in SWEEPS for n in names):
        raise DomainError(f"unknown check {selector!r}")
    reports = [rep for n in names for rep in SWEEPS[n](config)]
    return sorted(reports, key=BoundReport.sort_key)


# ---------------------------------------------------------------- estimates


class _Sup:
    def __init__(self, quantity: str):
        self.quantity = quantity
        self.best: Optional[Fraction] = None
        self.witness = ""
        self.points = 0

    def offer(self, value: Fraction, witness: str) -> None:
        self.points += 1
        if self.best is None or value > self.best:
            self.best, self.witness = value, witness

    def result(self) -> Optional[ConstantEstimate]:
        if self.best is None:
            return None
        return ConstantEstimate(self.quantity, self.best, self.witness, self.points)


def estimate_constants(config: SweepConfig) -> list[ConstantEstimate]:
    """Suprema, with first witnesses in canonical order, of the implicit constants."""
    primes = _primes(config)
    sups = {name: _Sup(name) for name in (
        "prime_over_dim",
        "prime_minus_one_over_dim_minus_one",
        "rank_power_over_dim",
        "field_over_dim",
        "rank_power_minus_one_over_dim_minus_one",
        "field_minus_one_over_dim_minus_one",
        "classical_dim_prefactor",
        "exceptional_dim_prefactor",
        "quasisimple_ratio",
        "inline_prefactor",
        "legendre_tightness",
    )}
    for g in lie_groups(config):
        ell = catalog.dim_lower_bound(g)
        label = str(g)
        if g.is_classical:
            top = g.r ** (g.m - 1)
            sups["rank_power_over_dim"].offer(Fraction(top, ell), label)
            sups["rank_power_minus_one_over_dim_minus_one"].offer(Fraction(top - 1, ell - 1), label)
            sups["classical_dim_prefactor"].offer(Fraction(g.r ** catalog.dim_exponent(g), ell), label)
        else:
            sups["field_over_dim"].offer(Fraction(g.r, ell), label)
            sups["field_minus_one_over_dim_minus_one"].offer(Fraction(g.r - 1, ell - 1), label)
            sups["exceptional_dim_prefactor"].offer(Fraction(g.r ** catalog.dim_exponent(g), ell), label)
        for p in coprime_primes(g, primes):
            sups["prime_over_dim"].offer(Fraction(p, ell), f"{label} p={p}")
            sups["prime_minus_one_over_dim_minus_one"].offer(Fraction(p - 1, ell - 1), f"{label} p={p}")
            try:
                q = quasisimple_ratio(g, p)
            except DomainError:
                continue
            sups["quasisimple_ratio"].offer(q, f"{label} p={p}")
    for m in range(5, config.alt_m_max + 1):
        g = GroupId("Alt", m)
        for p in primes:
            if p > m:
                break
            try:
                q = quasisimple_ratio(g, p)
            except DomainError:
                pass
            else:
                sups["quasisimple_ratio"].offer(q, f"{g} p={p}")
            v = vp(p, alt_order(m))
            sups["legendre_tightness"].offer(Fraction(v * (p - 1), m - 1), f"m={m} p={p}")
    for r in range(2, config.inline_estimate_r_max + 1):
        for m in range(2, config.inline_estimate_m_max + 1):
            s = r ** (m - 1) - 1
            sups["inline_prefactor"].offer(Fraction((r + 1) ** m, s * s), f"r={r} m={m}")
    return [est for s in sups.values() if (est := s.result()) is not None]
