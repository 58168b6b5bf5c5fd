"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run standalone with ``python3 tests/test_acceptance.py`` for just the
summary lines, or through pytest (``pytest tests/test_acceptance.py -s``).
"""

import math
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from cpbounds import bounds, catalog  # noqa: E402
from cpbounds.affine import check_bounds, is_irreducible, orbital_diameter, orbits_on_nonzero  # noqa: E402
from cpbounds.arith import primes_up_to, vp  # noqa: E402
from cpbounds.catalog import GroupId  # noqa: E402
from cpbounds.config import SweepConfig  # noqa: E402
from cpbounds.corpus import build_corpus, tightness_spec  # noqa: E402
from cpbounds.cp import Alternating, Cyclic, Explicit, LieType, characteristic_set, cp_value, factor_order  # noqa: E402
from cpbounds.parsing import parse_group  # noqa: E402

DEFAULT = SweepConfig()


def _violations(reports):
    return [r for r in reports if r.holds is False]


def criterion_1():
    t = time.perf_counter()
    expected = {
        "L(2,5)": oracles.psl2_order(5),
        "L(2,7)": oracles.psl2_order(7),
        "L(3,2)": oracles.psl3_order(2),
        "U(3,3)": oracles.psu3_3_order(),
        "PSp(4,3)": oracles.psp4_3_order(),
        "Sz(8)": 8**2 * (8**2 + 1) * (8 - 1),
        "G2(3)": 3**6 * (3**6 - 1) * (3**2 - 1),
    }
    for m in range(5, 9):
        expected[f"Alt({m})"] = oracles.even_permutations(m)
    mismatches = [k for k, v in expected.items() if catalog.order(parse_group(k)) != v]
    elapsed = time.perf_counter() - t
    return not mismatches and elapsed < 10, f"{len(expected)} groups, mismatches={mismatches}, {elapsed:.2f}s"


def criterion_2():
    t = time.perf_counter()
    reps = bounds.sweep_classical(DEFAULT)
    bad = _violations(reps)
    elapsed = time.perf_counter() - t
    return not bad and elapsed < 60, f"{len(reps)} (group, p) pairs, {len(bad)} violations, {elapsed:.2f}s"


def criterion_3():
    t = time.perf_counter()
    reps = bounds.sweep_exceptional(DEFAULT, divides=False)
    bad = _violations(reps)
    subjects = {r.subject for r in reps}
    covered = {"Sz(8)", "2F4(8)", "2G2(27)", "E8(9)"} <= subjects
    elapsed = time.perf_counter() - t
    return not bad and covered and elapsed < 120, f"{len(reps)} pairs over {len(subjects)} groups, {len(bad)} violations, {elapsed:.2f}s"


def criterion_4():
    t = time.perf_counter()
    reps = bounds.sweep_artin(DEFAULT, divides=False)
    bad = _violations(reps)
    expected = sum(3 * 8 for r in range(2, 17) for p in primes_up_to(1000) if r % p)
    elapsed = time.perf_counter() - t
    return not bad and len(reps) == expected, f"{len(reps)} cases (expected {expected}), {len(bad)} violations, {elapsed:.2f}s"


def criterion_5():
    reps = bounds.sweep_prop25(DEFAULT)
    applicable = [r for r in reps if r.holds is not None]
    bad = _violations(reps)
    return not bad and applicable, f"{len(applicable)} applicable of {len(reps)}, {len(bad)} violations"


def criterion_6():
    t = time.perf_counter()
    reps = bounds.sweep_inline(DEFAULT)
    bad = _violations(reps)
    rows = len(reps) == 999 and all(r.subject.endswith("m<=1000") for r in reps)
    est = {e.quantity: e for e in bounds.estimate_constants(DEFAULT)}["inline_prefactor"]
    ok = not bad and rows and est.supremum == 9 and est.witness == "r=2 m=2"
    elapsed = time.perf_counter() - t
    return ok, f"{len(reps)} rows, {len(bad)} violations, supremum {est.supremum} at {est.witness}, {elapsed:.2f}s"


def criterion_7():
    reps = bounds.sweep_factorizations(DEFAULT)
    bad = _violations(reps)
    suzuki = [r for r in reps if r.family == "Sz"]
    ok = not bad and len(reps) - len(suzuki) == 999 and len(suzuki) == 10
    return ok, f"{len(reps) - len(suzuki)} values of r, {len(suzuki)} Suzuki fields, {len(bad)} failures"


def criterion_8():
    failures = []
    groups = bounds.lie_groups(DEFAULT)
    for g in groups:
        dg = catalog.factored_order(g).divisor * catalog.order(g)
        failures += [(str(g), f) for f in catalog.largest_factors(g) if dg % f]
    return not failures, f"{len(groups)} groups, {len(failures)} failures"


def _random_factor(rng):
    kind = rng.randrange(4)
    if kind == 0:
        return Cyclic(rng.choice(primes_up_to(50)))
    if kind == 1:
        return Alternating(rng.randint(5, 12))
    if kind == 2:
        return LieType(rng.choice(bounds.lie_groups(SweepConfig(m_max=3, classical_r_set=(2, 3, 4, 5, 7), exceptional_r_set=(2, 3)))))
    return Explicit("X", rng.randint(2, 10**6), frozenset(rng.sample([2, 3, 5, 7], rng.randint(0, 2))))


def criterion_9():
    fixed = [
        ([Alternating(5)], 2, 0), ([Alternating(5)], 5, 0), ([Alternating(5)], 3, 1),
        ([LieType(GroupId("L", 2, 7))], 2, 0), ([LieType(GroupId("L", 2, 7))], 7, 0),
        ([Alternating(8)], 2, 0), ([Alternating(6)], 3, 0),
    ]
    wrong = [(f, p) for f, p, want in fixed if cp_value(f, p) != want]
    rng = random.Random(20241015)
    checked = 0
    while checked < 100:
        factors = [_random_factor(rng) for _ in range(rng.randint(1, 6))]
        p = rng.choice(primes_up_to(30))
        if any(p in characteristic_set(f) for f in factors):
            continue
        checked += 1
        if cp_value(factors, p) != vp(p, math.prod(factor_order(f) for f in factors)):
            wrong.append((factors, p))
    return not wrong, f"7 fixed cases + {checked} random lists, {len(wrong)} mismatches"


def criterion_10():
    t = time.perf_counter()
    tight = [p for p in primes_up_to(50) if orbital_diameter(*tightness_spec(p)) != p - 1]
    specs = [e for e in build_corpus() if e.spec.size <= 10**5]
    bad, orbitals = [], 0
    for e in specs:
        if not is_irreducible(e.spec):
            bad.append(e.name)
            continue
        for o in orbits_on_nonzero(e.spec):
            orbitals += 1
            res = check_bounds(e.spec, o)
            if not (res.diameter < math.inf and res.ms_bound_holds):
                bad.append((e.name, o[0]))
    elapsed = time.perf_counter() - t
    ok = not tight and not bad and len(specs) >= 20 and elapsed < 60
    return ok, f"tightness failures={tight}; {len(specs)} specs, {orbitals} orbitals, {len(bad)} failures, {elapsed:.2f}s"


def criterion_11():
    cmd = [sys.executable, "-m", "cpbounds", "verify", "all", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    same = first.stdout == second.stdout and first.returncode == second.returncode == 0
    return same and len(first.stdout) > 0, f"{len(first.stdout)} bytes, identical={first.stdout == second.stdout}"


CRITERIA = [globals()[f"criterion_{i}"] for i in range(1, 12)]


def _line(i, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {i}: {detail}"


@pytest.mark.parametrize("i", range(1, 12))
def test_criterion(i, capsys):
    ok, detail = CRITERIA[i - 1]()
    with capsys.disabled():
        print("\n" + _line(i, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        results.append(ok)
        print(_line(i, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
