"""Directed and undirected orbital diameters over the built-in irreducible corpus.

For each spec the largest directed diameter is compared with (p-1)n, and with
n^2 / c_p(H) to see how the constant C in diam <= C n^2 / c_p(H) behaves at desk scale.
"""

import math
import time
from fractions import Fraction

from cpbounds.affine import check_bounds, orbits_on_nonzero
from cpbounds.corpus import build_corpus
from cpbounds.cp import cp_value
from cpbounds.parsing import parse_factor_list


def main():
    print(f"{'spec':28s} {'|H|':>8s} {'orbits':>6s} {'max diam':>8s} {'undir':>5s} {'(p-1)n':>6s} {'c_p':>4s} {'diam*c_p/n^2':>12s}")
    for entry in build_corpus():
        t = time.perf_counter()
        spec = entry.spec
        cp = cp_value(parse_factor_list(entry.factors), spec.p) if entry.factors else 0
        results = [check_bounds(spec, o, cp_value=cp, undirected=True) for o in orbits_on_nonzero(spec)]
        diam = max(r.diameter for r in results)
        undirected = max(r.undirected_diameter for r in results)
        ratio = str(Fraction(int(diam) * cp, spec.n**2)) if cp and diam < math.inf else "-"
        print(
            f"{entry.name:28s} {entry.order:8d} {len(results):6d} {diam:8d} {undirected:5d} "
            f"{(spec.p - 1) * spec.n:6d} {cp:4d} {ratio:>12s}  ({time.perf_counter() - t:.2f}s)"
        )


if __name__ == "__main__":
    main()
