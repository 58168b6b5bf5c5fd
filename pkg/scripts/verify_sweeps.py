"""Run every inequality sweep and print a per-check tally with the worst slack.

    python3 scripts/verify_sweeps.py [--p-max 1000] [--m-max 6] [--jobs 1]
"""

import argparse
import time
from collections import defaultdict

from cpbounds import bounds
from cpbounds.config import SweepConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p-max", type=int, default=1000)
    ap.add_argument("--m-max", type=int, default=6)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    config = SweepConfig(p_max=args.p_max, m_max=args.m_max, jobs=args.jobs)

    for check in bounds.CHECKS:
        t = time.perf_counter()
        reports = bounds.run_checks(check, config)
        tally = defaultdict(int)
        worst = None
        for rep in reports:
            tally[rep.holds] += 1
            if rep.slack is not None and (worst is None or rep.slack > worst.slack):
                worst = rep
        where = f"{worst.subject} p={worst.p} slack={worst.slack:.4f}" if worst else "-"
        print(
            f"{check:15s} held={tally[True]:6d} violated={tally[False]:3d} n/a={tally[None]:5d} "
            f"worst: {where}  ({time.perf_counter() - t:.2f}s)"
        )


if __name__ == "__main__":
    main()
