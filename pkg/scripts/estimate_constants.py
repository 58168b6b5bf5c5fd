"""Print the empirical suprema of the implicit constants over a sweep."""

import argparse

from cpbounds.bounds import estimate_constants
from cpbounds.config import SweepConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-max", type=int, default=1000)
    ap.add_argument("--m-max", type=int, default=6)
    ap.add_argument("--alt-m-max", type=int, default=100)
    args = ap.parse_args()
    config = SweepConfig(p_max=args.p_max, m_max=args.m_max, alt_m_max=args.alt_m_max)
    for est in estimate_constants(config):
        print(f"{est.quantity:42s} {str(est.supremum):>10s} ~ {float(est.supremum):8.4f}  at {est.witness}  ({est.points} points)")


if __name__ == "__main__":
    main()
