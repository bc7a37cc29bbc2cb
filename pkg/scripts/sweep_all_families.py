"""Sweep every registered family at one aspect ratio and print the verdict table."""

import argparse
import csv
import sys

from ebilliards import Billiard, GeometryError, SweepSpec, run_sweep, topologies


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ab", type=float, default=2.0)
    ap.add_argument("--samples", type=int, default=16)
    ap.add_argument("--csv", default=None, help="write label,code,verdict,mean,rel_spread rows here")
    args = ap.parse_args(argv)

    B = Billiard.from_ratio(args.ab)
    rows, failed = [], False
    for topo in topologies():
        try:
            rep = run_sweep(SweepSpec(B, topo, samples=args.samples))
        except GeometryError as e:
            print(f"{topo.label:5s} skipped: {e}")
            continue
        failed |= not rep.reproduced
        cells = " ".join(f"{c}={s.verdict.value[:3]}" for c, s in rep.stats.items())
        print(f"{topo.label:5s} {'ok ' if rep.reproduced else 'BAD'} {cells}")
        rows += [(topo.label, c, s.verdict.value, s.mean, s.rel_spread) for c, s in rep.stats.items()]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["label", "code", "verdict", "mean", "rel_spread"])
            w.writerows(rows)
    return 3 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
