"""One invariant across a grid of aspect ratios, with its closed form where one exists."""

import argparse

import numpy as np

from ebilliards import aspect_scan, topology


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--code", default="k106")
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--topology", default="simple")
    ap.add_argument("--lo", type=float, default=1.1)
    ap.add_argument("--hi", type=float, default=3.0)
    ap.add_argument("--steps", type=int, default=12)
    args = ap.parse_args(argv)

    topo = topology(args.n, args.topology)
    for e in aspect_scan(args.code, topo, np.linspace(args.lo, args.hi, args.steps)):
        if e.report is None:
            print(f"a/b={e.ratio:.4f}  {e.reason}")
            continue
        s = e.report.stats[args.code]
        cf = "" if s.closed_form_value is None else f"  closed form {s.closed_form_value:.12g}"
        print(f"a/b={e.ratio:.4f}  {s.verdict.value:12s} mean {s.mean:.12g}  spread {s.rel_spread:.1e}{cf}")


if __name__ == "__main__":
    main()
