"""Compare every polynomial caustic against brute-force periodic orbits."""

import argparse

import numpy as np

from ebilliards import Billiard, GeometryError, build_orbit, topologies
from ebilliards.bounce import periodic_candidates
from ebilliards.orbits import caustic_for, family_window


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ab", type=float, nargs="+", default=[1.2, 1.5, 2.0, 3.0])
    args = ap.parse_args(argv)
    for ab in args.ab:
        B = Billiard.from_ratio(ab)
        for topo in topologies():
            try:
                cau = caustic_for(B, topo)
                turning = abs(build_orbit(B, topo.n, topo.tag).turning)
            except GeometryError as e:
                print(f"a/b={ab:<4} {topo.label:5s} -- {e}")
                continue
            lo, hi = family_window(B, cau)
            t0 = 0.3 if not cau.is_hyperbola else lo + 0.37 * (hi - lo)
            found = [c.caustic.a2 for c in periodic_candidates(B, topo.n, t0)
                     if c.turning == turning and c.caustic.kind == cau.kind]
            gap = min((abs(a - cau.a2) for a in found), default=np.inf) / B.a
            print(f"a/b={ab:<4} {topo.label:5s} a''={cau.a2:.12f} turning={turning} oracle gap {gap:.1e}")


if __name__ == "__main__":
    main()
