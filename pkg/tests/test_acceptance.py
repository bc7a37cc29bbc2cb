"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed
in the terminal summary (and by running this file directly)."""

import math

import numpy as np
import pytest

from ebilliards import polyroots as pr
from ebilliards import polys
from ebilliards.bounce import periodic_candidates
from ebilliards.bowtie import equal_perimeter_ratio, right_angle_ratio, sweep as bowtie_sweep
from ebilliards.conic import Billiard
from ebilliards.invariants import REGISTRY, dual_form_check, k119_universal, measure
from ebilliards.orbits import (
    FamilyNonexistent,
    build_orbit,
    caustic_for,
    check_orbit,
    closed_form_perimeter,
    family_orbit,
    family_params,
    family_window,
    topologies,
    topology,
)
from ebilliards.sweep import SweepSpec, run_sweep

from conftest import FAMILY_RATIOS

RESULTS: dict[int, tuple[bool, str]] = {}
LABELS = {t.label: t for t in topologies()}


def _worst(items):
    """(value, where) with the largest value, or (0, '') for none."""
    return max(items, key=lambda x: x[0], default=(0.0, ""))


def criterion_1():
    """Orbit validity for every registered family at three ratios."""
    fails, n_orbits = [], 0
    for topo in topologies():
        for ab in FAMILY_RATIOS[topo.label]:
            B = Billiard.from_ratio(ab)
            for t in family_params(B, topo, 4):
                o = family_orbit(B, topo, float(t))
                chk = check_orbit(o)
                n_orbits += 1
                if not chk.ok(None, 1e-10, 1e-9, 1e-10, 1e-10, 1e-8):
                    fails.append(f"{topo.label}@{ab}: residuals {chk}")
                if abs(chk.turning) != topo.turning:
                    fails.append(f"{topo.label}@{ab}: turning {abs(chk.turning)} != claimed {topo.turning}")
    uniq = sorted(set(f.split(":")[0].split("@")[0] + ":" + f.split(":", 1)[1].split(" != ")[0]
                      for f in fails))
    detail = f"{n_orbits} orbits" + (f"; {len(fails)} failures: " + "; ".join(uniq) if fails else "")
    return not fails, detail


def criterion_2():
    """Closed-form perimeters at a/b in {1.5, 2, 3} where the family exists."""
    worst, checked = [], 0
    for label in ("3", "4", "4i", "5", "6", "6i", "6ii"):
        topo = LABELS[label]
        for ab in (1.5, 2.0, 3.0):
            B = Billiard.from_ratio(ab)
            try:
                o = build_orbit(B, topo.n, topo.tag)
            except FamilyNonexistent:
                continue
            want = closed_form_perimeter(B, topo)
            worst.append((abs(o.L - want) / want, f"{label}@{ab}"))
            checked += 1
    err, where = _worst(worst)
    return err < 1e-8, f"{checked} cases, worst rel err {err:.1e} ({where})"


def criterion_3():
    """Circle-limit roots of the N=7 and N=5 caustic polynomials."""
    r7 = sorted(abs(r) for r in pr.real_roots(polys.n7_caustic_poly(Billiard(1, 1))))
    want7 = sorted([0.9009688680, 0.2225209340, 0.6234898025])
    e7 = max(abs(x - y) for x, y in zip(r7, want7)) if len(r7) == 3 else math.inf
    r5 = pr.real_roots(polys.n5_caustic_poly(Billiard(1, 1)))
    e5 = max(min(abs(r - w) for r in r5) for w in ((math.sqrt(5) - 1) / 4, (math.sqrt(5) + 1) / 4))
    return e7 < 1e-9 and e5 < 1e-12, f"N=7 err {e7:.1e}, N=5 err {e5:.1e}"


def criterion_4():
    """Every closed-form entry against 16-sample sweeps at three ratios; dual forms."""
    worst, dual, n = [], [], 0
    for (code, nn, tag), entry in REGISTRY.items():
        topo = topology(nn, tag)
        for ab in FAMILY_RATIOS[topo.label]:
            B = Billiard.from_ratio(ab)
            rep = run_sweep(SweepSpec(B, topo, (code,), samples=16))
            s = rep.stats[code]
            worst.append((s.closed_form_residual if s.values else math.inf, f"{code}/{topo.label}@{ab}"))
            n += 1
            if entry.ab is not None and entry.jl is not None:
                dual.append((dual_form_check(code, B, topo), f"{code}/{topo.label}@{ab}"))
    err, where = _worst(worst)
    derr, dwhere = _worst(dual)
    ok = err < 1e-7 and derr < 1e-10
    return ok, f"{len(REGISTRY)} entries x 3 ratios; worst {err:.1e} ({where}); dual worst {derr:.1e} ({dwhere})"


def criterion_5():
    """k804 variable on 4 and 6ii, invariant on the other listed families."""
    variable = ("4", "6ii")
    invariant = ("3", "5", "5i", "6", "6i", "7", "7i", "7ii", "8")
    bad = []
    lo_var, hi_inv = math.inf, 0.0
    for label in variable + invariant:
        topo = LABELS[label]
        for ab in FAMILY_RATIOS[label]:
            rel = run_sweep(SweepSpec(Billiard.from_ratio(ab), topo, ("k804",))).stats["k804"].rel_spread
            if label in variable:
                lo_var = min(lo_var, rel)
                if not rel > 1e-3:
                    bad.append(f"{label}@{ab} spread {rel:.1e}")
            else:
                hi_inv = max(hi_inv, rel)
                if not rel < 1e-7:
                    bad.append(f"{label}@{ab} spread {rel:.1e}")
    detail = f"min variable spread {lo_var:.1e}, max invariant spread {hi_inv:.1e}"
    return not bad, detail + ("; " + "; ".join(bad) if bad else "")


BOWTIE_LIMITS = {
    "concyclic_vertices": 1e-9,
    "concyclic_outer": 1e-9,
    "harmonic": 1e-12,
    "power_C": 1e-10,
    "power_Cp": 1e-10,
    "midpoint_spread": 1e-10,
    "quartic": 1e-8,
    "perpendicular": 1e-10,
    "outer_top": 1e-9,
    "outer_bottom": 1e-9,
}


def criterion_6():
    """Bowtie identities over 50-point sweeps at a/b in {1.5, 2, 3}."""
    worst = {k: 0.0 for k in BOWTIE_LIMITS}
    for ab in (1.5, 2.0, 3.0):
        for r in bowtie_sweep(Billiard.from_ratio(ab), 50):
            for k in worst:
                worst[k] = max(worst[k], abs(getattr(r, k)))
    bad = [f"{k} {worst[k]:.1e} > {BOWTIE_LIMITS[k]:.0e}" for k in worst if not worst[k] < BOWTIE_LIMITS[k]]
    top = max(worst, key=lambda k: worst[k] / BOWTIE_LIMITS[k])
    return not bad, f"150 members; tightest {top} {worst[top]:.1e}" + ("; " + "; ".join(bad) if bad else "")


def criterion_7():
    """Right-angle and equal-perimeter aspect ratios."""
    r1, r2 = right_angle_ratio(), equal_perimeter_ratio()
    e1 = abs(r1 - math.sqrt(1 + math.sqrt(2)))
    e2 = abs(r2 - 1.55529)
    return e1 < 1e-6 and e2 < 5e-5, f"right angle {r1:.10f} (err {e1:.1e}), equal perimeter {r2:.10f} (err {e2:.1e})"


def _oracle_caustics(B, n, turning, kind, t0):
    cands = [c for c in periodic_candidates(B, n, t0) if c.turning == turning and c.caustic.kind == kind]
    uniq = []
    for c in sorted(cands, key=lambda c: c.caustic.a2):
        if not uniq or abs(uniq[-1] - c.caustic.a2) > 1e-9 * B.a:
            uniq.append(c.caustic.a2)
    return uniq


def criterion_8():
    """Raw polynomial caustics against the brute-force oracle at two ratios each.

    The oracle returns every primitive n-periodic through one boundary point;
    among those with the factory's turning and caustic kind one must carry the
    polynomial caustic, and none may fall outside the registered families.
    """
    worst, bad = [], []
    for topo in topologies():
        for ab in FAMILY_RATIOS[topo.label][:2]:
            B = Billiard.from_ratio(ab)
            cau = caustic_for(B, topo)
            turning = abs(build_orbit(B, topo.n, topo.tag).turning)
            lo, hi = family_window(B, cau)
            t0 = 0.3 if not cau.is_hyperbola else lo + 0.37 * (hi - lo)
            found = _oracle_caustics(B, topo.n, turning, topo.kind, t0)
            # every family the oracle finds must be a registered one
            known = []
            for other in topologies(topo.n):
                try:
                    known.append(caustic_for(B, other).a2)
                except FamilyNonexistent:
                    pass
            for a2 in found:
                if min(abs(a2 - k) for k in known) > 1e-7 * B.a:
                    bad.append(f"{topo.label}@{ab}: oracle family a''={a2:.9g} not registered")
            gap = min((abs(a - cau.a2) for a in found), default=math.inf) / B.a
            worst.append((gap, f"{topo.label}@{ab}"))
    err, where = _worst(worst)
    ok = err < 1e-7 and not bad
    return ok, f"{len(worst)} cases, worst caustic gap {err:.1e} ({where})" + ("; " + "; ".join(bad) if bad else "")


def criterion_9():
    """Sum of curvature^(2/3) against L / (2 J (ab)^(4/3)) on every constructed orbit."""
    worst, n = [], 0
    for topo in topologies():
        for ab in FAMILY_RATIOS[topo.label]:
            B = Billiard.from_ratio(ab)
            for t in family_params(B, topo, 16):
                o = family_orbit(B, topo, float(t))
                want = k119_universal(o)
                worst.append((abs(measure("k119", o, force=True) - want) / want, f"{topo.label}@{ab}"))
                n += 1
    err, where = _worst(worst)
    return err < 1e-9, f"{n} orbits, worst rel err {err:.1e} ({where})"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 10)}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = CRITERIA[number]()
    RESULTS[number] = (ok, detail)
    assert ok, detail


if __name__ == "__main__":
    for i, fn in CRITERIA.items():
        ok, detail = fn()
        print(f"criterion {i}: {'PASS' if ok else 'FAIL'}  {fn.__doc__.splitlines()[0]}  [{detail}]")
