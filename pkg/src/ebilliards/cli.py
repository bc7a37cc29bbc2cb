"""Command-line front end: ``ebilliards orbit|sweep|scan|bowtie``.

Exit codes: 0 success (claims reproduced), 2 invalid or nonexistent
configuration, 3 a claim was not reproduced.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from .bowtie import (
    BowtieDegenerate,
    analyze,
    bowtie_circles,
    crossing_angle,
    midpoints,
    u_grid,
)
from .conic import Billiard, GeometryError, InversionContext, invert_polygon
from .invariants import (
    DegenerateError,
    DerivedPolygons,
    applicable,
    closed_form,
    has_closed_form,
    measure,
    parse_codes,
)
from .orbits import (
    FamilyNonexistent,
    Tag,
    bowtie_umax,
    build_orbit,
    check_orbit,
    family_orbit,
    topology,
)
from .svg import COLORS, draw_conic, figure_for
from .sweep import SweepSpec, Thresholds, aspect_scan, run_sweep

TOL_ENV = "EBILLIARDS_TOL"

EXIT_OK, EXIT_INVALID, EXIT_CLAIM = 0, 2, 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """Pass/fail limits used by the CLI; overridable through EBILLIARDS_TOL."""

    on_ellipse: float = 1e-10
    reflection: float = 1e-9
    tangency: float = 1e-10
    j_spread: float = 1e-10
    gap: float = 1e-8
    identity: float = 1e-9
    invariant: float = 1e-7
    variable: float = 1e-3
    floor: float = 1e-6

    @classmethod
    def from_env(cls, environ=None) -> "Tolerances":
        """Parse ``key=value`` pairs, comma separated, e.g. ``invariant=1e-8,gap=1e-9``."""
        raw = (environ if environ is not None else os.environ).get(TOL_ENV, "").strip()
        tol = cls()
        if not raw:
            return tol
        updates = {}
        for item in raw.split(","):
            key, sep, val = item.partition("=")
            key = key.strip()
            if not sep or key not in cls.__dataclass_fields__:
                raise ConfigError(f"{TOL_ENV}: cannot parse {item!r}")
            try:
                updates[key] = float(val)
            except ValueError:
                raise ConfigError(f"{TOL_ENV}: {key} needs a number, got {val!r}") from None
            if updates[key] <= 0:
                raise ConfigError(f"{TOL_ENV}: {key} must be positive")
        return replace(tol, **updates)

    def thresholds(self) -> Thresholds:
        return Thresholds(self.invariant, self.variable, self.floor)


@dataclass(frozen=True)
class RunConfig:
    ab: float
    b: float = 1.0
    n: int = 3
    topology: str = "simple"
    samples: int = 16
    rho: float = 1.0
    param: float | None = None
    out: Path = Path("out")
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        if not (self.ab >= 1 and math.isfinite(self.ab)):
            raise ConfigError(f"--ab must be a finite number >= 1, got {self.ab}")
        if self.b <= 0:
            raise ConfigError("--b must be positive")
        if self.rho <= 0:
            raise ConfigError("--rho must be positive")
        if self.samples < 8:
            raise ConfigError("--samples must be at least 8")

    @property
    def billiard(self) -> Billiard:
        return Billiard(self.ab * self.b, self.b)

    @property
    def topo(self):
        try:
            return topology(self.n, self.topology)
        except ValueError as e:
            raise ConfigError(str(e)) from None


def version_stamp() -> str:
    return f"ebilliards {__version__}"


def _num(x):
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, np.ndarray):
        return [_num(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def write_json(path: Path, payload: dict) -> None:
    payload = dict(payload, version=version_stamp())
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_num(payload), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _tol_dict(t: Tolerances) -> dict:
    return dict(t.__dict__)


# ---------------------------------------------------------------------- orbit


def cmd_orbit(cfg: RunConfig, show: list[str]) -> int:
    B, topo = cfg.billiard, cfg.topo
    orbit = build_orbit(B, topo.n, topo.tag, cfg.param)
    chk = check_orbit(orbit)
    t = cfg.tolerances
    valid = chk.ok(None, t.on_ellipse, t.reflection, t.tangency, t.j_spread, t.gap)
    turning_ok = abs(chk.turning) == topo.turning

    derived = None
    invariants = {}
    try:
        derived = DerivedPolygons.of(orbit, cfg.rho)
    except DegenerateError:
        pass
    ctx = InversionContext(1, cfg.rho)
    for code in parse_codes(None):
        if not applicable(code, topo.n):
            continue
        entry = {"measured": None, "closed_form": None}
        try:
            if derived is None:
                raise DegenerateError("outer polygon undefined")
            entry["measured"] = measure(code, orbit, derived, ctx)
        except DegenerateError as e:
            entry["degenerate"] = str(e)
        if has_closed_form(code, topo):
            entry["closed_form"] = closed_form(code, B, topo, cfg.rho)
        invariants[code] = entry

    payload = {
        "ab": B.ratio,
        "a": B.a,
        "b": B.b,
        "n": topo.n,
        "topology": topo.tag.value,
        "param": orbit.param,
        "vertices": orbit.vertices,
        "caustic": {"kind": orbit.caustic.kind.value, "a2": orbit.caustic.a2, "b2": orbit.caustic.b2},
        "J": orbit.J,
        "L": orbit.L,
        "turning": abs(chk.turning),
        "claimed_turning": topo.turning,
        "checks": {
            "on_ellipse": chk.on_ellipse,
            "reflection": chk.reflection,
            "tangency": chk.tangency,
            "j_spread": chk.j_spread,
            "gap_ratio": chk.gap_ratio,
            "valid": valid,
            "turning_matches_claim": turning_ok,
        },
        "invariants": invariants,
        "rho": cfg.rho,
        "tolerances": _tol_dict(t),
    }
    out = cfg.out
    write_json(out.with_suffix(".json"), payload)

    fig = figure_for(B, banner=version_stamp())
    draw_conic(fig, B, orbit.caustic, COLORS["caustic"])
    if derived is not None:
        if "outer" in show:
            fig.polygon(derived.outer, COLORS["outer"], width=1.0)
        if "inner" in show:
            fig.polygon(derived.inner, COLORS["inner"], width=1.0)
        if "inversive" in show:
            fig.polygon(derived.inversive1, COLORS["inversive"], width=1.0)
    fig.polygon(orbit.vertices, COLORS["orbit"], width=2.0)
    fig.dots(orbit.vertices[:1], "#d62828", 4.0)
    fig.save(out.with_suffix(".svg"))

    print(f"N={topo.n} {topo.tag.value} a/b={B.ratio:g}: J={orbit.J:.12g} L={orbit.L:.12g} "
          f"turning={abs(chk.turning)} (claimed {topo.turning}) valid={valid}")
    if not turning_ok:
        print(f"turning number {abs(chk.turning)} differs from the claimed {topo.turning}", file=sys.stderr)
    return EXIT_OK if valid and turning_ok else EXIT_CLAIM


# ---------------------------------------------------------------------- sweep


def cmd_sweep(cfg: RunConfig, codes: list[str] | None, offset: float = 0.0) -> int:
    B, topo = cfg.billiard, cfg.topo
    spec_codes = tuple(codes) if codes else SweepSpec(B, topo).codes
    spec = SweepSpec(B, topo, spec_codes, cfg.samples, offset, cfg.rho, cfg.tolerances.thresholds())
    report = run_sweep(spec)

    out = cfg.out
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out.with_suffix(".csv"), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["param", "code", "value"])
        for p, code, v in report.rows():
            w.writerow([repr(float(p)), code, repr(float(v))])
    payload = report.as_dict()
    payload["tolerances"] = _tol_dict(cfg.tolerances)
    write_json(out.with_suffix(".json"), payload)

    print(f"N={topo.n} {topo.tag.value} a/b={B.ratio:g} samples={cfg.samples}")
    for code, s in report.stats.items():
        cf = "" if s.closed_form_residual is None else f" cf_residual={s.closed_form_residual:.2e}"
        claim = "" if s.claimed is None else f" claimed={s.claimed.value}"
        mean = "" if not s.values else f" mean={s.mean:.12g} rel_spread={s.rel_spread:.2e}"
        print(f"  {code:6s} {s.verdict.value:12s}{mean}{cf}{claim}")
    return EXIT_OK if report.reproduced else EXIT_CLAIM


def cmd_scan(cfg: RunConfig, code: str, grid: list[float]) -> int:
    topo = cfg.topo
    entries = aspect_scan(code, topo, grid, cfg.samples, cfg.rho, cfg.tolerances.thresholds())
    rows = []
    ok = True
    for e in entries:
        if e.report is None:
            rows.append({"ab": e.ratio, "verdict": "Nonexistent", "reason": e.reason})
            print(f"  a/b={e.ratio:g}: {e.reason}")
            continue
        s = e.report.stats[code]
        ok &= s.reproduced
        rows.append({"ab": e.ratio, **s.as_dict()})
        cf = "" if s.closed_form_value is None else f" closed_form={s.closed_form_value:.12g}"
        print(f"  a/b={e.ratio:g}: {s.verdict.value} mean={s.mean:.12g}{cf}")
    write_json(cfg.out.with_suffix(".json"), {"code": code, "n": topo.n, "topology": topo.tag.value,
                                              "entries": rows, "tolerances": _tol_dict(cfg.tolerances)})
    return EXIT_OK if ok else EXIT_CLAIM


# --------------------------------------------------------------------- bowtie


def _quartic_branch(B: Billiard, count: int = 400) -> list[np.ndarray]:
    """Upper and lower halves of the midpoint quartic, solved as a quadratic in y^2."""
    a, b, c2 = B.a, B.b, B.c2
    xmax = a * math.sqrt(a * a - 2 * b * b) / B.c
    xs = np.linspace(-xmax, xmax, count)
    ys = []
    for x in xs:
        qa = c2 * a**4
        qb = 2 * c2 * a * a * b * b * x * x + b**4 * a**4
        qc = c2 * b**4 * x**4 - b**4 * a * a * (a * a - 2 * b * b) * x * x
        disc = max(qb * qb - 4 * qa * qc, 0.0)
        s = (-qb + math.sqrt(disc)) / (2 * qa)
        ys.append(math.sqrt(max(s, 0.0)))
    ys = np.array(ys)
    return [np.column_stack([xs, ys]), np.column_stack([xs, -ys])]


def cmd_bowtie(cfg: RunConfig, count: int) -> int:
    B = cfg.billiard
    topo = topology(4, Tag.TYPE1)
    bowtie_umax(B)  # raises FamilyNonexistent below sqrt(2)
    reports = [analyze(B, float(u)) for u in u_grid(B, count)]
    t = cfg.tolerances
    limits = {
        "concyclic_vertices": t.identity,
        "concyclic_outer": t.identity,
        "harmonic": 1e-12 * (t.identity / 1e-9),
        "power_C": t.identity * 0.1,
        "power_Cp": t.identity * 10,
        "midpoint_spread": t.identity * 0.1,
        "quartic": t.identity * 10,
        "axes_collinear": t.identity * 0.1,
        "perpendicular": t.identity * 0.1,
        "outer_top": t.identity,
        "outer_bottom": t.identity,
        "rectangle": t.identity,
    }
    worst = {k: max(abs(getattr(r, k)) for r in reports) for k in limits}
    ok = all(worst[k] < limits[k] for k in limits)
    angle = math.degrees(crossing_angle(B))

    payload = {
        "ab": B.ratio,
        "u_max": bowtie_umax(B),
        "crossing_angle_deg": angle,
        "perimeter": 4 * B.a**2 / B.c,
        "samples": [r.as_dict() for r in reports],
        "worst": worst,
        "limits": limits,
        "identities_hold": ok,
        "tolerances": _tol_dict(t),
    }
    write_json(cfg.out.with_suffix(".json"), payload)

    u = cfg.param if cfg.param is not None else 0.37 * bowtie_umax(B)
    orbit = family_orbit(B, topo, u)
    fig = figure_for(B, extent=2.2 * B.a, banner=version_stamp())
    draw_conic(fig, B, orbit.caustic, COLORS["caustic"])
    try:
        circ = bowtie_circles(B, u)
        fig.circle(circ.C, circ.R, COLORS["circle"], dash="4 2")
        fig.circle(circ.Cp, circ.Rp, COLORS["circle2"], dash="4 2")
        ctx = InversionContext(1, 1.0)
        fig.circle(ctx.center(B), 1.0, "#000000", dash="2 2")
        from .invariants import outer_polygon

        outer = outer_polygon(orbit)
        fig.polygon(outer, COLORS["outer"], width=1.0)
        fig.polygon(invert_polygon(B, ctx, orbit.vertices), COLORS["inversive"], width=1.5, closed=False)
        fig.polygon(invert_polygon(B, ctx, outer), COLORS["inversive"], width=1.0, dash="1 2", closed=False)
    except (BowtieDegenerate, DegenerateError):
        pass
    for half in _quartic_branch(B):
        fig.polygon(half, COLORS["quartic"], width=1.0, closed=False)
    fig.dots(midpoints(orbit), COLORS["quartic"], 3.0)
    fig.polygon(orbit.vertices, COLORS["orbit"], width=2.0)
    fig.save(cfg.out.with_suffix(".svg"))

    print(f"bowtie a/b={B.ratio:g}: {len(reports)} members, crossing angle {angle:.6f} deg, "
          f"identities {'hold' if ok else 'FAIL'}")
    for k in limits:
        print(f"  {k:20s} {worst[k]:.2e} (limit {limits[k]:.0e})")
    return EXIT_OK if ok else EXIT_CLAIM


# ----------------------------------------------------------------------- main


def _floats(s: str) -> list[float]:
    try:
        return [float(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ebilliards", description="Periodic orbits and invariants of elliptic billiards")
    p.add_argument("--version", action="version", version=version_stamp())
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_default=3):
        sp.add_argument("--ab", type=float, default=1.5, help="aspect ratio a/b")
        sp.add_argument("--b", type=float, default=1.0, help="minor semi-axis (default 1)")
        sp.add_argument("--n", type=int, default=n_default, help="period N (3..8)")
        sp.add_argument("--topology", default="simple", help="simple, type1, type2 or type3")
        sp.add_argument("--rho", type=float, default=1.0, help="inversion radius")
        sp.add_argument("--samples", type=int, default=16)
        sp.add_argument("-o", "--out", type=Path, default=None, help="output path prefix")

    o = sub.add_parser("orbit", help="construct one orbit; write JSON and SVG")
    common(o)
    o.add_argument("--t", type=float, default=None, help="boundary parameter of P1")
    o.add_argument("--u", type=float, default=None, help="bowtie parameter (N=4 type1)")
    o.add_argument("--show", default="outer", help="extra polygons: outer,inner,inversive")

    s = sub.add_parser("sweep", help="measure invariants along a family; write CSV and JSON")
    common(s)
    s.add_argument("--codes", default=None, help="comma-separated codes, e.g. k804,k106")
    s.add_argument("--offset", type=float, default=0.0, help="shift of the sample grid, in samples")

    sc = sub.add_parser("scan", help="one code across several aspect ratios")
    common(sc)
    sc.add_argument("--code", required=True)
    sc.add_argument("--grid", type=_floats, required=True, help="comma-separated a/b values")

    bw = sub.add_parser("bowtie", help="self-intersected 4-periodic identities; write JSON and SVG")
    common(bw, n_default=4)
    bw.add_argument("--count", type=int, default=50, help="members in the u-sweep")
    bw.add_argument("--u", type=float, default=None, help="member drawn in the SVG")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = Tolerances.from_env()
        param = getattr(args, "u", None)
        if param is None:
            param = getattr(args, "t", None)
        topo_name = "type1" if args.command == "bowtie" else args.topology
        n = 4 if args.command == "bowtie" else args.n
        cfg = RunConfig(args.ab, args.b, n, topo_name, args.samples, args.rho, param,
                        args.out or Path(args.command), tol)
        cfg.topo  # validates the topology name
        if args.command == "orbit":
            return cmd_orbit(cfg, [x.strip() for x in args.show.split(",") if x.strip()])
        if args.command == "sweep":
            return cmd_sweep(cfg, parse_codes(args.codes) if args.codes else None, args.offset)
        if args.command == "scan":
            return cmd_scan(cfg, parse_codes(args.code)[0], args.grid)
        return cmd_bowtie(cfg, args.count)
    except (ConfigError, FamilyNonexistent, GeometryError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
