"""Family sweeps: measure invariants along a Poncelet family and classify them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .conic import Billiard, GeometryError, InversionContext
from .invariants import (
    CODES,
    ApplicabilityError,
    DegenerateError,
    DerivedPolygons,
    applicable,
    closed_form_entry,
    has_closed_form,
    measure,
)
from .orbits import FamilyNonexistent, Tag, Topology, caustic_for, family_orbit, family_params, n4_self_caustic


@dataclass(frozen=True)
class Thresholds:
    invariant: float = 1e-7
    variable: float = 1e-3
    # rounding noise on zero-valued sums is ~1e-15 absolute, so the floor must sit well above it
    floor: float = 1e-6
    margin: float = 0.01

    def __post_init__(self):
        if not 0 < self.invariant < self.variable:
            raise ValueError("need 0 < invariant threshold < variable threshold")


class Verdict(str, Enum):
    INVARIANT = "Invariant"
    VARIABLE = "Variable"
    INCONCLUSIVE = "Inconclusive"
    DEGENERATE = "Degenerate"
    NONEXISTENT = "Nonexistent"


# codes reported as varying along the family
KNOWN_VARIABLE = {("k804", 4, Tag.SIMPLE), ("k804", 6, Tag.TYPE2)}


# identities that hold on every family, simple or not
UNIVERSAL = {"k101", "k119"}


def claimed_verdict(code: str, topo: Topology) -> Verdict | None:
    """Expected verdict, or None where nothing is claimed.

    Simple families: every applicable code is invariant except the two known
    variable cases.  Self-intersected families: only codes with a closed form
    and the universal identities.
    """
    if (code, topo.n, topo.tag) in KNOWN_VARIABLE:
        return Verdict.VARIABLE
    if not applicable(code, topo.n):
        return None
    if topo.tag is Tag.SIMPLE or code in UNIVERSAL or has_closed_form(code, topo):
        return Verdict.INVARIANT
    return None


@dataclass(frozen=True)
class SweepSpec:
    billiard: Billiard
    topology: Topology
    codes: tuple[str, ...] = CODES
    samples: int = 16
    offset: float = 0.0
    rho: float = 1.0
    thresholds: Thresholds = field(default_factory=Thresholds)

    def __post_init__(self):
        if self.samples < 8:
            raise ValueError("a sweep needs at least 8 samples")


@dataclass
class CodeStats:
    code: str
    values: list[float]
    verdict: Verdict
    mean: float = math.nan
    max_abs_dev: float = math.nan
    rel_spread: float = math.nan
    closed_form_value: float | None = None
    closed_form_residual: float | None = None
    claimed: Verdict | None = None
    note: str = ""

    @property
    def reproduced(self) -> bool:
        return self.claimed is None or self.verdict == self.claimed

    def as_dict(self) -> dict:
        return {
            "code": self.code,
            "verdict": self.verdict.value,
            "claimed": self.claimed.value if self.claimed else None,
            "mean": self.mean,
            "max_abs_dev": self.max_abs_dev,
            "rel_spread": self.rel_spread,
            "closed_form_value": self.closed_form_value,
            "closed_form_residual": self.closed_form_residual,
            "note": self.note,
        }


@dataclass
class SweepReport:
    ratio: float
    topology: Topology
    params: list[float]
    stats: dict[str, CodeStats]
    thresholds: Thresholds

    @property
    def reproduced(self) -> bool:
        return all(s.reproduced for s in self.stats.values())

    def rows(self):
        """(param, code, value) triples in sample order."""
        for code, s in self.stats.items():
            for p, v in zip(self.params, s.values):
                yield p, code, v

    def as_dict(self) -> dict:
        t = self.thresholds
        return {
            "ab": self.ratio,
            "n": self.topology.n,
            "topology": self.topology.tag.value,
            "samples": len(self.params),
            "thresholds": {"invariant": t.invariant, "variable": t.variable, "floor": t.floor, "margin": t.margin},
            "codes": {c: s.as_dict() for c, s in self.stats.items()},
            "reproduced": self.reproduced,
        }


def classify(values, thresholds: Thresholds) -> tuple[Verdict, float, float, float]:
    v = np.asarray(values, float)
    mean = float(np.mean(v))
    spread = float(np.max(v) - np.min(v))
    rel = spread / max(abs(mean), thresholds.floor)
    dev = float(np.max(np.abs(v - mean)))
    if rel < thresholds.invariant:
        verdict = Verdict.INVARIANT
    elif rel > thresholds.variable:
        verdict = Verdict.VARIABLE
    else:
        verdict = Verdict.INCONCLUSIVE
    return verdict, mean, dev, rel


def existence_check(billiard: Billiard, topo: Topology) -> None:
    """Raise FamilyNonexistent with the violated constraint."""
    if topo.n == 4 and topo.tag is Tag.TYPE1:
        n4_self_caustic(billiard)
    else:
        caustic_for(billiard, topo)


def run_sweep(spec: SweepSpec, force: bool | None = None) -> SweepReport:
    """Measure ``spec.codes`` at ``spec.samples`` family members.

    Codes outside their parity class are skipped unless ``force`` is set;
    by default they are forced only when requested explicitly.
    """
    B, topo = spec.billiard, spec.topology
    existence_check(B, topo)
    if force is None:
        force = tuple(spec.codes) != tuple(CODES)
    codes = [c for c in spec.codes if force or applicable(c, topo.n)]
    params = family_params(B, topo, spec.samples, spec.thresholds.margin, spec.offset)
    ctx = InversionContext(1, spec.rho)

    values: dict[str, list[float]] = {c: [] for c in codes}
    degenerate: dict[str, str] = {}
    for t in params:
        orbit = family_orbit(B, topo, float(t))
        try:
            derived = DerivedPolygons.of(orbit, spec.rho)
        except DegenerateError as e:
            derived = None
            degen_msg = str(e)
        for c in codes:
            if c in degenerate:
                continue
            try:
                if derived is None:
                    raise DegenerateError(degen_msg)
                values[c].append(measure(c, orbit, derived, ctx, force=True))
            except DegenerateError as e:
                degenerate[c] = str(e)

    stats: dict[str, CodeStats] = {}
    for c in codes:
        claimed = claimed_verdict(c, topo)
        if c in degenerate:
            stats[c] = CodeStats(c, [], Verdict.DEGENERATE, claimed=claimed, note=degenerate[c])
            continue
        verdict, mean, dev, rel = classify(values[c], spec.thresholds)
        s = CodeStats(c, values[c], verdict, mean, dev, rel, claimed=claimed)
        if has_closed_form(c, topo):
            entry = closed_form_entry(c, topo)
            want = entry.value(B, spec.rho)
            s.closed_form_value = want
            s.closed_form_residual = float(np.max(np.abs(np.asarray(values[c]) - want))) / max(1.0, abs(want))
            s.note = entry.note
        stats[c] = s
    return SweepReport(B.ratio, topo, [float(p) for p in params], stats, spec.thresholds)


@dataclass
class ScanEntry:
    ratio: float
    report: SweepReport | None
    reason: str = ""

    @property
    def verdict(self) -> Verdict | None:
        return None if self.report is None else next(iter(self.report.stats.values())).verdict


def aspect_scan(code: str, topo: Topology, ratios, samples: int = 16, rho: float = 1.0,
                thresholds: Thresholds | None = None) -> list[ScanEntry]:
    """One single-code sweep per aspect ratio; outside the existence window the entry is Nonexistent."""
    out = []
    for r in ratios:
        B = Billiard.from_ratio(float(r))
        spec = SweepSpec(B, topo, (code,), samples, rho=rho, thresholds=thresholds or Thresholds())
        try:
            out.append(ScanEntry(float(r), run_sweep(spec)))
        except FamilyNonexistent as e:
            out.append(ScanEntry(float(r), None, f"{Verdict.NONEXISTENT.value}: {e}"))
        except GeometryError as e:
            out.append(ScanEntry(float(r), None, f"{Verdict.DEGENERATE.value}: {e}"))
    return out


__all__ = [
    "ApplicabilityError",
    "CodeStats",
    "ScanEntry",
    "SweepReport",
    "SweepSpec",
    "Thresholds",
    "Verdict",
    "aspect_scan",
    "claimed_verdict",
    "classify",
    "existence_check",
    "run_sweep",
]
