"""Periodic orbits of the elliptic billiard and their invariants."""

__version__ = "0.1.0"

from .conic import Billiard, ConfocalConic, ConicKind, GeometryError, InversionContext
from .orbits import FamilyNonexistent, Orbit, Tag, Topology, build_orbit, check_orbit, topologies, topology
from .invariants import CODES, closed_form, measure, measure_all
from .sweep import SweepSpec, Thresholds, Verdict, aspect_scan, run_sweep

__all__ = [
    "Billiard",
    "CODES",
    "ConfocalConic",
    "ConicKind",
    "FamilyNonexistent",
    "GeometryError",
    "InversionContext",
    "Orbit",
    "SweepSpec",
    "Tag",
    "Thresholds",
    "Topology",
    "Verdict",
    "aspect_scan",
    "build_orbit",
    "check_orbit",
    "closed_form",
    "measure",
    "measure_all",
    "run_sweep",
    "topologies",
    "topology",
]
