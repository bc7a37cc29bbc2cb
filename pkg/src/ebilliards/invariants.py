"""Measured invariants of billiard N-periodics and their closed forms.

Codes follow the numbering of the published invariant catalogue (k101,
k102, ...).  ``measure`` computes the literal quantity from vertex
coordinates; ``closed_form`` evaluates a printed expression in (a, b) or
(J, L) for the topologies where one is known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import polys
from .conic import (
    Billiard,
    GeometryError,
    InversionContext,
    Line,
    curvature,
    intersect_lines,
    invert_polygon,
    joachimsthal_from_caustic,
    perimeter,
    signed_area,
    tangency_point,
    tangent_line,
    vertex_cosines,
)
from .orbits import Orbit, Tag, Topology, build_orbit, caustic_for, closed_form_perimeter, topology
from . import polyroots as pr
from .polyroots import Select, real_roots


class ApplicabilityError(GeometryError):
    """Code is not defined for this N."""


class DegenerateError(GeometryError):
    """Quantity needs division by (or is built on) a vanishing area."""


class NotDerived(KeyError):
    """No closed form is known for this (code, topology)."""


CODES = ("k101", "k102", "k103", "k104", "k105", "k106", "k110", "k119",
         "k802a", "k803", "k804", "k805a", "k806", "k807")
EXTRA_CODES = ("k109",)

_VALID: dict[str, Callable[[int], bool]] = {
    "k101": lambda n: True,
    "k102": lambda n: True,
    "k103": lambda n: n % 2 == 1,
    "k104": lambda n: True,
    "k105": lambda n: n % 2 == 1,
    "k106": lambda n: n % 2 == 0,
    "k110": lambda n: n % 2 == 0,
    "k119": lambda n: True,
    "k802a": lambda n: True,
    "k803": lambda n: True,
    "k804": lambda n: n != 4,
    "k805a": lambda n: n % 4 == 0,
    "k806": lambda n: n % 4 == 2,
    "k807": lambda n: n % 2 == 1,
    "k109": lambda n: n == 3,
}

DESCRIPTION = {
    "k101": "sum cos(theta_i)",
    "k102": "prod cos(theta'_i), outer polygon",
    "k103": "A'/A, outer over orbit area",
    "k104": "sum cos(2 theta'_i), outer polygon",
    "k105": "prod sin(theta_i/2)",
    "k106": "A' A",
    "k110": "A A'', inner polygon",
    "k119": "sum kappa_i^(2/3)",
    "k802a": "sum 1/d_i, distances to focus",
    "k803": "perimeter of focus-inversive polygon",
    "k804": "sum cos of focus-inversive angles",
    "k805a": "A times inversive area",
    "k806": "A over inversive area",
    "k807": "product of both focus-inversive areas",
    "k109": "A/A'', orbit over inner polygon area (N=3)",
}


def applicable(code: str, n: int) -> bool:
    try:
        return _VALID[code](n)
    except KeyError:
        raise ApplicabilityError(f"unknown invariant code {code!r}") from None


def parse_codes(spec: str | None) -> list[str]:
    if not spec:
        return list(CODES)
    out = [c.strip().lower() for c in spec.split(",") if c.strip()]
    for c in out:
        if c not in _VALID:
            raise ApplicabilityError(f"unknown invariant code {c!r}")
    return out


# ------------------------------------------------------------------ polygons


def outer_polygon(orbit: Orbit) -> np.ndarray:
    """Vertex i is where the billiard tangents at P_i and P_{i+1} meet."""
    B = orbit.billiard
    lines = [tangent_line(B, p) for p in orbit.vertices]
    n = len(lines)
    try:
        return np.array([intersect_lines(lines[i], lines[(i + 1) % n]) for i in range(n)])
    except GeometryError as e:
        raise DegenerateError("outer polygon has a vertex at infinity") from e


def inner_polygon(orbit: Orbit) -> np.ndarray:
    """Touch points of the sides P_i P_{i+1} with the caustic."""
    v = orbit.vertices
    n = len(v)
    return np.array([tangency_point(orbit.caustic, Line.through(v[i], v[(i + 1) % n]), tol=1e-6)
                     for i in range(n)])


@dataclass(frozen=True)
class DerivedPolygons:
    outer: np.ndarray
    inner: np.ndarray
    inversive1: np.ndarray
    inversive2: np.ndarray

    @classmethod
    def of(cls, orbit: Orbit, rho: float = 1.0) -> "DerivedPolygons":
        B = orbit.billiard
        return cls(
            outer_polygon(orbit),
            inner_polygon(orbit),
            invert_polygon(B, InversionContext(1, rho), orbit.vertices),
            invert_polygon(B, InversionContext(2, rho), orbit.vertices),
        )


def _area_scale(poly: np.ndarray) -> float:
    return perimeter(poly) ** 2


def _nonzero_area(poly: np.ndarray, what: str, rel: float = 1e-10) -> float:
    area = signed_area(poly)
    if abs(area) <= rel * _area_scale(poly):
        raise DegenerateError(f"{what} has zero signed area")
    return area


def _collinear(poly: np.ndarray, rel: float = 1e-9) -> bool:
    centred = poly - poly.mean(axis=0)
    s = np.linalg.svd(centred, compute_uv=False)
    return s[-1] <= rel * s[0]


def _inversive_area(poly: np.ndarray) -> float:
    if _collinear(poly):
        raise DegenerateError("focus-inversive polygon is collinear")
    return signed_area(poly)


def measure(
    code: str,
    orbit: Orbit,
    derived: DerivedPolygons | None = None,
    ctx: InversionContext | None = None,
    force: bool = False,
) -> float:
    """Literal value of ``code`` computed from the orbit's coordinates.

    ``force`` skips the parity check (used to exhibit that a code is
    variable where it is not claimed).
    """
    n = orbit.n
    if not force and not applicable(code, n):
        raise ApplicabilityError(f"{code} is not defined for N={n}")
    ctx = ctx or InversionContext()
    if derived is None:
        derived = DerivedPolygons.of(orbit, ctx.rho)
    B, v = orbit.billiard, orbit.vertices
    inv = derived.inversive1 if ctx.focus == 1 else derived.inversive2

    if code == "k101":
        return float(np.sum(vertex_cosines(v)))
    if code == "k102":
        return float(np.prod(vertex_cosines(derived.outer)))
    if code == "k103":
        return signed_area(derived.outer) / _nonzero_area(v, "orbit")
    if code == "k104":
        c = vertex_cosines(derived.outer)
        return float(np.sum(2 * c * c - 1))
    if code == "k105":
        c = vertex_cosines(v)
        return float(np.prod(np.sqrt((1 - c) / 2)))
    if code == "k106":
        return signed_area(derived.outer) * signed_area(v)
    if code == "k110":
        return signed_area(v) * signed_area(derived.inner)
    if code == "k109":
        return signed_area(v) / _nonzero_area(derived.inner, "inner polygon")
    if code == "k119":
        return float(sum(curvature(B, p) ** (2.0 / 3.0) for p in v))
    f = ctx.center(B)
    if code == "k802a":
        return float(sum(1.0 / np.linalg.norm(p - f) for p in v))
    if code == "k803":
        return perimeter(inv)
    if code == "k804":
        return float(np.sum(vertex_cosines(inv)))
    if code == "k805a":
        return signed_area(v) * _inversive_area(inv)
    if code == "k806":
        return signed_area(v) / _nonzero_area(inv, "focus-inversive polygon")
    if code == "k807":
        return _inversive_area(derived.inversive1) * _inversive_area(derived.inversive2)
    raise ApplicabilityError(f"unknown invariant code {code!r}")


def measure_all(orbit: Orbit, codes=None, rho: float = 1.0) -> dict[str, float | Exception]:
    """Measure every applicable code; degenerate ones map to their exception."""
    ctx = InversionContext(1, rho)
    derived = DerivedPolygons.of(orbit, rho)
    out: dict[str, float | Exception] = {}
    for code in codes or CODES:
        if not applicable(code, orbit.n):
            continue
        try:
            out[code] = measure(code, orbit, derived, ctx)
        except DegenerateError as e:
            out[code] = e
    return out


# -------------------------------------------------------------- closed forms


def k119_universal(orbit: Orbit) -> float:
    """sum kappa^(2/3) = L / (2 J (ab)^(4/3)), valid for every orbit."""
    B = orbit.billiard
    return orbit.L / (2 * orbit.J * (B.a * B.b) ** (4.0 / 3.0))


@lru_cache(maxsize=512)
def _jl_cached(a: float, b: float, n: int, tag: Tag) -> tuple[float, float]:
    B = Billiard(a, b)
    topo = topology(n, tag)
    J = joachimsthal_from_caustic(B, caustic_for(B, topo).a2)
    try:
        L = closed_form_perimeter(B, topo)
    except KeyError:
        L = build_orbit(B, n, tag).L
    return J, L


def joachimsthal_and_perimeter(billiard: Billiard, topo: Topology) -> tuple[float, float]:
    """J from the caustic and L from its closed form (or a constructed orbit)."""
    return _jl_cached(billiard.a, billiard.b, topo.n, topo.tag)


def _sextic(poly_fn, selector: Select, negate: bool = False):
    def f(B: Billiard, rho: float) -> float:
        r = selector.choose(real_roots(poly_fn(B)))
        return -r if negate else r
    return f


@dataclass(frozen=True)
class ClosedForm:
    code: str
    topology: Topology
    kind: str  # "ab", "jl", "ab+jl" or "root"
    ab: Callable[[Billiard, float], float] | None = None
    jl: Callable[[float, float, float], float] | None = None
    note: str = ""
    # literature expression, kept where it disagrees with the measured invariant
    printed: Callable[[Billiard, float], float] | None = None

    def value(self, billiard: Billiard, rho: float = 1.0) -> float:
        if self.ab is not None:
            return self.ab(billiard, rho)
        J, L = joachimsthal_and_perimeter(billiard, self.topology)
        return self.jl(J, L, rho)

    def value_jl(self, billiard: Billiard, rho: float = 1.0) -> float:
        if self.jl is None:
            raise NotDerived(f"{self.code} {self.topology} has no (J, L) form")
        J, L = joachimsthal_and_perimeter(billiard, self.topology)
        return self.jl(J, L, rho)


def _delta(B):
    return B.delta


def _build_registry() -> dict[tuple[str, int, Tag], ClosedForm]:
    S, I, II = Tag.SIMPLE, Tag.TYPE1, Tag.TYPE2
    reg: list[ClosedForm] = []

    def add(code, n, tag, ab=None, jl=None, note="", printed=None):
        kind = "+".join(k for k, f in (("ab", ab), ("jl", jl)) if f is not None)
        reg.append(ClosedForm(code, topology(n, tag), kind, ab, jl, note, printed))

    # N = 3
    add("k102", 3, S, jl=lambda J, L, r: J * L / 4 - 1)
    add("k103", 3, S, jl=lambda J, L, r: 2 / (J * L - 4))
    add("k104", 3, S,
        ab=lambda B, r: (B.a**2 + B.b**2) * (B.a**2 + B.b**2 - 2 * B.delta) / B.c2**2,
        jl=lambda J, L, r: 3 - J * L)
    add("k105", 3, S, jl=lambda J, L, r: J * L / 4 - 1)
    add("k119", 3, S,
        ab=lambda B, r: (B.a**2 + B.b**2 + B.delta) / (B.a * B.b) ** (4 / 3),
        jl=lambda J, L, r: (2 * J**3 * L / (J * L - 4) ** 2) ** (1 / 3))
    add("k802a", 3, S,
        ab=lambda B, r: (B.a**2 + B.b**2 + B.delta) / (B.a * B.b**2),
        jl=lambda J, L, r: J * math.sqrt(2) * math.sqrt(J * L + math.sqrt(9 - 2 * J * L) - 3) / (J * L - 4))
    add("k803", 3, S,
        ab=lambda B, r: r * r * math.sqrt(
            (8 * B.a**4 + 4 * B.a**2 * B.b**2 + 2 * B.b**4) * B.delta
            + 8 * B.a**6 + 3 * B.a**2 * B.b**4 + 2 * B.b**6) / (B.a**2 * B.b**2),
        note="inversion radius enters squared")
    add("k804", 3, S, ab=lambda B, r: B.delta * (B.a**2 + B.c2 - B.delta) / (B.a**2 * B.c2))
    add("k807", 3, S,
        ab=lambda B, r: r**8 / (8 * B.a**8 * B.b**2) * (
            (B.a**4 + 2 * B.a**2 * B.b**2 + 4 * B.b**4) * B.delta
            + B.a**6 + 1.5 * B.a**4 * B.b**2 + 4 * B.b**6))

    # N = 4
    add("k102", 4, S, ab=lambda B, r: 0.0)
    add("k104", 4, S, ab=lambda B, r: -4.0)
    add("k106", 4, S, ab=lambda B, r: 8 * B.a**2 * B.b**2)
    # 8, not 2: at P1 = (a, 0) the orbit is a rhombus of area 2ab and the inner
    # polygon a rectangle of area 4 a^3 b^3 / (a^2 + b^2)^2
    add("k110", 4, S, ab=lambda B, r: 8 * B.a**4 * B.b**4 / (B.a**2 + B.b**2) ** 2,
        note="corrected by a factor 4",
        printed=lambda B, r: 2 * B.a**4 * B.b**4 / (B.a**2 + B.b**2) ** 2)
    add("k119", 4, S, ab=lambda B, r: 2 * (B.a**2 + B.b**2) / (B.a * B.b) ** (4 / 3))
    add("k802a", 4, S, ab=lambda B, r: 2 * (B.a**2 + B.b**2) / (B.a * B.b**2))
    add("k803", 4, S, ab=lambda B, r: 4 * r * r * math.sqrt(B.a**2 + B.b**2) / B.b**2)
    add("k805a", 4, S, ab=lambda B, r: 4 * r**4)

    # N = 5, roots of sextics
    for tag, picks in (
        (S, {"k102": (polys.n5_k102_poly, pr.largest_negative(), False),
             "k103": (polys.n5_k103_poly, pr.smallest_greater_than(1.0), False),
             "k104": (polys.n5_k104_poly, pr.largest_negative(), False),
             "k105": (polys.n5_k105_poly, pr.largest_positive(), False)}),
        (I, {"k102": (polys.n5_k102_poly, pr.largest_positive(), False),
             "k103": (polys.n5_k103_poly, pr.largest_greater_than(1.0), False),
             "k104": (polys.n5_k104_poly, pr.smallest_positive(), False),
             "k105": (polys.n5_k105_poly, pr.largest_negative(), True)}),
    ):
        for code, (fn, sel, neg) in picks.items():
            reg.append(ClosedForm(code, topology(5, tag), "root", _sextic(fn, sel, neg)))

    # N = 6 simple
    add("k102", 6, S,
        ab=lambda B, r: B.a**2 * B.b**2 / (4 * (B.a + B.b) ** 4),
        jl=lambda J, L, r: (J * L - 4) ** 2 / 64)
    add("k104", 6, S, jl=lambda J, L, r: J * L - 6)
    add("k106", 6, S,
        ab=lambda B, r: 4 * B.b**2 * (2 * B.a + B.b) * B.a**2 * (B.a + 2 * B.b) / (B.a + B.b) ** 2,
        jl=lambda J, L, r: -(J * L - 12) * (J * L - 4) ** 2 / (16 * J**4))
    add("k110", 6, S,
        ab=lambda B, r: 4 * B.a**3 * B.b**3 * (2 * B.a + B.b) ** 2 * (B.a + 2 * B.b) ** 2 / (B.a + B.b) ** 6,
        jl=lambda J, L, r: -(J * L - 12) ** 2 * (J * L - 4) ** 3 / (256 * J**4))
    add("k119", 6, S, jl=lambda J, L, r: (2**5 * J**5 * L**3 / (J * L - 4) ** 4) ** (1 / 3))
    add("k802a", 6, S,
        ab=lambda B, r: 2 * (B.a**2 + B.a * B.b + B.b**2) / (B.a * B.b**2),
        jl=lambda J, L, r: 4 * J**2 * L * (1 + math.sqrt(J * L - 3)) / (J * L - 4) ** 2)
    add("k803", 6, S, ab=lambda B, r: 2 * r * r * (2 * B.a**2 + 2 * B.a * B.b - B.b**2) / (B.a * B.b**2))
    add("k806", 6, S, ab=lambda B, r: 4 * r**-4 * B.a**3 * B.b**4 / ((2 * B.a - B.b) * (B.a + B.b) ** 2))

    # N = 6 type I
    add("k102", 6, I,
        ab=lambda B, r: B.a**2 * B.b**2 / (4 * (B.a - B.b) ** 4),
        jl=lambda J, L, r: (J * L - 4) ** 2 / 64)
    add("k104", 6, I,
        ab=lambda B, r: -2 * (B.a**2 - 4 * B.a * B.b + B.b**2) / (B.a - B.b) ** 2,
        jl=lambda J, L, r: J * L - 6)
    add("k106", 6, I,
        ab=lambda B, r: 4 * B.a**2 * B.b**2 * (B.a - 2 * B.b) * (2 * B.a - B.b) / (B.a - B.b) ** 2,
        jl=lambda J, L, r: -(J * L - 12) * (J * L - 4) ** 2 / (16 * J**4))
    add("k110", 6, I,
        ab=lambda B, r: -4 * B.a**3 * B.b**3 * (B.a - 2 * B.b) ** 2 * (2 * B.a - B.b) ** 2 / (B.a - B.b) ** 6,
        jl=lambda J, L, r: -(J * L - 12) ** 2 * (J * L - 4) ** 3 / (2**8 * J**4),
        note="(J, L) form needs a leading minus to match the (a, b) form and the measurement")

    # N = 6 type II
    add("k102", 6, II,
        ab=lambda B, r: B.a**2 * (B.a - B.c) ** 2 / (4 * B.c**4),
        jl=lambda J, L, r: (J * L - 8) ** 2 * (J * L - 4) ** 2 / 1024)
    # measured: JL = 4(a+c)/c and k104 = (J^2 L^2 - 12 JL + 24)/4
    add("k104", 6, II,
        ab=lambda B, r: 2 * (2 * B.a**2 - 2 * B.a * B.c - B.c2) / B.c2,
        jl=lambda J, L, r: ((J * L) ** 2 - 12 * J * L + 24) / 4,
        note="printed expression does not match the measured invariant",
        printed=lambda B, r: 2 * (B.a**2 - B.a * B.c + B.c2) * (B.a**2 - B.a * B.c - B.c2) / B.c2**2)
    add("k106", 6, II, ab=lambda B, r: 0.0)
    add("k110", 6, II, ab=lambda B, r: 0.0)

    # N = 8
    add("k102", 8, S, jl=lambda J, L, r: (J * L - 4) ** 2 * (J * L - 12) ** 2 / 2**12)
    add("k104", 8, S, ab=lambda B, r: 0.0)
    add("k805a", 8, S, ab=lambda B, r: _n8_k805a(B, r), note="evaluated on the axis-symmetric seed")

    return {(f.code, f.topology.n, f.topology.tag): f for f in reg}


def _n8_k805a(B: Billiard, rho: float) -> float:
    from .orbits import n8_seed

    seed = n8_seed(B)
    return measure("k805a", seed, ctx=InversionContext(1, rho))


REGISTRY = _build_registry()


def closed_form_entry(code: str, topo: Topology) -> ClosedForm:
    try:
        return REGISTRY[(code, topo.n, topo.tag)]
    except KeyError:
        raise NotDerived(f"no closed form for {code} on {topo}") from None


def closed_form(code: str, billiard: Billiard, topo: Topology, rho: float = 1.0) -> float:
    return closed_form_entry(code, topo).value(billiard, rho)


def has_closed_form(code: str, topo: Topology) -> bool:
    return (code, topo.n, topo.tag) in REGISTRY


def dual_form_check(code: str, billiard: Billiard, topo: Topology, rho: float = 1.0) -> float:
    """|form_ab - form_JL| / max(1, |form_ab|)."""
    entry = closed_form_entry(code, topo)
    if entry.ab is None or entry.jl is None:
        raise NotDerived(f"{code} on {topo} has a single printed form")
    x = entry.ab(billiard, rho)
    y = entry.value_jl(billiard, rho)
    return abs(x - y) / max(1.0, abs(x))
