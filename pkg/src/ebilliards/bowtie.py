"""Geometry of the self-intersected 4-periodic ("bowtie") family.

The family is parametrized by P1 = (a u, b sqrt(1 - u^2)), |u| <= u_max.
Its vertices and both foci lie on one circle, the outer-polygon vertices
and foci on another; most identities below follow from those two circles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import ellipe

from .conic import (
    Billiard,
    GeometryError,
    InversionContext,
    intersect_lines,
    invert_point,
    invert_polygon,
    signed_area,
    tangent_line,
    turn_signed_cosines,
)
from .invariants import outer_polygon
from .orbits import Orbit, bowtie_umax, n4_self_caustic, n4_self_orbit


class BowtieDegenerate(GeometryError):
    pass


@dataclass(frozen=True)
class Circle:
    center: np.ndarray
    radius: float

    def deviation(self, pts) -> float:
        """Largest | |p - center| - radius | over ``pts``."""
        pts = np.atleast_2d(np.asarray(pts, float))
        return float(np.max(np.abs(np.hypot(*(pts - self.center).T) - self.radius)))

    def power(self, p) -> float:
        d = np.asarray(p, float) - self.center
        return float(d @ d) - self.radius**2


@dataclass(frozen=True)
class BowtieCircles:
    C: np.ndarray
    R: float
    Cp: np.ndarray
    Rp: float

    @property
    def vertex_circle(self) -> Circle:
        return Circle(self.C, self.R)

    @property
    def outer_circle(self) -> Circle:
        return Circle(self.Cp, self.Rp)


def symmetric_u(billiard: Billiard) -> float:
    """u of the member whose diagonals pass through the centre (sides vertical)."""
    return math.sqrt(billiard.a**2 - 2 * billiard.b**2) / billiard.c


def _check_u(billiard: Billiard, u: float) -> float:
    umax = bowtie_umax(billiard)
    if abs(u) >= umax:
        raise BowtieDegenerate(f"|u| = {abs(u):.6g} reaches the doubled-up limit {umax:.6g}")
    return math.sqrt(1 - u * u)


def bowtie_circles(billiard: Billiard, u: float) -> BowtieCircles:
    """Circle through the vertices and foci, and circle through the outer vertices and foci.

    At u^2 = (a^2 - 2b^2)/c^2 the outer circle turns into the x-axis and
    ``Rp`` is infinite.
    """
    a, b, c2 = billiard.a, billiard.b, billiard.c2
    w = _check_u(billiard, u)
    C = np.array([0.0, (c2 * u * u - a * a + 2 * b * b) / (2 * b * w)])
    R = (a * a - c2 * u * u) / (2 * b * w)
    den = a * a + (u * u - 2) * c2
    if abs(den) < 1e-14 * a * a:
        raise BowtieDegenerate("outer circle degenerates to the major axis")
    Cp = np.array([0.0, -2 * b * c2 * w / den])
    Rp = abs(billiard.c * (c2 * u * u - a * a) / den)
    return BowtieCircles(C, R, Cp, Rp)


def fit_circle(pts) -> Circle:
    """Algebraic least-squares circle through ``pts``."""
    pts = np.asarray(pts, float)
    A = np.column_stack([2 * pts, np.ones(len(pts))])
    rhs = np.sum(pts * pts, axis=1)
    (cx, cy, k), *_ = np.linalg.lstsq(A, rhs, rcond=None)
    return Circle(np.array([cx, cy]), math.sqrt(k + cx * cx + cy * cy))


# ----------------------------------------------------------------- identities


@dataclass(frozen=True)
class BowtieReport:
    u: float
    R: float
    Rp: float
    concyclic_vertices: float  # deviation / R
    concyclic_outer: float  # deviation / R'
    fit_center_gap: float  # printed C vs least-squares fit, / R
    harmonic: float  # relative error of 1/R^2 + 1/R'^2 = 1/c^2
    power_C: float  # |power(O) - (b^2 - a^2)|
    power_Cp: float
    midpoint_spread: float
    quartic: float
    axes_collinear: float
    perpendicular: float
    outer_top: float
    outer_bottom: float
    rectangle: float
    turn_cos_sum: float
    area: float

    def as_dict(self) -> dict:
        return {k: float(v) for k, v in self.__dict__.items()}


def midpoints(orbit: Orbit) -> np.ndarray:
    v = orbit.vertices
    return 0.5 * (v + np.roll(v, -1, axis=0))


def midpoint_quartic(billiard: Billiard, p) -> tuple[float, float]:
    """Value of the midpoint quartic at p and the sum of its terms' magnitudes."""
    a, b, c2 = billiard.a, billiard.b, billiard.c2
    x, y = p
    t1 = c2 * (b * b * x * x + a * a * y * y) ** 2
    t2 = b**4 * a * a * (a * a - 2 * b * b) * x * x
    t3 = b**4 * a**4 * y * y
    return t1 - t2 + t3, abs(t1) + abs(t2) + abs(t3)


def quartic_gradient(billiard: Billiard, p) -> np.ndarray:
    a, b, c2 = billiard.a, billiard.b, billiard.c2
    x, y = p
    s = b * b * x * x + a * a * y * y
    gx = 4 * c2 * s * b * b * x - 2 * b**4 * a * a * (a * a - 2 * b * b) * x
    gy = 4 * c2 * s * a * a * y + 2 * b**4 * a**4 * y
    return np.array([gx, gy])


def quartic_touches_caustic(billiard: Billiard) -> tuple[float, float]:
    """(value residual, normal misalignment) of the quartic at the caustic vertex."""
    h = n4_self_caustic(billiard)
    p = np.array([h.a2, 0.0])
    val, scale = midpoint_quartic(billiard, p)
    g = quartic_gradient(billiard, p)
    # the caustic normal at its vertex is horizontal
    mis = abs(g[1]) / max(np.linalg.norm(g), 1e-300)
    return abs(val) / scale, mis


def _collinearity(pts) -> float:
    """Smallest singular value over the largest: 0 for collinear points."""
    centred = np.asarray(pts, float) - np.mean(pts, axis=0)
    s = np.linalg.svd(centred, compute_uv=False)
    return float(s[-1] / s[0])


def radical_axes(billiard: Billiard, u: float, ctx: InversionContext | None = None) -> dict:
    """Lines carrying the inversive images of the orbit and of its outer polygon."""
    ctx = ctx or InversionContext(1, 1.0)
    orbit = n4_self_orbit(billiard, u)
    p_inv = invert_polygon(billiard, ctx, orbit.vertices)
    q_inv = invert_polygon(billiard, ctx, outer_polygon(orbit))
    dirs = []
    for pts in (p_inv, q_inv):
        centred = pts - pts.mean(axis=0)
        _, _, vt = np.linalg.svd(centred)
        dirs.append(vt[0])
    cosang = abs(float(dirs[0] @ dirs[1]))
    return {
        "axis1": (p_inv.mean(axis=0), dirs[0]),
        "axis2": (q_inv.mean(axis=0), dirs[1]),
        "angle": math.acos(min(1.0, cosang)),
        "collinear1": _collinearity(p_inv),
        "collinear2": _collinearity(q_inv),
    }


def analyze(billiard: Billiard, u: float) -> BowtieReport:
    a, b, c = billiard.a, billiard.b, billiard.c
    orbit = n4_self_orbit(billiard, u)
    circ = bowtie_circles(billiard, u)
    foci = billiard.foci
    outer = outer_polygon(orbit)
    six = np.vstack([orbit.vertices, foci])
    six_outer = np.vstack([outer, foci])
    fit = fit_circle(six)

    mids = midpoints(orbit)
    quart = max(abs(v) / s for v, s in (midpoint_quartic(billiard, m) for m in mids))

    f1 = foci[0]
    ax = radical_axes(billiard, u)
    perp = abs(float((circ.C - f1) @ (circ.Cp - f1))) / (circ.R * circ.Rp)

    # outer sides lie on the tangents at P_i; opposite tangents meet on the y-axis
    T = [tangent_line(billiard, p) for p in orbit.vertices]
    top = intersect_lines(T[0], T[2])
    bottom = intersect_lines(T[1], T[3])
    want_top = np.array([0.0, circ.C[1] + circ.R])
    want_bottom = np.array([0.0, circ.C[1] - circ.R])

    iC, iCp, iO = (invert_point(f1, 1.0, p) for p in (circ.C, circ.Cp, np.zeros(2)))
    rect = max(
        float(np.linalg.norm(iC + iCp - f1 - iO)),
        abs(np.linalg.norm(iC - f1) - 1 / circ.R),
        abs(np.linalg.norm(iCp - f1) - 1 / circ.Rp),
        abs(np.linalg.norm(iO - f1) - 1 / c),
    )

    return BowtieReport(
        u=u,
        R=circ.R,
        Rp=circ.Rp,
        concyclic_vertices=circ.vertex_circle.deviation(six) / circ.R,
        concyclic_outer=circ.outer_circle.deviation(six_outer) / circ.Rp,
        fit_center_gap=float(np.linalg.norm(fit.center - circ.C)) / circ.R,
        harmonic=abs((1 / circ.R**2 + 1 / circ.Rp**2) * billiard.c2 - 1),
        power_C=abs(circ.vertex_circle.power((0, 0)) - (b * b - a * a)),
        power_Cp=abs(circ.outer_circle.power((0, 0)) - (b * b - a * a)),
        midpoint_spread=float(np.ptp(mids[:, 1])),
        quartic=quart,
        axes_collinear=max(ax["collinear1"], ax["collinear2"]),
        perpendicular=perp,
        outer_top=float(np.linalg.norm(top - want_top)),
        outer_bottom=float(np.linalg.norm(bottom - want_bottom)),
        rectangle=rect,
        turn_cos_sum=float(np.sum(turn_signed_cosines(orbit.vertices))),
        area=signed_area(orbit.vertices),
    )


def u_grid(billiard: Billiard, count: int = 50, margin: float = 0.01, gap: float = 1e-3) -> np.ndarray:
    """Points across (-u_max, u_max) avoiding both doubled-up members and the flat outer circle."""
    umax = bowtie_umax(billiard)
    us = np.linspace(-(1 - margin) * umax, (1 - margin) * umax, count + 8)
    bad = [0.0, symmetric_u(billiard), -symmetric_u(billiard)]
    keep = [u for u in us if min(abs(u - x) for x in bad) > gap * umax]
    return np.array(keep[:count])


def sweep(billiard: Billiard, count: int = 50) -> list[BowtieReport]:
    return [analyze(billiard, float(u)) for u in u_grid(billiard, count)]


# ------------------------------------------------------------- special ratios


def crossing_angle(billiard: Billiard) -> float:
    """Angle between the directed sides P1P2 and P3P4 at the symmetric member."""
    o = n4_self_orbit(billiard, symmetric_u(billiard))
    v = o.vertices
    d1 = v[1] - v[0]
    d2 = v[3] - v[2]
    cosang = float(d1 @ d2) / (np.linalg.norm(d1) * np.linalg.norm(d2))
    return math.acos(max(-1.0, min(1.0, cosang)))


def ellipse_perimeter(a: float, b: float) -> float:
    """4 a E(m) with m = 1 - (b/a)^2, a >= b."""
    a, b = max(a, b), min(a, b)
    return 4 * a * ellipe(1 - (b / a) ** 2)


def right_angle_ratio(lo: float = 1.42, hi: float = 3.0) -> float:
    f = lambda r: crossing_angle(Billiard.from_ratio(r)) - math.pi / 2
    return brentq(f, lo, hi, xtol=1e-14)


def equal_perimeter_ratio(lo: float = 1.42, hi: float = 3.0) -> float:
    def f(r):
        B = Billiard.from_ratio(r)
        return 4 * B.a**2 / B.c - ellipse_perimeter(B.a, B.b)

    return brentq(f, lo, hi, xtol=1e-14)


def special_ratios() -> dict[str, float]:
    return {"right_angle_ab": right_angle_ratio(), "equal_perimeter_ab": equal_perimeter_ratio()}
