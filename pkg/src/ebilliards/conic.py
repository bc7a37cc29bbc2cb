"""Closed-form geometry of the billiard ellipse, its confocal conics and polygons."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

DEFAULT_TOL = 1e-10


class GeometryError(ValueError):
    """Raised when a construction has no valid answer (degenerate input)."""


@dataclass(frozen=True)
class Billiard:
    """Ellipse x^2/a^2 + y^2/b^2 = 1 with a >= b > 0."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.b > 0 and self.a >= self.b):
            raise GeometryError(f"need a >= b > 0, got a={self.a}, b={self.b}")

    @classmethod
    def from_ratio(cls, ab: float) -> "Billiard":
        return cls(float(ab), 1.0)

    @property
    def c2(self) -> float:
        return self.a**2 - self.b**2

    @property
    def c(self) -> float:
        return math.sqrt(self.c2)

    @property
    def delta(self) -> float:
        a2, b2 = self.a**2, self.b**2
        return math.sqrt(a2 * a2 - a2 * b2 + b2 * b2)

    @property
    def ratio(self) -> float:
        return self.a / self.b

    @property
    def foci(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array([-self.c, 0.0]), np.array([self.c, 0.0])

    def f(self, p) -> float:
        x, y = p
        return (x / self.a) ** 2 + (y / self.b) ** 2

    def residual(self, p) -> float:
        return abs(self.f(p) - 1.0)

    def param_of(self, p) -> float:
        """Eccentric angle t of a boundary point, in [0, 2pi)."""
        return math.atan2(p[1] / self.b, p[0] / self.a) % (2 * math.pi)


class ConicKind(Enum):
    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"


@dataclass(frozen=True)
class ConfocalConic:
    """Axis-aligned central conic x^2/a2^2 +- y^2/b2^2 = 1.

    ``a2`` is the semi-axis along x (transverse axis for a hyperbola).
    """

    kind: ConicKind
    a2: float
    b2: float

    @classmethod
    def confocal(cls, billiard: Billiard, a2: float) -> "ConfocalConic":
        """Member of the confocal family with x-semi-axis ``a2`` (0 < a2 < a)."""
        if not 0 < a2 < billiard.a:
            raise GeometryError(f"caustic semi-axis {a2} outside (0, {billiard.a})")
        lam = billiard.a**2 - a2**2
        return cls.from_lambda(billiard, lam)

    @classmethod
    def from_lambda(cls, billiard: Billiard, lam: float) -> "ConfocalConic":
        """x^2/(a^2-lam) + y^2/(b^2-lam) = 1; ellipse for lam<b^2, hyperbola for b^2<lam<a^2."""
        a2sq = billiard.a**2 - lam
        b2sq = billiard.b**2 - lam
        if a2sq <= 0 or lam <= 0:
            raise GeometryError(f"confocal parameter {lam} outside (0, a^2)")
        if b2sq > 0:
            return cls(ConicKind.ELLIPSE, math.sqrt(a2sq), math.sqrt(b2sq))
        if b2sq < 0:
            return cls(ConicKind.HYPERBOLA, math.sqrt(a2sq), math.sqrt(-b2sq))
        raise GeometryError("confocal parameter equals b^2: degenerate caustic")

    @property
    def is_hyperbola(self) -> bool:
        return self.kind is ConicKind.HYPERBOLA

    @property
    def matrix(self) -> np.ndarray:
        s = -1.0 if self.is_hyperbola else 1.0
        return np.diag([1.0 / self.a2**2, s / self.b2**2])

    def value(self, p) -> float:
        p = np.asarray(p, dtype=float)
        return float(p @ self.matrix @ p) - 1.0

    def focal_c2(self) -> float:
        """a2^2 - b2^2 for an ellipse, a2^2 + b2^2 for a hyperbola."""
        if self.is_hyperbola:
            return self.a2**2 + self.b2**2
        return self.a2**2 - self.b2**2

    def lam(self, billiard: Billiard) -> float:
        return billiard.a**2 - self.a2**2


@dataclass(frozen=True)
class Line:
    """Line n . x = d with unit normal n."""

    n: np.ndarray
    d: float

    @classmethod
    def through(cls, p, q) -> "Line":
        p, q = np.asarray(p, float), np.asarray(q, float)
        t = q - p
        norm = math.hypot(*t)
        if norm == 0:
            raise GeometryError("line through coincident points")
        n = np.array([-t[1], t[0]]) / norm
        return cls(n, float(n @ p))

    @classmethod
    def from_point_dir(cls, p, v) -> "Line":
        p = np.asarray(p, float)
        return cls.through(p, p + np.asarray(v, float))

    @property
    def direction(self) -> np.ndarray:
        return np.array([self.n[1], -self.n[0]])

    def distance(self, p) -> float:
        return float(self.n @ np.asarray(p, float)) - self.d


def intersect_lines(l1: Line, l2: Line) -> np.ndarray:
    m = np.array([l1.n, l2.n])
    det = np.linalg.det(m)
    if abs(det) < 1e-14:
        raise GeometryError("parallel lines")
    return np.linalg.solve(m, np.array([l1.d, l2.d]))


# ---------------------------------------------------------------- billiard ops


def boundary_point(billiard: Billiard, t: float) -> np.ndarray:
    return np.array([billiard.a * math.cos(t), billiard.b * math.sin(t)])


def gradient(billiard: Billiard, p) -> np.ndarray:
    x, y = p
    return 2.0 * np.array([x / billiard.a**2, y / billiard.b**2])


def curvature(billiard: Billiard, p) -> float:
    a, b = billiard.a, billiard.b
    x, y = p
    return (x * x / a**4 + y * y / b**4) ** -1.5 / (a * a * b * b)


def joachimsthal_at(billiard: Billiard, p, v) -> float:
    """Half the gradient projected on the unit direction ``v``."""
    v = np.asarray(v, float)
    return 0.5 * float(gradient(billiard, p) @ (v / np.linalg.norm(v)))


def joachimsthal_from_caustic(billiard: Billiard, a_caustic: float) -> float:
    a, b = billiard.a, billiard.b
    if not 0 <= a_caustic < a:
        raise GeometryError(f"caustic semi-axis {a_caustic} must lie in [0, a)")
    return math.sqrt(a * a - a_caustic * a_caustic) / (a * b)


def caustic_from_joachimsthal(billiard: Billiard, J: float) -> ConfocalConic:
    return ConfocalConic.from_lambda(billiard, (J * billiard.a * billiard.b) ** 2)


def tangent_line(billiard: Billiard, p) -> Line:
    """Polar of p: x x0/a^2 + y y0/b^2 = 1."""
    g = gradient(billiard, p) / 2.0
    norm = math.hypot(*g)
    return Line(g / norm, 1.0 / norm)


def second_intersection(billiard: Billiard, p, v) -> np.ndarray:
    """Other intersection of the line p + s v with the billiard (p on the boundary).

    The root s=0 is deflated out of the quadratic, leaving s = -2 <p,v>_G / <v,v>_G.
    """
    g = np.array([1.0 / billiard.a**2, 1.0 / billiard.b**2])
    p = np.asarray(p, float)
    v = np.asarray(v, float)
    vv = float(np.sum(g * v * v))
    pv = float(np.sum(g * p * v))
    if abs(pv) <= 1e-15 * math.sqrt(vv):
        raise GeometryError("line is tangent to the billiard")
    return p - 2.0 * pv / vv * v


def tangent_directions(conic: ConfocalConic, p) -> list[np.ndarray]:
    """Unit directions of the (up to two) tangents from p to ``conic``.

    A direction d is tangent iff (p'Md)^2 - (d'Md)(p'Mp - 1) = 0, a binary
    quadratic form in d.
    """
    m = conic.matrix
    p = np.asarray(p, float)
    mp = m @ p
    q = np.outer(mp, mp) - (float(p @ mp) - 1.0) * m
    # q00 dx^2 + 2 q01 dx dy + q11 dy^2 = 0
    q00, q01, q11 = q[0, 0], q[0, 1], q[1, 1]
    scale = max(abs(q00), abs(q01), abs(q11))
    if scale == 0:
        raise GeometryError("degenerate tangent form")
    q00, q01, q11 = q00 / scale, q01 / scale, q11 / scale
    disc = q01 * q01 - q00 * q11
    if disc < -1e-12:
        raise GeometryError("point lies inside the caustic region: no real tangent")
    disc = math.sqrt(max(disc, 0.0))
    dirs = []
    if abs(q11) >= abs(q00):
        # slope form: dy/dx roots of q11 s^2 + 2 q01 s + q00
        for sgn in (1.0, -1.0):
            num = -q01 + sgn * disc
            dirs.append(np.array([q11, num]))
    else:
        for sgn in (1.0, -1.0):
            num = -q01 + sgn * disc
            dirs.append(np.array([num, q00]))
    out = []
    for d in dirs:
        n = np.linalg.norm(d)
        out.append(d / n)
    return out


def tangency_point(conic: ConfocalConic, line: Line, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Pole of ``line`` with respect to ``conic``; equals the touch point for a tangent line."""
    n, d = line.n, line.d
    a2sq = conic.a2**2
    b2sq = -(conic.b2**2) if conic.is_hyperbola else conic.b2**2
    # tangency condition a2^2 nx^2 + (+-b2^2) ny^2 = d^2
    resid = a2sq * n[0] ** 2 + b2sq * n[1] ** 2 - d * d
    scale = max(a2sq, abs(b2sq), d * d)
    if abs(resid) > tol * max(scale, 1.0):
        raise GeometryError(f"line not tangent to conic (residual {resid:.3e})")
    if d == 0:
        raise GeometryError("line through the centre has no finite pole")
    return np.array([a2sq * n[0] / d, b2sq * n[1] / d])


def tangency_residual(conic: ConfocalConic, line: Line) -> float:
    """Signed tangency defect, normalised by the conic scale."""
    n, d = line.n, line.d
    a2sq = conic.a2**2
    b2sq = -(conic.b2**2) if conic.is_hyperbola else conic.b2**2
    return (a2sq * n[0] ** 2 + b2sq * n[1] ** 2 - d * d) / max(a2sq, abs(b2sq), 1.0)


def confocal_lambda_of_line(billiard: Billiard, line: Line) -> float:
    """Parameter lam of the unique confocal conic tangent to ``line``.

    From (a^2 - lam) nx^2 + (b^2 - lam) ny^2 = d^2 with |n| = 1.
    """
    n, d = line.n, line.d
    return billiard.a**2 * n[0] ** 2 + billiard.b**2 * n[1] ** 2 - d * d


def confocal_intersections(billiard: Billiard, hyp: ConfocalConic) -> np.ndarray:
    """The four points (+-a a2/c, +-b b2/c), ordered by quadrant."""
    if billiard.c2 == 0:
        raise GeometryError("circle billiard has no confocal hyperbola")
    if not hyp.is_hyperbola:
        raise GeometryError("expected a hyperbola")
    x = billiard.a * hyp.a2 / billiard.c
    y = billiard.b * hyp.b2 / billiard.c
    return np.array([[x, y], [-x, y], [-x, -y], [x, -y]])


# ----------------------------------------------------------------- inversion


@dataclass(frozen=True)
class InversionContext:
    focus: int = 1
    rho: float = 1.0

    def __post_init__(self):
        if self.focus not in (1, 2):
            raise GeometryError("focus must be 1 (left) or 2 (right)")
        if self.rho <= 0:
            raise GeometryError("inversion radius must be positive")

    def center(self, billiard: Billiard) -> np.ndarray:
        return billiard.foci[self.focus - 1]


def invert_point(center, rho: float, p) -> np.ndarray:
    center = np.asarray(center, float)
    w = np.asarray(p, float) - center
    d2 = float(w @ w)
    if d2 == 0:
        raise GeometryError("cannot invert the centre of inversion")
    return center + (rho * rho / d2) * w


def invert_polygon(billiard: Billiard, ctx: InversionContext, vertices) -> np.ndarray:
    f = ctx.center(billiard)
    return np.array([invert_point(f, ctx.rho, p) for p in vertices])


# ------------------------------------------------------------------ polygons


@dataclass(frozen=True)
class PolygonMetrics:
    area: float
    perimeter: float
    angles: np.ndarray
    cosines: np.ndarray
    turning_number: int


def _check_polygon(vertices: np.ndarray) -> None:
    if vertices.ndim != 2 or vertices.shape[1] != 2 or len(vertices) < 3:
        raise GeometryError("polygon needs at least 3 planar vertices")
    edges = np.roll(vertices, -1, axis=0) - vertices
    if np.any(np.hypot(edges[:, 0], edges[:, 1]) == 0):
        raise GeometryError("repeated consecutive vertices")


def signed_area(vertices) -> float:
    v = np.asarray(vertices, float)
    _check_polygon(v)
    w = np.roll(v, -1, axis=0)
    return 0.5 * float(np.sum(v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0]))


def perimeter(vertices) -> float:
    v = np.asarray(vertices, float)
    e = np.roll(v, -1, axis=0) - v
    return float(np.sum(np.hypot(e[:, 0], e[:, 1])))


def vertex_cosines(vertices) -> np.ndarray:
    """cos of the angle at P_i between P_{i-1}-P_i and P_{i+1}-P_i."""
    v = np.asarray(vertices, float)
    _check_polygon(v)
    u = np.roll(v, 1, axis=0) - v
    w = np.roll(v, -1, axis=0) - v
    dots = np.sum(u * w, axis=1)
    norms = np.hypot(u[:, 0], u[:, 1]) * np.hypot(w[:, 0], w[:, 1])
    return np.clip(dots / norms, -1.0, 1.0)


def turn_signed_cosines(vertices) -> np.ndarray:
    """Vertex cosines carrying the sign of the turn (left +, right -) at each vertex."""
    v = np.asarray(vertices, float)
    e = np.roll(v, -1, axis=0) - v
    ep = np.roll(e, 1, axis=0)
    return np.sign(ep[:, 0] * e[:, 1] - ep[:, 1] * e[:, 0]) * vertex_cosines(v)


def turning_number(vertices, tol: float = 1e-6) -> int:
    v = np.asarray(vertices, float)
    _check_polygon(v)
    e = np.roll(v, -1, axis=0) - v
    heading = np.arctan2(e[:, 1], e[:, 0])
    turns = np.angle(np.exp(1j * (np.roll(heading, -1) - heading)))
    total = float(np.sum(turns)) / (2 * math.pi)
    k = round(total)
    if abs(total - k) > tol:
        raise GeometryError(f"turning sum {total} not an integer (cusp-like vertex?)")
    return int(k)


def polygon_metrics(vertices) -> PolygonMetrics:
    v = np.asarray(vertices, float)
    _check_polygon(v)
    cos = vertex_cosines(v)
    return PolygonMetrics(
        area=signed_area(v),
        perimeter=perimeter(v),
        angles=np.arccos(cos),
        cosines=cos,
        turning_number=turning_number(v),
    )
