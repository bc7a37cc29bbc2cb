"""Brute-force billiard dynamics used as the independent oracle.

Nothing here uses caustic formulas or polynomials: orbits are found by firing
rays from a boundary point and root-finding on the n-bounce closure defect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .conic import (
    Billiard,
    ConfocalConic,
    GeometryError,
    Line,
    boundary_point,
    confocal_lambda_of_line,
    gradient,
    perimeter,
    second_intersection,
    turning_number,
)

TWO_PI = 2 * math.pi


class NotFoundError(LookupError):
    """No periodic orbit with the requested signature at this aspect ratio."""


@dataclass(frozen=True)
class Ray:
    origin: np.ndarray
    direction: np.ndarray


@dataclass(frozen=True)
class ClosureResult:
    gap: float
    turning: int
    vertices: np.ndarray
    launch_angle: float
    caustic: ConfocalConic

    @property
    def perimeter(self) -> float:
        return perimeter(self.vertices)


def reflect(billiard: Billiard, p, v) -> np.ndarray:
    """Mirror direction ``v`` in the boundary tangent at ``p``."""
    n = gradient(billiard, p)
    n = n / np.linalg.norm(n)
    w = v - 2.0 * float(v @ n) * n
    return w / np.linalg.norm(w)


def bounce(billiard: Billiard, ray: Ray) -> Ray:
    q = second_intersection(billiard, ray.origin, ray.direction)
    return Ray(q, reflect(billiard, q, ray.direction))


def launch_direction(billiard: Billiard, t: float, alpha: float) -> np.ndarray:
    """Unit direction leaving P(t) at angle ``alpha`` from the tangent (0 < alpha < pi)."""
    tang = np.array([-billiard.a * math.sin(t), billiard.b * math.cos(t)])
    tang /= np.linalg.norm(tang)
    inward = -gradient(billiard, boundary_point(billiard, t))
    inward /= np.linalg.norm(inward)
    return math.cos(alpha) * tang + math.sin(alpha) * inward


def trajectory(billiard: Billiard, ray: Ray, bounces: int) -> np.ndarray:
    pts = [np.asarray(ray.origin, float)]
    for _ in range(bounces):
        ray = bounce(billiard, ray)
        pts.append(ray.origin)
    return np.array(pts)


def _advance(billiard: Billiard, t0: float, alphas: np.ndarray, n: int):
    """Vectorised n-bounce run; returns summed eccentric-angle advance and final state."""
    a, b = billiard.a, billiard.b
    g = np.array([1 / a**2, 1 / b**2])
    m = len(alphas)
    p = np.tile(boundary_point(billiard, t0), (m, 1))
    tang = np.array([-a * math.sin(t0), b * math.cos(t0)])
    tang /= np.linalg.norm(tang)
    inward = -gradient(billiard, p[0])
    inward /= np.linalg.norm(inward)
    v = np.cos(alphas)[:, None] * tang + np.sin(alphas)[:, None] * inward
    t_prev = np.full(m, t0)
    total = np.zeros(m)
    for _ in range(n):
        vv = np.sum(g * v * v, axis=1)
        pv = np.sum(g * p * v, axis=1)
        p = p - (2 * pv / vv)[:, None] * v
        nrm = g * p
        nrm /= np.linalg.norm(nrm, axis=1)[:, None]
        v = v - 2 * np.sum(v * nrm, axis=1)[:, None] * nrm
        v /= np.linalg.norm(v, axis=1)[:, None]
        t = np.arctan2(p[:, 1] / b, p[:, 0] / a)
        total += np.mod(t - t_prev, TWO_PI)
        t_prev = t
    return total, p, v


def _closed_orbit(billiard: Billiard, t0: float, alpha: float, n: int) -> np.ndarray:
    ray = Ray(boundary_point(billiard, t0), launch_direction(billiard, t0, alpha))
    return trajectory(billiard, ray, n)


def minimal_period(points: np.ndarray, tol: float) -> int:
    n = len(points) - 1
    for k in range(1, n):
        if n % k == 0 and np.linalg.norm(points[k] - points[0]) < tol:
            return k
    return n


def periodic_candidates(
    billiard: Billiard, n: int, t0: float, samples: int = 4000
) -> list[ClosureResult]:
    """Every primitive n-periodic through P(t0), one per launch-angle root.

    Only alpha in (0, pi/2] is scanned: alpha and pi - alpha have the same
    Joachimsthal constant, hence the same caustic and family.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    scale = billiard.a
    alphas = np.linspace(1e-4, math.pi / 2, samples)
    total, _, _ = _advance(billiard, t0, alphas, n)
    found: list[ClosureResult] = []
    for m in range(1, n):
        h = total - TWO_PI * m
        idx = np.nonzero(np.sign(h[:-1]) * np.sign(h[1:]) < 0)[0]
        for i in idx:
            if abs(h[i] - h[i + 1]) > math.pi:
                continue  # branch jump, not a crossing

            def fn(al, m=m):
                return float(_advance(billiard, t0, np.array([al]), n)[0][0]) - TWO_PI * m

            alpha = brentq(fn, alphas[i], alphas[i + 1], xtol=1e-15, rtol=1e-15)
            pts = _closed_orbit(billiard, t0, alpha, n)
            gap = float(np.linalg.norm(pts[-1] - pts[0]))
            v0 = pts[1] - pts[0]
            vn = _closed_orbit(billiard, t0, alpha, n + 1)[-1] - pts[-1]
            cos_dir = float(v0 @ vn) / (np.linalg.norm(v0) * np.linalg.norm(vn))
            if gap > 1e-7 * scale or cos_dir < 1 - 1e-9:
                continue  # back at P(t0) but heading elsewhere: not periodic
            if minimal_period(pts, 1e-6 * scale) != n:
                continue
            verts = pts[:-1]
            try:
                tn = abs(turning_number(verts))
            except GeometryError:
                continue
            lam = confocal_lambda_of_line(billiard, Line.through(verts[0], verts[1]))
            try:
                caustic = ConfocalConic.from_lambda(billiard, lam)
            except GeometryError:
                continue
            found.append(ClosureResult(gap, tn, verts, float(alpha), caustic))
    return found


def find_periodic(
    billiard: Billiard,
    n: int,
    turning: int,
    t0: float = 0.5,
    kind: str | None = None,
    samples: int = 4000,
) -> ClosureResult:
    """Periodic orbit through P(t0) with ``n`` bounces and turning number ``turning``.

    ``kind`` ("ellipse" / "hyperbola") disambiguates the rare case where two
    families share (n, turning).  Raises ``NotFoundError`` when none exists.
    """
    cands = [c for c in periodic_candidates(billiard, n, t0, samples) if c.turning == turning]
    if kind is not None:
        cands = [c for c in cands if c.caustic.kind.value == kind]
    if not cands:
        raise NotFoundError(f"no {n}-periodic with turning {turning} at a/b={billiard.ratio:g}")
    # distinct families give distinct caustics; duplicates come from m-branch overlap
    uniq: list[ClosureResult] = []
    for c in sorted(cands, key=lambda c: c.caustic.a2):
        if not uniq or abs(uniq[-1].caustic.a2 - c.caustic.a2) > 1e-9 * billiard.a:
            uniq.append(c)
    if len(uniq) > 1:
        raise NotFoundError(
            f"{len(uniq)} families share n={n}, turning={turning}; pass kind= to choose"
        )
    return uniq[0]
