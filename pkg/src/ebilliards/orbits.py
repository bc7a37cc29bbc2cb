"""N-periodic constructors for N = 3..8, simple and self-intersected.

Caustics come from closed forms (N = 3, 4, 6) or from the caustic
polynomials (N = 5, 7, 8).  Axis-symmetric seeds use explicit vertex formulas;
general family members are produced by ``chord_chain`` on the caustic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from . import polys
from .conic import (
    Billiard,
    ConfocalConic,
    ConicKind,
    GeometryError,
    Line,
    boundary_point,
    confocal_lambda_of_line,
    gradient,
    joachimsthal_from_caustic,
    perimeter,
    second_intersection,
    tangency_residual,
    tangent_directions,
    turning_number,
)
from .bounce import reflect
from .polyroots import NoRootError, real_roots

# a/b thresholds where the constant term of the degree-8 polynomial changes sign
N8_TYPE2_MIN_RATIO = math.sqrt(4 - 2 * math.sqrt(2))
N8_TYPE1_MIN_RATIO = math.sqrt(4 + 2 * math.sqrt(2))


class FamilyNonexistent(GeometryError):
    """The requested orbit family does not exist at this aspect ratio."""


class ClosureError(GeometryError):
    pass


class Tag(Enum):
    SIMPLE = "simple"
    TYPE1 = "type1"
    TYPE2 = "type2"
    TYPE3 = "type3"

    @classmethod
    def parse(cls, s: str) -> "Tag":
        s = s.lower().replace("_", "").replace("-", "").replace(" ", "")
        aliases = {"simple": "simple", "s": "simple", "i": "type1", "ii": "type2", "iii": "type3",
                   "typei": "type1", "typeii": "type2", "typeiii": "type3",
                   "bowtie": "type1", "pentagram": "type1", "star": "type1"}
        s = aliases.get(s, s)
        try:
            return cls(s)
        except ValueError:
            raise ValueError(f"unknown topology {s!r}") from None


@dataclass(frozen=True)
class Topology:
    n: int
    tag: Tag
    turning: int
    kind: ConicKind
    note: str = ""

    @property
    def label(self) -> str:
        suffix = {Tag.SIMPLE: "", Tag.TYPE1: "i", Tag.TYPE2: "ii", Tag.TYPE3: "iii"}[self.tag]
        return f"{self.n}{suffix}"

    def __str__(self) -> str:
        return f"N={self.n} {self.tag.value}"


_E, _H = ConicKind.ELLIPSE, ConicKind.HYPERBOLA

REGISTRY: dict[tuple[int, Tag], Topology] = {
    (t.n, t.tag): t
    for t in [
        Topology(3, Tag.SIMPLE, 1, _E),
        Topology(4, Tag.SIMPLE, 1, _E),
        Topology(4, Tag.TYPE1, 0, _H, "bowtie"),
        Topology(5, Tag.SIMPLE, 1, _E),
        Topology(5, Tag.TYPE1, 2, _E, "pentagram"),
        Topology(6, Tag.SIMPLE, 1, _E),
        Topology(6, Tag.TYPE1, 1, _H),
        Topology(6, Tag.TYPE2, 0, _H),
        Topology(7, Tag.SIMPLE, 1, _E),
        Topology(7, Tag.TYPE1, 2, _E),
        Topology(7, Tag.TYPE2, 3, _E),
        Topology(8, Tag.SIMPLE, 1, _E),
        Topology(8, Tag.TYPE1, 0, _H),
        # claimed turning number; the constructed family measures 0 (see README)
        Topology(8, Tag.TYPE2, 2, _H),
        Topology(8, Tag.TYPE3, 3, _E),
    ]
}


def topology(n: int, tag: Tag | str = Tag.SIMPLE) -> Topology:
    if isinstance(tag, str):
        tag = Tag.parse(tag)
    try:
        return REGISTRY[(n, tag)]
    except KeyError:
        raise FamilyNonexistent(f"no {tag.value} topology registered for N={n}") from None


def topologies(n: int | None = None) -> list[Topology]:
    return [t for t in REGISTRY.values() if n is None or t.n == n]


@dataclass(frozen=True)
class Orbit:
    billiard: Billiard
    topology: Topology
    vertices: np.ndarray
    caustic: ConfocalConic
    param: float = 0.0
    gap: float = 0.0
    J: float = field(init=False)
    L: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "J", joachimsthal_from_caustic(self.billiard, self.caustic.a2))
        object.__setattr__(self, "L", perimeter(self.vertices))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def turning(self) -> int:
        return turning_number(self.vertices)


# ------------------------------------------------------------------ caustics


def _ellipse(billiard: Billiard, a2: float) -> ConfocalConic:
    if not billiard.c < a2 < billiard.a:
        raise FamilyNonexistent(f"elliptic caustic needs c < a'' < a, got a''={a2:.6g}")
    return ConfocalConic.confocal(billiard, a2)


def _hyperbola(billiard: Billiard, a2: float) -> ConfocalConic:
    if not 0 < a2 < billiard.c:
        raise FamilyNonexistent(f"hyperbolic caustic needs 0 < a'' < c, got a''={a2:.6g}")
    return ConfocalConic(ConicKind.HYPERBOLA, a2, math.sqrt(billiard.c2 - a2 * a2))


def _require_noncircular(billiard: Billiard) -> None:
    if billiard.c2 <= 0:
        raise GeometryError("closed forms need a > b; use the circle limit instead")


def n3_caustic(billiard: Billiard) -> ConfocalConic:
    a, b = billiard.a, billiard.b
    if billiard.c2 == 0:
        return ConfocalConic(ConicKind.ELLIPSE, a / 2, a / 2)
    return ConfocalConic.confocal(billiard, a * (billiard.delta - b * b) / billiard.c2)


def n4_simple_caustic(billiard: Billiard) -> ConfocalConic:
    a, b = billiard.a, billiard.b
    return ConfocalConic(ConicKind.ELLIPSE, a * a / math.hypot(a, b), b * b / math.hypot(a, b))


def _check_bowtie(billiard: Billiard) -> None:
    if billiard.ratio * billiard.ratio <= 2.0:
        raise FamilyNonexistent(f"self-intersected 4-periodics need a/b > sqrt(2), got {billiard.ratio:g}")


def n4_self_caustic(billiard: Billiard) -> ConfocalConic:
    _check_bowtie(billiard)
    a, b, c = billiard.a, billiard.b, billiard.c
    return ConfocalConic(ConicKind.HYPERBOLA, a * math.sqrt(a * a - 2 * b * b) / c, b * b / c)


def n5_caustic(billiard: Billiard, tag: Tag = Tag.SIMPLE) -> ConfocalConic:
    """Largest (simple) or smallest (pentagram) root of the bi-sextic in (0, a)."""
    a = billiard.a
    if billiard.c2 == 0:
        k = 1 if tag is Tag.SIMPLE else 2
        r = a * math.cos(k * math.pi / 5)
        return ConfocalConic(ConicKind.ELLIPSE, r, r)
    roots = [r for r in real_roots(polys.n5_caustic_poly(billiard)) if 0 < r < a]
    if not roots:
        raise FamilyNonexistent("bi-sextic has no root in (0, a)")
    return _ellipse(billiard, roots[-1] if tag is Tag.SIMPLE else roots[0])


def n5_aux(billiard: Billiard) -> dict[str, float]:
    """Abscissae of P2, P3, Joachimsthal constant and perimeter of the horizontal simple 5-periodic.

    The J polynomial is written in half the Joachimsthal constant used
    elsewhere (J = grad f . v / 2 with f = (x/a)^2 + (y/b)^2); its small root
    is doubled on return.  The perimeter p/q is evaluated in the same scaling.
    """
    _require_noncircular(billiard)
    a, b, c2 = billiard.a, billiard.b, billiard.c2
    x2 = [r for r in real_roots(polys.n5_x2_poly(billiard)) if r > 0]
    x3 = [r for r in real_roots(polys.n5_x3_poly(billiard)) if r < 0]
    jh = [r for r in real_roots(polys.n5_joachimsthal_poly(billiard)) if r > 0]
    if not x2 or len(x3) != 1 or not jh:
        raise NoRootError("5-periodic auxiliary polynomial lost its root")
    j = jh[0]
    s = a * a + b * b
    rad = 1 - 4 * a * a * j * j
    if rad < 0:
        raise GeometryError("perimeter radicand is negative")
    sq = math.sqrt(rad)
    p = (1024 * s * c2**2 * b * b * j**7 - 256 * c2**2 * b * b * j**5 - 64 * s * b * b * j**3 + 16 * j * b * b) * sq
    p += (-1024 * c2 * (5 * a**4 + 2 * a * a * b * b + b**4) * b * b * j**7
          + 256 * c2 * (3 * a * a + b * b) * b * b * j**5 + 64 * c2 * b * b * j**3 + 16 * j * b * b)
    q = 256 * c2**4 * j**8 - 256 * c2 * s * s * j**6 + 32 * c2 * (3 * a * a + 5 * b * b) * j**4 - 16 * c2 * j * j + 1
    return {"x2": x2[0], "x3": x3[0], "J": 2 * j, "L": p / q}


def n6_caustic(billiard: Billiard, tag: Tag = Tag.SIMPLE) -> ConfocalConic:
    a, b, c = billiard.a, billiard.b, billiard.c
    if tag is Tag.SIMPLE:
        return ConfocalConic(
            ConicKind.ELLIPSE,
            a * math.sqrt(a * (a + 2 * b)) / (a + b),
            b * math.sqrt(b * (2 * a + b)) / (a + b),
        )
    if tag is Tag.TYPE1:
        if a <= 2 * b:
            raise FamilyNonexistent(f"N=6 type I needs a/b > 2, got {billiard.ratio:g}")
        return ConfocalConic(
            ConicKind.HYPERBOLA,
            a**1.5 * math.sqrt(a - 2 * b) / (a - b),
            b**1.5 * math.sqrt(2 * a - b) / (a - b),
        )
    if tag is Tag.TYPE2:
        if 3 * a * a <= 4 * b * b:
            raise FamilyNonexistent(f"N=6 type II needs a/b > 2/sqrt(3), got {billiard.ratio:g}")
        den = c * (3 * a * a + b * b)
        return ConfocalConic(
            ConicKind.HYPERBOLA,
            math.sqrt(a**3 * (3 * a * c - 2 * b * b) / den),
            math.sqrt(b * b * (2 * a * a * (a - c) - b * b * c) / den),
        )
    raise FamilyNonexistent(f"no N=6 {tag.value}")


def n7_caustics(billiard: Billiard) -> dict[Tag, ConfocalConic]:
    """Caustics of the three 7-periodic families.

    Ordered roots r0 < r1 < r2 of the degree-12 polynomial give, by magnitude,
    the simple orbit (r0), the turning-3 orbit (r1) and the turning-2 orbit
    (r2).  Type I is the turning-2 family, type II the turning-3 one.
    """
    a = billiard.a
    if billiard.c2 == 0:
        return {t: ConfocalConic(ConicKind.ELLIPSE, a * math.cos(k * math.pi / 7), a * math.cos(k * math.pi / 7))
                for t, k in ((Tag.SIMPLE, 1), (Tag.TYPE1, 2), (Tag.TYPE2, 3))}
    roots = real_roots(polys.n7_caustic_poly(billiard))
    if len(roots) < 3 or not (roots[0] < 0 and roots[1] < 0 and roots[2] > 0):
        raise NoRootError(f"unexpected sign pattern in 7-periodic roots {roots[:3]}")
    return {
        Tag.SIMPLE: _ellipse(billiard, -roots[0]),
        Tag.TYPE2: _ellipse(billiard, -roots[1]),
        Tag.TYPE1: _ellipse(billiard, roots[2]),
    }


def n8_simple_x(billiard: Billiard) -> float:
    roots = [r for r in real_roots(polys.n8_simple_poly(billiard)) if 0 < r < 1]
    if not roots:
        raise NoRootError("8-periodic quartic has no root in (0, 1)")
    return roots[0]


def n8_type3_x1(billiard: Billiard, check: bool = True) -> float:
    """Abscissa of the vertical doubled-up chord; equals the caustic semi-axis a''.

    Uses the quartic in omega = (x1/b)^2; with ``check`` the degree-8 form in
    x1 must give the same value.
    """
    b = billiard.b
    om = [r for r in real_roots(polys.n8_type3_omega_poly(billiard.ratio)) if r > 0]
    if not om:
        raise FamilyNonexistent("type III quartic has no positive root")
    x1 = b * math.sqrt(om[0])
    if check:
        xs = [r for r in real_roots(polys.n8_type3_poly(billiard)) if r > 0]
        if not xs or abs(xs[0] - x1) > 1e-9 * billiard.a:
            raise GeometryError(f"type III polynomials disagree: {x1!r} vs {xs[:1]!r}")
    return x1


def n8_caustic(billiard: Billiard, tag: Tag = Tag.SIMPLE) -> ConfocalConic:
    a, b, c = billiard.a, billiard.b, billiard.c
    if tag is Tag.SIMPLE:
        if billiard.c2 == 0:
            r = a * math.cos(math.pi / 8)
            return ConfocalConic(ConicKind.ELLIPSE, r, r)
        x = n8_simple_x(billiard)
        p1 = np.array([a, 0.0])
        p2 = np.array([a * x, b * math.sqrt(1 - x * x)])
        lam = confocal_lambda_of_line(billiard, Line.through(p1, p2))
        return ConfocalConic.from_lambda(billiard, lam)
    if tag is Tag.TYPE3:
        if billiard.c2 == 0:
            r = a * math.cos(3 * math.pi / 8)
            return ConfocalConic(ConicKind.ELLIPSE, r, r)
        return _ellipse(billiard, n8_type3_x1(billiard))
    if tag in (Tag.TYPE1, Tag.TYPE2):
        if billiard.c2 == 0:
            raise FamilyNonexistent("circle has no hyperbolic caustic")
        roots = [r for r in real_roots(polys.n8_hyperbolic_poly(billiard)) if 0 < r < a]
        if tag is Tag.TYPE2:
            if not roots:
                raise FamilyNonexistent(
                    f"N=8 type II needs a/b > {N8_TYPE2_MIN_RATIO:.6f}, got {billiard.ratio:g}")
            x1 = roots[-1]
        else:
            if len(roots) < 2:
                raise FamilyNonexistent(
                    f"N=8 type I needs a/b > {N8_TYPE1_MIN_RATIO:.6f}, got {billiard.ratio:g}")
            x1 = roots[0]
        return _hyperbola(billiard, c * x1 / a)
    raise FamilyNonexistent(f"no N=8 {tag.value}")


def caustic_for(billiard: Billiard, topo: Topology) -> ConfocalConic:
    n, tag = topo.n, topo.tag
    if n == 3:
        return n3_caustic(billiard)
    if n == 4:
        return n4_simple_caustic(billiard) if tag is Tag.SIMPLE else n4_self_caustic(billiard)
    if n == 5:
        return n5_caustic(billiard, tag)
    if n == 6:
        return n6_caustic(billiard, tag)
    if n == 7:
        return n7_caustics(billiard)[tag]
    if n == 8:
        return n8_caustic(billiard, tag)
    raise FamilyNonexistent(f"N={n} is outside 3..8")


# ------------------------------------------------------------------ chains


class Branch(Enum):
    CCW = 1
    CW = -1


def first_chord(billiard: Billiard, caustic: ConfocalConic, p1, branch: Branch = Branch.CCW) -> np.ndarray:
    """Unit direction of the chord from P1 tangent to ``caustic``.

    Both tangents are oriented into the table; ``branch`` picks the one
    rotating counterclockwise (or clockwise) about the centre.
    """
    p = np.asarray(p1, float)
    inward = -gradient(billiard, p)
    dirs = [d if d @ inward > 0 else -d for d in tangent_directions(caustic, p)]
    sense = [p[0] * d[1] - p[1] * d[0] for d in dirs]
    if abs(sense[0] - sense[1]) < 1e-14:
        return dirs[0]
    pick = np.argmax(sense) if branch is Branch.CCW else np.argmin(sense)
    return dirs[int(pick)]


def _chain_points(billiard: Billiard, p1, d, n: int) -> np.ndarray:
    # reflection keeps every chord on the caustic of the first one
    pts = [np.asarray(p1, float)]
    for _ in range(n):
        q = second_intersection(billiard, pts[-1], d)
        pts.append(q)
        d = reflect(billiard, q, d)
    return np.array(pts)


def chord_chain(
    billiard: Billiard,
    caustic: ConfocalConic,
    p1,
    n: int,
    branch: Branch = Branch.CCW,
) -> tuple[np.ndarray, float]:
    """Vertices P1..Pn of the billiard trajectory tangent to ``caustic``, and the closure gap."""
    pts = _chain_points(billiard, p1, first_chord(billiard, caustic, p1, branch), n)
    return pts[:-1], float(np.linalg.norm(pts[-1] - pts[0]))


def closure_defect(billiard: Billiard, a2: float, kind: ConicKind, t: float, n: int) -> float:
    """Eccentric-angle miss of the n-th bounce, wrapped to (-pi, pi]."""
    caustic = ConfocalConic.from_lambda(billiard, billiard.a**2 - a2 * a2)
    if caustic.kind is not kind:
        raise GeometryError("caustic changed type")
    p1 = boundary_point(billiard, t)
    pts = _chain_points(billiard, p1, first_chord(billiard, caustic, p1), n)
    return math.remainder(billiard.param_of(pts[-1]) - t, 2 * math.pi)


def polish_caustic(
    billiard: Billiard,
    caustic: ConfocalConic,
    n: int,
    t: float,
    max_shift: float = 1e-6,
) -> ConfocalConic:
    """Refine a caustic semi-axis by closing the trajectory from boundary_point(t).

    The starting value comes from a closed form or caustic polynomial; a
    refinement larger than ``max_shift * a`` means the algebraic root is wrong
    and raises instead of silently switching family.
    """
    if billiard.c2 == 0:
        return caustic
    lo_lim, hi_lim = (0.0, billiard.c) if caustic.is_hyperbola else (billiard.c, billiard.a)
    x0 = caustic.a2
    f = lambda x: closure_defect(billiard, x, caustic.kind, t, n)
    try:
        f0 = f(x0)
    except GeometryError:
        return caustic
    if f0 == 0.0:
        return caustic
    h = 1e-12 * billiard.a
    while h <= max_shift * billiard.a:
        lo, hi = max(x0 - h, lo_lim + 1e-15 * billiard.a), min(x0 + h, hi_lim - 1e-15 * billiard.a)
        try:
            flo, fhi = f(lo), f(hi)
        except GeometryError:
            break
        if flo * fhi < 0 and max(abs(flo), abs(fhi)) < 1.0:
            x = brentq(f, lo, hi, xtol=1e-16 * billiard.a, rtol=8.9e-16)
            if caustic.is_hyperbola:
                return ConfocalConic(ConicKind.HYPERBOLA, x, math.sqrt(billiard.c2 - x * x))
            return ConfocalConic.confocal(billiard, x)
        h *= 4
    return caustic


def family_window(billiard: Billiard, caustic: ConfocalConic) -> tuple[float, float]:
    """Range of boundary parameter t available to P1.

    Elliptic caustics allow the whole boundary.  For a hyperbola, P1 must lie
    on the upper arc between the two caustic crossings.
    """
    if not caustic.is_hyperbola:
        return 0.0, 2 * math.pi
    x = caustic.a2 / billiard.c
    t0 = math.acos(min(1.0, x))
    return t0, math.pi - t0


def _orient(verts: np.ndarray) -> np.ndarray:
    try:
        t = turning_number(verts)
    except GeometryError:
        return verts
    if t < 0:
        return np.vstack([verts[:1], verts[:0:-1]])
    return verts


def orbit_from_caustic(
    billiard: Billiard,
    topo: Topology,
    caustic: ConfocalConic,
    t: float,
    branch: Branch = Branch.CCW,
    gap_tol: float = 1e-8,
    polish: bool = True,
) -> Orbit:
    if polish:
        caustic = polish_caustic(billiard, caustic, topo.n, t)
    p1 = boundary_point(billiard, t)
    verts, gap = chord_chain(billiard, caustic, p1, topo.n, branch)
    L = perimeter(verts)
    if gap > gap_tol * L:
        raise ClosureError(f"{topo} chain misses closure by {gap:.3e} (L={L:.6g})")
    return Orbit(billiard, topo, _orient(verts), caustic, t, gap)


def build_orbit(billiard: Billiard, n: int, tag: Tag | str = Tag.SIMPLE, t: float | None = None) -> Orbit:
    """Family member with P1 = boundary_point(t); default t is a generic interior point."""
    topo = topology(n, tag)
    if topo.n == 4 and topo.tag is Tag.TYPE1:
        umax = bowtie_umax(billiard)
        return n4_self_orbit(billiard, 0.37 * umax if t is None else t)
    caustic = caustic_for(billiard, topo)
    lo, hi = family_window(billiard, caustic)
    if t is None:
        t = lo + 0.37 * (hi - lo)
    return orbit_from_caustic(billiard, topo, caustic, t)


def family_params(billiard: Billiard, topo: Topology, samples: int, margin: float = 0.01,
                  offset: float = 0.0) -> np.ndarray:
    """``samples`` family parameters spaced uniformly over the admissible window.

    Hyperbolic windows and the bowtie u-range are shrunk by ``margin`` at both
    ends, where the orbit doubles up.  The grid is shifted off the window
    centre because some families pass a chord through the origin there.
    """
    if topo.n == 4 and topo.tag is Tag.TYPE1:
        umax = bowtie_umax(billiard)
        lo, hi = -umax, umax
    else:
        caustic = caustic_for(billiard, topo)
        lo, hi = family_window(billiard, caustic)
        if not caustic.is_hyperbola:
            u = (np.arange(samples) + 0.37 + offset) / samples
            return lo + (u % 1.0) * (hi - lo)
    u = (np.arange(samples) + 0.37 + offset) / samples
    u = (u % 1.0) * (1 - 2 * margin) + margin
    return lo + u * (hi - lo)


def family_orbit(billiard: Billiard, topo: Topology, param: float) -> Orbit:
    if topo.n == 4 and topo.tag is Tag.TYPE1:
        return n4_self_orbit(billiard, param)
    return orbit_from_caustic(billiard, topo, caustic_for(billiard, topo), param)


# ------------------------------------------------------------ explicit seeds


def n3_orbit(billiard: Billiard, p1) -> Orbit:
    """3-periodic through P1 from the explicit rational vertex formulas."""
    topo = REGISTRY[(3, Tag.SIMPLE)]
    a, b = billiard.a, billiard.b
    x1, y1 = float(p1[0]), float(p1[1])
    if billiard.c2 == 0:
        t = math.atan2(y1, x1)
        verts = np.array([[a * math.cos(t + k * 2 * math.pi / 3), a * math.sin(t + k * 2 * math.pi / 3)]
                          for k in range(3)])
        return Orbit(billiard, topo, verts, n3_caustic(billiard), t, 0.0)
    c2, delta = billiard.c2, billiard.delta
    d1 = (a * b) ** 2 / c2
    d2 = b**4 * x1**2 + a**4 * y1**2
    dl1 = math.sqrt(2 * delta - a * a - b * b)
    k1 = d1**2 * dl1**2 / d2
    # cos^2 and sin*cos of the launch angle
    k2 = math.sqrt(max(k1 * (1 - k1), 0.0))
    a2, b2, a4, b4, a6, b6 = a * a, b * b, a**4, b**4, a**6, b**6
    x2 = (-b4 * ((a2 + b2) * k1 - a2) * x1**3 - 2 * a4 * b2 * k2 * x1**2 * y1
          + a4 * ((a2 - 3 * b2) * k1 + b2) * x1 * y1**2 - 2 * a6 * k2 * y1**3)
    y2 = (2 * b6 * k2 * x1**3 + b4 * ((b2 - 3 * a2) * k1 + a2) * x1**2 * y1
          + 2 * a2 * b4 * k2 * x1 * y1**2 - a4 * ((a2 + b2) * k1 - b2) * y1**3)
    q2 = b4 * (a2 - c2 * k1) * x1**2 + a4 * (b2 + c2 * k1) * y1**2 - 2 * a2 * b2 * c2 * k2 * x1 * y1
    x3 = (b4 * (a2 - (b2 + a2) * k1) * x1**3 + 2 * a4 * b2 * k2 * x1**2 * y1
          + a4 * (k1 * (a2 - 3 * b2) + b2) * x1 * y1**2 + 2 * a6 * k2 * y1**3)
    y3 = (-2 * b6 * k2 * x1**3 + b4 * (a2 + (b2 - 3 * a2) * k1) * x1**2 * y1
          - 2 * a2 * b4 * k2 * x1 * y1**2 + a4 * (b2 - (b2 + a2) * k1) * y1**3)
    q3 = b4 * (a2 - c2 * k1) * x1**2 + a4 * (b2 + c2 * k1) * y1**2 + 2 * a2 * b2 * c2 * k2 * x1 * y1
    verts = np.array([[x1, y1], [x2 / q2, y2 / q2], [x3 / q3, y3 / q3]])
    return Orbit(billiard, topo, _orient(verts), n3_caustic(billiard), billiard.param_of(p1), 0.0)


def n4_simple_orbit(billiard: Billiard, p1) -> Orbit:
    a, b = billiard.a, billiard.b
    x1, y1 = float(p1[0]), float(p1[1])
    s = math.sqrt(b**6 * x1**2 + a**6 * y1**2)
    p2 = np.array([-(a**4) * y1 / s, b**4 * x1 / s])
    verts = np.array([[x1, y1], p2, [-x1, -y1], -p2])
    return Orbit(billiard, REGISTRY[(4, Tag.SIMPLE)], verts, n4_simple_caustic(billiard),
                 billiard.param_of(p1), 0.0)


def n4_simple_area(billiard: Billiard, p1) -> float:
    a, b = billiard.a, billiard.b
    x1, y1 = float(p1[0]), float(p1[1])
    return 2 * (b**4 * x1**2 + a**4 * y1**2) / math.sqrt(b**6 * x1**2 + a**6 * y1**2)


def n4_simple_exit_cos(billiard: Billiard, x1: float) -> float:
    a, b = billiard.a, billiard.b
    return a * a * b / (math.hypot(a, b) * math.sqrt(a**4 - billiard.c2 * x1 * x1))


def bowtie_umax(billiard: Billiard) -> float:
    _check_bowtie(billiard)
    a, b = billiard.a, billiard.b
    return a * math.sqrt(a * a - 2 * b * b) / billiard.c2


def n4_self_orbit(billiard: Billiard, u: float) -> Orbit:
    """Bowtie with P1 = (a u, b sqrt(1 - u^2)); |u| <= u_max gives the whole family."""
    umax = bowtie_umax(billiard)
    if abs(u) > umax * (1 + 1e-12):
        raise FamilyNonexistent(f"|u| must not exceed {umax:.6g}")
    if abs(u) < 1e-9 * umax or abs(u) > umax * (1 - 1e-9):
        # u = 0 puts P1 on P3, u = u_max puts P2 on P4
        raise GeometryError(f"bowtie at u={u:.6g} is doubled up; use 0 < |u| < {umax:.6g}")
    a, b, c2 = billiard.a, billiard.b, billiard.c2
    w = math.sqrt(1 - u * u)
    rad = max(a * a * (a * a - 2 * b * b) - c2 * c2 * u * u, 0.0)
    xx = a * math.sqrt(rad) / (c2 * w)
    yy = -(b**3) / (c2 * w)
    verts = np.array([[a * u, b * w], [-xx, yy], [-a * u, b * w], [xx, yy]])
    return Orbit(billiard, REGISTRY[(4, Tag.TYPE1)], verts, n4_self_caustic(billiard), u, 0.0)


def n4_self_exit_cos(billiard: Billiard, x1: float) -> float:
    a, b = billiard.a, billiard.b
    return a * a * b / (billiard.c * math.sqrt(a**4 - billiard.c2 * x1 * x1))


def n6_seed(billiard: Billiard, tag: Tag = Tag.SIMPLE) -> Orbit:
    """Axis-symmetric 6-periodic from the explicit vertex formulas."""
    a, b, c = billiard.a, billiard.b, billiard.c
    caustic = n6_caustic(billiard, tag)
    if tag is Tag.SIMPLE:
        kx, ky = a * a / (a + b), b * math.sqrt(b * (2 * a + b)) / (a + b)
        p2, p3 = np.array([kx, ky]), np.array([-kx, ky])
        verts = np.array([[a, 0.0], p2, p3, [-a, 0.0], -p2, -p3])
    elif tag is Tag.TYPE1:
        kx, ky = a * math.sqrt(a * (a - 2 * b)) / (b - a), b * b / (b - a)
        p2, p3 = np.array([kx, ky]), np.array([kx, -ky])
        verts = np.array([[0.0, b], p2, p3, [0.0, -b], -p2, -p3])
    else:
        kx, ky = -(a**1.5) * math.sqrt(2 * c - a) / c, (c - a) * b / c
        p2, p5 = np.array([kx, ky]), np.array([kx, -ky])
        verts = np.array([[0.0, b], p2, -p2, [0.0, -b], p5, -p5])
    topo = REGISTRY[(6, tag)]
    return Orbit(billiard, topo, _orient(verts), caustic, billiard.param_of(verts[0]), 0.0)


def n8_seed(billiard: Billiard) -> Orbit:
    """Horizontal simple 8-periodic, P1 = (a, 0)."""
    a, b = billiard.a, billiard.b
    x = n8_simple_x(billiard)
    y = b * math.sqrt(1 - x * x)
    verts = np.array([[a, 0], [a * x, y], [0, b], [-a * x, y], [-a, 0], [-a * x, -y], [0, -b], [a * x, -y]], float)
    return Orbit(billiard, REGISTRY[(8, Tag.SIMPLE)], verts, n8_caustic(billiard), 0.0, 0.0)


# -------------------------------------------------------------- perimeters


def closed_form_perimeter(billiard: Billiard, topo: Topology) -> float:
    a, b, c = billiard.a, billiard.b, billiard.c
    key = (topo.n, topo.tag)
    if key == (3, Tag.SIMPLE):
        if billiard.c2 == 0:
            return 3 * math.sqrt(3) * a
        J = math.sqrt(2 * billiard.delta - a * a - b * b) / billiard.c2
        return 2 * (billiard.delta + a * a + b * b) * J
    if key == (4, Tag.SIMPLE):
        return 4 * math.hypot(a, b)
    if key == (4, Tag.TYPE1):
        _check_bowtie(billiard)
        return 4 * a * a / c
    if key == (5, Tag.SIMPLE):
        return n5_aux(billiard)["L"]
    if key == (6, Tag.SIMPLE):
        return 4 * (a * a + a * b + b * b) / (a + b)
    if key == (6, Tag.TYPE1):
        n6_caustic(billiard, Tag.TYPE1)
        return 4 * (a * a - a * b + b * b) / (a - b)
    if key == (6, Tag.TYPE2):
        n6_caustic(billiard, Tag.TYPE2)
        return 4 * (a + c) * math.sqrt(2 * a / c - 1)
    raise KeyError(f"no closed-form perimeter for {topo}")


def n3_joachimsthal(billiard: Billiard) -> float:
    a, b = billiard.a, billiard.b
    if billiard.c2 == 0:
        return math.sqrt(3) / (2 * a)
    return math.sqrt(2 * billiard.delta - a * a - b * b) / billiard.c2


# -------------------------------------------------------------- validation


@dataclass(frozen=True)
class OrbitCheck:
    on_ellipse: float
    reflection: float
    tangency: float
    j_spread: float
    gap_ratio: float
    turning: int

    def ok(self, expected_turning: int | None = None, tol_ellipse=1e-10, tol_reflect=1e-9,
           tol_tangent=1e-10, tol_j=1e-10, tol_gap=1e-8) -> bool:
        good = (self.on_ellipse < tol_ellipse and self.reflection < tol_reflect
                and self.tangency < tol_tangent and self.j_spread < tol_j and self.gap_ratio < tol_gap)
        if expected_turning is not None:
            good = good and abs(self.turning) == expected_turning
        return good


def check_orbit(orbit: Orbit) -> OrbitCheck:
    """Residuals of every defining property of a billiard N-periodic."""
    B = orbit.billiard
    v = orbit.vertices
    n = len(v)
    on = max(B.residual(p) for p in v)
    refl, tang, js = 0.0, 0.0, []
    for i in range(n):
        p, prev, nxt = v[i], v[i - 1], v[(i + 1) % n]
        nrm = -gradient(B, p)
        nrm /= np.linalg.norm(nrm)
        u = (prev - p) / np.linalg.norm(prev - p)
        w = (nxt - p) / np.linalg.norm(nxt - p)
        au = math.atan2(nrm[0] * u[1] - nrm[1] * u[0], nrm @ u)
        aw = math.atan2(nrm[0] * w[1] - nrm[1] * w[0], nrm @ w)
        refl = max(refl, abs(au + aw))
        tang = max(tang, abs(tangency_residual(orbit.caustic, Line.through(p, nxt))))
        js.append(abs(0.5 * gradient(B, p) @ w))
        js.append(abs(0.5 * gradient(B, nxt) @ w))
    return OrbitCheck(on, refl, tang, max(js) - min(js), orbit.gap / orbit.L, turning_number(v))
