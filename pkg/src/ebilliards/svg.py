"""Minimal SVG writer for billiard figures; coordinates are billiard units."""

from __future__ import annotations

import math

import numpy as np

from .conic import Billiard, ConfocalConic

COLORS = {
    "billiard": "#000000",
    "orbit": "#1f4fd6",
    "caustic": "#8b5a2b",
    "outer": "#2a9d3a",
    "inner": "#8b1a1a",
    "inversive": "#d63384",
    "circle": "#1f4fd6",
    "circle2": "#2a9d3a",
    "axis": "#555555",
    "quartic": "#7b2cbf",
}


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class Figure:
    def __init__(self, extent: float, scale: float = 100.0, banner: str | None = None):
        self.extent = extent
        self.scale = scale
        self.items: list[str] = []
        self.banner = banner

    def _pts(self, pts) -> str:
        # flip y: SVG grows downward
        return " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in np.asarray(pts, float))

    def polygon(self, pts, color: str, width: float = 1.5, dash: str | None = None, closed: bool = True) -> None:
        tag = "polygon" if closed else "polyline"
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(
            f'<{tag} points="{self._pts(pts)}" fill="none" stroke="{color}" '
            f'stroke-width="{_fmt(width / self.scale)}"{d}/>'
        )

    def circle(self, center, r: float, color: str, width: float = 1.0, dash: str | None = None) -> None:
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(
            f'<circle cx="{_fmt(center[0])}" cy="{_fmt(-center[1])}" r="{_fmt(r)}" fill="none" '
            f'stroke="{color}" stroke-width="{_fmt(width / self.scale)}"{d}/>'
        )

    def dots(self, pts, color: str, radius: float = 3.0) -> None:
        for x, y in np.asarray(pts, float):
            self.items.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(radius / self.scale)}" fill="{color}"/>')

    def render(self) -> str:
        e = self.extent
        w = _fmt(2 * e * self.scale)
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" '
            f'viewBox="{_fmt(-e)} {_fmt(-e)} {_fmt(2 * e)} {_fmt(2 * e)}">',
        ]
        if self.banner:
            head.append(f"<!-- {self.banner} -->")
        return "\n".join(head + self.items + ["</svg>", ""])

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.render())


def ellipse_points(a: float, b: float, count: int = 240) -> np.ndarray:
    t = np.linspace(0, 2 * math.pi, count, endpoint=False)
    return np.column_stack([a * np.cos(t), b * np.sin(t)])


def draw_conic(fig: Figure, billiard: Billiard, conic: ConfocalConic, color: str, dash: str = "4 2") -> None:
    """Caustic; hyperbola branches are clipped to the billiard."""
    if not conic.is_hyperbola:
        fig.polygon(ellipse_points(conic.a2, conic.b2), color, dash=dash)
        return
    # branch x = +-a2 cosh s, y = b2 sinh s until it leaves the table
    s_max = math.asinh(billiard.b / conic.b2) + 1e-9
    s = np.linspace(-s_max, s_max, 200)
    for sign in (1, -1):
        pts = np.column_stack([sign * conic.a2 * np.cosh(s), conic.b2 * np.sinh(s)])
        inside = (pts[:, 0] / billiard.a) ** 2 + (pts[:, 1] / billiard.b) ** 2 <= 1
        if inside.any():
            fig.polygon(pts[inside], color, dash=dash, closed=False)


def figure_for(billiard: Billiard, extent: float | None = None, scale: float = 100.0, banner: str | None = None) -> Figure:
    fig = Figure(extent or 1.15 * billiard.a, scale, banner)
    fig.polygon(ellipse_points(billiard.a, billiard.b), COLORS["billiard"])
    fig.dots(billiard.foci, COLORS["billiard"], 2.0)
    return fig
