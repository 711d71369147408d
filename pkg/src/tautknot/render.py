"""Deterministic SVG pictures of taut paths on the punctured plane."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import InputError
from .geometry import TautPath


@dataclass(frozen=True)
class RenderStyle:
    scale: float = 100.0           # pixels per tile
    viewport: Optional[tuple[float, float, float, float]] = None  # xmin, ymin, xmax, ymax
    stroke: float = 2.0
    grid_stroke: float = 0.5
    disk_fill: str = "#bbbbbb"
    path_color: str = "#1f4e9a"
    show_grid: bool = True
    per_radian: float = 32.0

    def __post_init__(self):
        if self.per_radian < 32:
            raise InputError("arc sampling needs at least 32 points per radian")
        if self.scale <= 0:
            raise InputError("scale must be positive")


def _f(v: float) -> str:
    s = format(v, ".9g")
    return "0" if s == "-0" else s


def _bounds(path: TautPath) -> tuple[float, float, float, float]:
    pts = path.sample(8) + [c.xy for c in path.centers]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    return math.floor(min(xs)) - 1, math.floor(min(ys)) - 1, math.ceil(max(xs)) + 1, math.ceil(max(ys)) + 1


def render_svg(path: TautPath, style: RenderStyle = RenderStyle()) -> str:
    """SVG text; identical inputs give identical bytes.

    The viewport always covers the path inflated by one tile; an explicit
    ``style.viewport`` is widened if it is too small.
    """
    x0, y0, x1, y1 = _bounds(path)
    if style.viewport is not None:
        vx0, vy0, vx1, vy1 = style.viewport
        x0, y0, x1, y1 = min(x0, vx0), min(y0, vy0), max(x1, vx1), max(y1, vy1)
    k = style.scale

    def X(x):
        return _f((x - x0) * k)

    def Y(y):
        return _f((y1 - y) * k)

    w, h = _f((x1 - x0) * k), _f((y1 - y0) * k)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        "<style>"
        f".grid{{stroke:#999999;stroke-width:{_f(style.grid_stroke)}}}"
        f".disk{{fill:{style.disk_fill};stroke:none}}"
        f".segment{{stroke:{style.path_color};stroke-width:{_f(style.stroke)};fill:none}}"
        f".arc{{stroke:#c0392b;stroke-width:{_f(style.stroke)};fill:none}}"
        ".endpoint{fill:#000000}"
        "</style>",
    ]
    if style.show_grid:
        out.append('<g class="grid">')
        for gx in range(math.ceil(x0), math.floor(x1) + 1):
            out.append(f'<line x1="{X(gx)}" y1="{Y(y0)}" x2="{X(gx)}" y2="{Y(y1)}"/>')
        for gy in range(math.ceil(y0), math.floor(y1) + 1):
            out.append(f'<line x1="{X(x0)}" y1="{Y(gy)}" x2="{X(x1)}" y2="{Y(gy)}"/>')
        out.append("</g>")
    out.append('<g class="disks">')
    r = _f(path.eps * k)
    for gx in range(math.ceil(x0), math.floor(x1)):
        for gy in range(math.ceil(y0), math.floor(y1)):
            out.append(f'<circle class="disk" cx="{X(gx + 0.5)}" cy="{Y(gy + 0.5)}" r="{r}"/>')
    out.append("</g>")
    out.append('<g class="segments">')
    for s in path.segments:
        out.append(f'<line class="segment" x1="{X(s.start[0])}" y1="{Y(s.start[1])}" '
                   f'x2="{X(s.end[0])}" y2="{Y(s.end[1])}"/>')
    out.append("</g>")
    out.append('<g class="arcs">')
    for a in path.arcs:
        steps = max(1, math.ceil(abs(a.turn) * style.per_radian))
        pts = [a.point_at(a.angle_start + a.turn * j / steps, path.eps) for j in range(steps + 1)]
        coords = " ".join(f"{X(p[0])},{Y(p[1])}" for p in pts)
        out.append(f'<polyline class="arc" points="{coords}"/>')
    out.append("</g>")
    for c in (path.start, path.end):
        out.append(f'<circle class="endpoint" cx="{X(c.xy[0])}" cy="{Y(c.xy[1])}" r="{_f(0.03 * k)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
