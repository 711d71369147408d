"""Lattice bookkeeping and floating-point primitives for the punctured plane.

Punctures sit at the tile midpoints (l/2, m/2) with l, m odd; every puncture
is an open disk of the same radius eps.  Lattice identities (centers,
crossing counts) are exact ints; tangent points are floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import DegenerateTangent, GridTouch, InputError

# tolerance in tile units for tangency, clearance and grid-touch tests
TAU_GEO = 1e-9


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True, order=True)
class LatticePoint:
    """Puncture center (l/2, m/2); l and m are odd."""

    l: int
    m: int

    def __post_init__(self):
        if self.l % 2 == 0 or self.m % 2 == 0:
            raise InputError(f"lattice coordinates must be odd, got ({self.l}, {self.m})")

    @property
    def xy(self) -> Point:
        return Point(self.l / 2, self.m / 2)

    def shifted(self, p: int, q: int) -> "LatticePoint":
        """Move by whole tiles."""
        return LatticePoint(self.l + 2 * p, self.m + 2 * q)

    def displacement_to(self, other: "LatticePoint") -> tuple[int, int]:
        return (other.l - self.l) // 2, (other.m - self.m) // 2

    @classmethod
    def nearest(cls, x: float, y: float) -> "LatticePoint":
        return cls(2 * math.floor(x) + 1, 2 * math.floor(y) + 1)

    def __iter__(self):
        yield self.l
        yield self.m


W0 = LatticePoint(1, 1)


def check_eps(eps: float) -> float:
    eps = float(eps)
    if not 0 < eps < 0.5 or not math.isfinite(eps):
        raise InputError(f"epsilon must lie in (0, 1/2), got {eps}")
    return eps


@dataclass(frozen=True)
class TangentSegment:
    """Straight piece of a taut path.

    ``from_circle``/``to_circle`` is None at a free endpoint (the start of the
    first segment and the end of the last one).
    """

    start: Point
    end: Point
    from_circle: Optional[LatticePoint] = None
    to_circle: Optional[LatticePoint] = None

    @property
    def length(self) -> float:
        return math.dist(self.start, self.end)

    @property
    def direction(self) -> Point:
        n = self.length
        return Point((self.end[0] - self.start[0]) / n, (self.end[1] - self.start[1]) / n)

    def reversed(self) -> "TangentSegment":
        return TangentSegment(self.end, self.start, self.to_circle, self.from_circle)


@dataclass(frozen=True)
class ContactArc:
    """Arc on the circle of radius eps around ``center``.

    ``turn`` is signed (positive = counterclockwise).  ``side`` is the side the
    puncture lies on as the path moves (+1 left/CCW, -1 right/CW); it carries
    the direction of zero-turn point contacts.
    """

    center: LatticePoint
    angle_start: float
    turn: float
    side: int

    @property
    def angle_end(self) -> float:
        return self.angle_start + self.turn

    def point_at(self, angle: float, eps: float) -> Point:
        cx, cy = self.center.xy
        return Point(cx + eps * math.cos(angle), cy + eps * math.sin(angle))

    def length(self, eps: float) -> float:
        return abs(self.turn) * eps


@dataclass(frozen=True)
class Polyline:
    """Polygonal arc from the circle around ``start`` to the one around ``end``."""

    vertices: tuple[Point, ...]
    start: LatticePoint
    end: LatticePoint
    eps: float

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(Point(float(x), float(y)) for x, y in self.vertices))
        if len(self.vertices) < 2:
            raise InputError("a polyline needs at least two vertices")

    @property
    def length(self) -> float:
        return sum(math.dist(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    def violations(self) -> list[str]:
        """Invariant violations at ``self.eps`` (empty when admissible)."""
        out = []
        eps = self.eps
        for name, c, v in (("first", self.start, self.vertices[0]), ("last", self.end, self.vertices[-1])):
            if abs(math.dist(c.xy, v) - eps) > 1e-6 * max(eps, 1.0):
                out.append(f"{name} vertex is not on the circle around {tuple(c)}")
        for i, (a, b) in enumerate(zip(self.vertices, self.vertices[1:])):
            hits = segment_disk_conflicts(a, b, eps)
            if hits:
                out.append(f"edge {i} enters the disk around {tuple(hits[0])}")
        return out


@dataclass(frozen=True)
class TautPath:
    """gamma_1, delta_1, gamma_2, ..., delta_n, gamma_{n+1}."""

    segments: tuple[TangentSegment, ...]
    arcs: tuple[ContactArc, ...]
    eps: float
    start: LatticePoint
    end: LatticePoint

    def __post_init__(self):
        if len(self.segments) != len(self.arcs) + 1:
            raise ValueError("a taut path alternates n+1 segments with n arcs")

    @property
    def n(self) -> int:
        return len(self.arcs)

    @property
    def length(self) -> float:
        return sum(s.length for s in self.segments) + sum(a.length(self.eps) for a in self.arcs)

    @property
    def centers(self) -> list[LatticePoint]:
        return [self.start] + [a.center for a in self.arcs] + [self.end]

    def sample(self, per_radian: float = 32.0) -> list[Point]:
        """Points along the path, arcs sampled at ``per_radian`` points per radian."""
        pts = [self.segments[0].start]
        for seg, arc in zip(self.segments, self.arcs):
            pts.append(seg.end)
            steps = max(1, math.ceil(abs(arc.turn) * per_radian))
            for j in range(1, steps):
                pts.append(arc.point_at(arc.angle_start + arc.turn * j / steps, self.eps))
        pts.append(self.segments[-1].end)
        return pts


# -- primitives ---------------------------------------------------------------

def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def point_segment_distance(p: Sequence[float], a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    """Distance from p to segment ab and the clamped parameter of the foot."""
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    n2 = dx * dx + dy * dy
    if n2 == 0:
        return math.dist(p, a), 0.0
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / n2
    t = min(1.0, max(0.0, t))
    return math.hypot(ax + t * dx - p[0], ay + t * dy - p[1]), t


def centers_near(a: Sequence[float], b: Sequence[float], pad: float) -> Iterable[LatticePoint]:
    """All puncture centers in the bounding box of ab inflated by ``pad``."""
    xlo, xhi = min(a[0], b[0]) - pad, max(a[0], b[0]) + pad
    ylo, yhi = min(a[1], b[1]) - pad, max(a[1], b[1]) + pad
    for l in range(math.ceil(2 * xlo), math.floor(2 * xhi) + 1):
        if l % 2 == 0:
            continue
        for m in range(math.ceil(2 * ylo), math.floor(2 * yhi) + 1):
            if m % 2:
                yield LatticePoint(l, m)


def segment_disk_conflicts(start: Sequence[float], end: Sequence[float], eps: float) -> list[LatticePoint]:
    """Centers whose open eps-disk meets the segment, nearest-to-start first.

    A disk counts only if the segment gets closer than ``eps - TAU_GEO`` to
    its center, so tangency within tolerance is admissible.
    """
    if math.dist(start, end) == 0:
        return []
    hits = []
    for c in centers_near(start, end, eps):
        d, t = point_segment_distance(c.xy, start, end)
        if d < eps - TAU_GEO:
            hits.append((t, d, c))
    hits.sort(key=lambda h: (h[0], h[1]))
    return [c for _, _, c in hits]


def left_normal(u: Sequence[float]) -> Point:
    return Point(-u[1], u[0])


def tangent_line(c1: Sequence[float], s1: float, c2: Sequence[float], s2: float) -> tuple[Point, Point, Point]:
    """Common tangent of two circles given by signed radii.

    ``s = side * radius``: a circle with s > 0 is kept on the left of the
    line (the path winds counterclockwise around it), s < 0 on the right,
    s = 0 is a bare point.  Returns (tangent point 1, tangent point 2, unit
    direction).
    """
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    d2 = dx * dx + dy * dy
    k = s2 - s1
    if d2 <= k * k:
        raise DegenerateTangent(f"no tangent: center distance {math.sqrt(d2):.6g} <= |{k:.6g}|")
    L = math.sqrt(d2 - k * k)
    # D = L u + k left(u)  =>  u = (L D - k left(D)) / |D|^2
    ux = (L * dx + k * dy) / d2
    uy = (L * dy - k * dx) / d2
    nx, ny = -uy, ux
    t1 = Point(c1[0] - s1 * nx, c1[1] - s1 * ny)
    t2 = Point(c2[0] - s2 * nx, c2[1] - s2 * ny)
    return t1, t2, Point(ux, uy)


def bitangent(c1: LatticePoint, dir1: int, c2: LatticePoint, dir2: int, eps: float) -> TangentSegment:
    """Common tangent leaving ``c1`` winding ``dir1`` and reaching ``c2`` winding ``dir2``.

    Equal directions give an outer tangent, opposite directions an inner one.
    """
    eps = check_eps(eps)
    if c1 == c2:
        raise DegenerateTangent("bitangent needs two distinct circles")
    if dir1 not in (1, -1) or dir2 not in (1, -1):
        raise InputError("winding directions must be +1 or -1")
    if dir1 != dir2 and eps >= math.dist(c1.xy, c2.xy) / 2:
        raise DegenerateTangent("inner bitangent needs eps below half the center distance")
    t1, t2, _ = tangent_line(c1.xy, dir1 * eps, c2.xy, dir2 * eps)
    return TangentSegment(t1, t2, c1, c2)


def _grid_index(v: float, what: str) -> int:
    f = math.floor(v)
    if v - f < TAU_GEO or f + 1 - v < TAU_GEO:
        raise GridTouch(f"{what} coordinate {v!r} is within tolerance of a grid line")
    return f


def grid_crossings(seg: TangentSegment) -> tuple[int, int]:
    """Signed crossings with vertical (p) and horizontal (q) integer lines.

    p carries the sign of the horizontal displacement and q the sign of the
    vertical one.
    """
    (x0, y0), (x1, y1) = seg.start, seg.end
    p = _grid_index(x1, "x") - _grid_index(x0, "x")
    q = _grid_index(y1, "y") - _grid_index(y0, "y")
    return p, q


def signed_angle(u: Sequence[float], v: Sequence[float]) -> float:
    """Principal angle in (-pi, pi] rotating u onto v."""
    return math.atan2(_cross(u[0], u[1], v[0], v[1]), u[0] * v[0] + u[1] * v[1])
