"""Integer parameterizations of simplified taut arcs.

A parameterization is ``(p1, q1, m1, ..., pn, qn, mn, pn+1, qn+1)``: the grid
crossings of each straight piece and the signed winding at each puncture the
arc rests on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .contfrac import parse_int_list
from .errors import InfeasibleEpsilon, InputError, InvalidSequence, InvalidTaut, NonConvergence
from .geometry import W0, LatticePoint, Point, Polyline, check_eps

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class ParamSequence:
    triples: tuple[Triple, ...] = ()
    tail: tuple[int, int] = (1, 0)

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(tuple(int(v) for v in t) for t in self.triples))
        object.__setattr__(self, "tail", tuple(int(v) for v in self.tail))
        if any(len(t) != 3 for t in self.triples) or len(self.tail) != 2:
            raise InvalidSequence("triples need three entries and the tail two")

    @classmethod
    def from_flat(cls, flat: Sequence[int]) -> "ParamSequence":
        vals = [int(v) for v in flat]
        if len(vals) % 3 != 2:
            raise InvalidSequence(f"a parameterization has 3n+2 entries, got {len(vals)}")
        triples = tuple(tuple(vals[i:i + 3]) for i in range(0, len(vals) - 2, 3))
        return cls(triples, tuple(vals[-2:]))

    @classmethod
    def parse(cls, text: str) -> "ParamSequence":
        try:
            vals = parse_int_list(text)
        except ValueError as exc:
            raise InvalidSequence(f"cannot parse {text!r}: {exc}") from None
        return cls.from_flat(vals)

    @property
    def n(self) -> int:
        return len(self.triples)

    def flat(self) -> tuple[int, ...]:
        out: list[int] = []
        for t in self.triples:
            out += t
        return tuple(out) + self.tail

    def slopes(self) -> list[tuple[int, int]]:
        return [(p, q) for p, q, _ in self.triples] + [self.tail]

    def windings(self) -> list[int]:
        return [m for _, _, m in self.triples]

    def displacement(self) -> tuple[int, int]:
        s = self.slopes()
        return sum(p for p, _ in s), sum(q for _, q in s)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.flat()) + ")"


def validate(seq: ParamSequence) -> list[str]:
    """Violated clauses of the validity predicate, each naming its index (1-based)."""
    out = []
    for i, (p, q) in enumerate(seq.slopes(), start=1):
        if p == 0 and q == 0:
            out.append(f"zero slope pair at {i}")
        elif p == 0 or q == 0:
            if abs(p + q) != 1:
                out.append(f"zero-partner must be +-1 at {i}")
        elif abs(p) == abs(q):
            if abs(p) != 1:
                out.append(f"p=±q requires values in {{1,−1}} at {i}")
        elif gcd(abs(p), abs(q)) != 1:
            out.append(f"coprimality at {i}")
    return out


def require_valid(seq: ParamSequence) -> ParamSequence:
    bad = validate(seq)
    if bad:
        raise InvalidSequence("; ".join(bad))
    return seq


def extract(simple) -> ParamSequence:
    """Read the parameterization off a simplified taut path."""
    from .tauten import path_sequence

    try:
        seq = ParamSequence.from_flat(path_sequence(simple.path))
    except InputError as exc:  # pragma: no cover - shape is guaranteed by TautPath
        raise InvalidTaut(str(exc)) from None
    bad = validate(seq)
    if bad:
        raise InvalidTaut("extracted sequence is invalid: " + "; ".join(bad))
    return seq


def sequence_word(seq: ParamSequence, start: LatticePoint = W0):
    """Limit contact word realizing ``seq`` (InvalidSequence if none exists)."""
    from .tauten import word_from_sequence

    require_valid(seq)
    try:
        return word_from_sequence(seq.slopes(), seq.windings(), start)
    except ValueError as exc:
        raise InvalidSequence(str(exc)) from None


@dataclass(frozen=True)
class Reconstruction:
    polyline: Polyline
    eps_used: float
    word: object = field(repr=False, compare=False, default=None)


def reconstruct_full(seq: ParamSequence, eps: float = 0.1, per_radian: float = 8.0) -> Reconstruction:
    """Polygonal representative of ``seq``, reporting the eps actually used.

    The taut path is built for the limit word at ``eps``; when the disks are
    too fat for the limit contacts to survive, eps is halved.  The polyline
    samples that path and is admissible at half the eps used, which gives
    every vertex clearance from every disk.
    """
    from .tauten import MIN_EPS, realize

    word = sequence_word(seq)
    e = check_eps(eps)
    while e >= MIN_EPS:
        try:
            path = realize(word, e)
        except NonConvergence:
            path = None
        if path is not None and sum(not x for x in path._extra) == len(word.contacts):
            return Reconstruction(_polyline_from_path(path, per_radian), e, word)
        e /= 2
    raise InfeasibleEpsilon(f"no eps >= {MIN_EPS} realizes {seq}")


def reconstruct(seq: ParamSequence, eps: float = 0.1) -> Polyline:
    return reconstruct_full(seq, eps).polyline


def _polyline_from_path(path, per_radian: float) -> Polyline:
    half = path.eps / 2
    pts = path.sample(per_radian)

    def radial(c: LatticePoint, toward: Point) -> Point:
        cx, cy = c.xy
        d = math.dist((cx, cy), toward)
        return Point(cx + half * (toward[0] - cx) / d, cy + half * (toward[1] - cy) / d)

    verts = [radial(path.start, pts[0])] + pts + [radial(path.end, pts[-1])]
    return Polyline(tuple(verts), path.start, path.end, half)


# -- torus diagrams -------------------------------------------------------------

@dataclass(frozen=True)
class TorusArcInput:
    """Closed curve on the torus [0,1]^2 / Z^2 through w0 = (1/2, 1/2).

    ``vertices`` starts and ends at w0.  Edge i joins vertex i to the image
    of vertex i+1 shifted by ``shifts[i]`` whole squares; without explicit
    shifts every edge goes to the nearest image.
    """

    vertices: tuple[tuple[float, float], ...]
    shifts: Optional[tuple[tuple[int, int], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple((float(x), float(y)) for x, y in self.vertices))
        if self.shifts is not None:
            object.__setattr__(self, "shifts", tuple((int(a), int(b)) for a, b in self.shifts))
        bad = self.violations()
        if bad:
            raise InputError("; ".join(bad))

    def violations(self) -> list[str]:
        v = self.vertices
        out = []
        if len(v) < 2:
            out.append("need at least two vertices")
            return out
        if v[0] != (0.5, 0.5) or v[-1] != (0.5, 0.5):
            out.append("first and last vertex must be w0 = (0.5, 0.5)")
        if any(not (0 <= x <= 1 and 0 <= y <= 1) for x, y in v):
            out.append("vertices must lie in the unit square")
        if any(x == 0.5 and y == 0.5 for x, y in v[1:-1]):
            out.append("interior vertices must avoid w0")
        if self.shifts is not None and len(self.shifts) != len(v) - 1:
            out.append("need one shift per edge")
        return out

    def lift(self) -> list[tuple[float, float]]:
        """Unrolled polyline in the plane starting at (0.5, 0.5)."""
        v = self.vertices
        pts = [v[0]]
        ox = oy = 0
        for i in range(len(v) - 1):
            (x0, y0), (x1, y1) = v[i], v[i + 1]
            if self.shifts is None:
                sx, sy = round(x0 - x1), round(y0 - y1)
            else:
                sx, sy = self.shifts[i]
            ox, oy = ox + sx, oy + sy
            pts.append((x1 + ox, y1 + oy))
        return pts


def lift_and_parameterize(arc: TorusArcInput, eps0: float = 0.1) -> ParamSequence:
    """Tight parameterization of the (1,1)-knot whose bridge arc projects to ``arc``."""
    from .tauten import contact_word, simplify

    pts = arc.lift()
    ex, ey = pts[-1]
    end = LatticePoint.nearest(ex, ey)
    word = contact_word(pts[1:-1], W0, end)
    return extract(simplify(word, eps0))
