"""Shortest representatives of homotopy classes of arcs in the punctured plane.

Two stages:

1. :func:`contact_word` pulls a polyline taut around *point* punctures using
   exact rational arithmetic.  The result is the eps -> 0 limit of the taut
   string: the ordered punctures it rests on, the side of each, and the total
   turn at each (which carries extra full wraps).
2. :func:`realize` builds the taut path for a concrete eps from a contact
   word.  Finite-eps strings may rest on extra punctures near a straight
   stretch (those vanish under arc reduction as eps shrinks).  They are
   found by obstacle detection and dropped again when their turn flips.

:func:`simplify` halves eps until the integer sequence read from the path is
stable and the path agrees with the limit word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import NonConvergence, ShrinkLimit, TrivialArc
from .geometry import (
    TAU_GEO,
    ContactArc,
    LatticePoint,
    Point,
    Polyline,
    TangentSegment,
    TautPath,
    check_eps,
    grid_crossings,
    segment_disk_conflicts,
    signed_angle,
    tangent_line,
)

MAX_ITER = 10_000
MIN_EPS = 1e-6
TWO_PI = 2 * math.pi
# below this, a finite-eps turn counts as a point contact
TAU_TURN = 1e-9

FPoint = tuple[Fraction, Fraction]


# -- contact words --------------------------------------------------------------

@dataclass(frozen=True)
class Contact:
    """One puncture the limit string rests on.

    ``turn`` is the signed (CCW positive) total turn of the string at the
    puncture in the eps -> 0 limit; ``side * turn >= 0``.
    """

    center: LatticePoint
    side: int
    turn: float

    @property
    def dir(self) -> int:
        return self.side

    @property
    def wraps(self) -> int:
        """Extra full turns beyond the tangent-to-tangent angle."""
        return max(0, math.floor(self.side * self.turn / TWO_PI + 1e-12))


@dataclass(frozen=True)
class ContactWord:
    start: LatticePoint
    end: LatticePoint
    contacts: tuple[Contact, ...] = ()

    @property
    def centers(self) -> list[LatticePoint]:
        return [self.start] + [c.center for c in self.contacts] + [self.end]

    def displacements(self) -> list[tuple[int, int]]:
        cs = self.centers
        return [a.displacement_to(b) for a, b in zip(cs, cs[1:])]

    def windings(self) -> list[int]:
        """Winding integers of the limit string, exact from lattice data.

        For a turn strictly between multiples of pi this is ceil(|turn|/pi).
        When the turn is a multiple j*pi the finite-eps turn exceeds it by a
        positive amount unless both neighbours are contacts on the same side,
        so the winding is j+1 in that case and j otherwise.
        """
        disp = self.displacements()
        out = []
        for i, c in enumerate(self.contacts):
            (ax, ay), (bx, by) = disp[i], disp[i + 1]
            t = c.side * c.turn
            if ax * by - ay * bx != 0:
                mag = math.ceil(t / math.pi)
            else:
                j = round(t / math.pi)
                same = (0 < i < len(self.contacts) - 1
                        and self.contacts[i - 1].side == c.side == self.contacts[i + 1].side)
                mag = j if same else j + 1
            out.append(c.side * mag)
        return out

    def sequence(self) -> tuple[int, ...]:
        """Flat integer sequence (p1, q1, m1, ..., pn+1, qn+1) of the limit string."""
        disp, wind = self.displacements(), self.windings()
        flat: list[int] = []
        for i, (p, q) in enumerate(disp):
            flat += [p, q]
            if i < len(wind):
                flat.append(wind[i])
        return tuple(flat)


# -- stage 1: exact string pulling ----------------------------------------------

_ANCHOR, _PIN, _CONTACT = "anchor", "pin", "contact"


@dataclass
class _Node:
    kind: str
    pt: FPoint
    center: Optional[LatticePoint] = None
    side: int = 0
    k: int = 0  # turn = principal(in, out) + 2 pi k


def _fp(x: float, y: float) -> FPoint:
    return Fraction(x), Fraction(y)


def _sub(a: FPoint, b: FPoint) -> FPoint:
    return a[0] - b[0], a[1] - b[1]


def _cross(u: FPoint, v: FPoint) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _dot(u: FPoint, v: FPoint) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def _norm2(u: FPoint) -> Fraction:
    return u[0] * u[0] + u[1] * u[1]


def _angle(u: FPoint, v: FPoint) -> float:
    return math.atan2(float(_cross(u, v)), float(_dot(u, v)))


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _orient(a: FPoint, b: FPoint, c: FPoint) -> int:
    return _sgn(_cross(_sub(b, a), _sub(c, a)))


def _lattice_in_triangle(a: FPoint, b: FPoint, c: FPoint) -> list[tuple[LatticePoint, FPoint]]:
    """Lattice centers in the closed triangle abc (exact)."""
    xs, ys = (a[0], b[0], c[0]), (a[1], b[1], c[1])
    out = []
    for l in range(math.ceil(2 * min(xs)), math.floor(2 * max(xs)) + 1):
        if l % 2 == 0:
            continue
        for m in range(math.ceil(2 * min(ys)), math.floor(2 * max(ys)) + 1):
            if m % 2 == 0:
                continue
            p = (Fraction(l, 2), Fraction(m, 2))
            o1, o2, o3 = _orient(a, b, p), _orient(b, c, p), _orient(c, a, p)
            if (o1 >= 0 and o2 >= 0 and o3 >= 0) or (o1 <= 0 and o2 <= 0 and o3 <= 0):
                out.append((LatticePoint(l, m), p))
    return out


class _Puller:
    def __init__(self, nodes: list[_Node]):
        self.nodes = nodes

    # turn bookkeeping -------------------------------------------------------
    def _in(self, i: int) -> FPoint:
        return _sub(self.nodes[i].pt, self.nodes[i - 1].pt)

    def _out(self, i: int) -> FPoint:
        return _sub(self.nodes[i + 1].pt, self.nodes[i].pt)

    def turn(self, i: int) -> float:
        return _angle(self._in(i), self._out(i)) + TWO_PI * self.nodes[i].k

    def _resync(self, i: int, estimate: float) -> None:
        node = self.nodes[i]
        node.k = round((estimate - _angle(self._in(i), self._out(i))) / TWO_PI)

    def turn_sign(self, i: int) -> int:
        """Exact sign of the turn at contact i."""
        k = self.nodes[i].k
        if k != 0:
            return 1 if k > 0 else -1
        cr = _cross(self._in(i), self._out(i))
        if cr != 0:
            return _sgn(cr)
        return 0 if _dot(self._in(i), self._out(i)) > 0 else 1

    def is_slack(self, i: int) -> bool:
        n = self.nodes[i]
        return n.kind == _CONTACT and n.side * self.turn_sign(i) < 0

    # main loop ---------------------------------------------------------------
    def run(self) -> None:
        for _ in range(MAX_ITER * 10):
            i = self._next_target()
            if i is None:
                return
            self._remove(i)
        raise NonConvergence(MAX_ITER * 10)

    def _next_target(self) -> Optional[int]:
        nodes = self.nodes
        first_pin = None
        for i in range(1, len(nodes) - 1):
            if self.is_slack(i):
                return i
            if first_pin is None and nodes[i].kind == _PIN:
                first_pin = i
        return first_pin

    def _remove(self, i: int) -> None:
        nodes = self.nodes
        P, v, N = nodes[i - 1], nodes[i], nodes[i + 1]
        if P.pt == N.pt:
            self._collapse_spike(i)
            return
        bend = _orient(P.pt, v.pt, N.pt)
        if bend == 0:
            # straight through or a spike: no puncture lies on the existing
            # pieces, so nothing is swept and no direction at P or N changes
            del nodes[i]
            return
        turn_p = self.turn(i - 1) if P.kind == _CONTACT else None
        turn_n = self.turn(i + 1) if N.kind == _CONTACT else None
        chain = self._hull_chain(P, v, N, bend)
        new = [_Node(_CONTACT, pt, c, bend) for c, pt in chain]
        nodes[i:i + 1] = new
        if turn_p is not None:
            self._resync(i - 1, turn_p + _angle(_sub(v.pt, P.pt), _sub(nodes[i].pt, P.pt)))
        for j in range(i, i + len(new)):
            self._resync(j, _angle(self._in(j), self._out(j)))
        jn = i + len(new)
        if turn_n is not None:
            self._resync(jn, turn_n - _angle(_sub(N.pt, v.pt), _sub(N.pt, nodes[jn - 1].pt)))
        self._absorb_ends()

    def _hull_chain(self, P: _Node, v: _Node, N: _Node, bend: int):
        """Punctures the string catches when vertex v is released.

        Gift-wrap from P to N over the lattice points of the closed triangle
        P v N (corners excluded): from each apex take the point reached first
        when a ray turns from the previous edge toward N, nearest on ties.
        """
        pool = [(c, pt) for c, pt in _lattice_in_triangle(P.pt, v.pt, N.pt)
                if pt != P.pt and pt != N.pt and pt != v.pt]
        pool.append((None, N.pt))
        chain = []
        apex = P.pt
        while True:
            best = pool[0]
            for cand in pool[1:]:
                o = _orient(apex, best[1], cand[1]) * bend
                if o < 0 or (o == 0 and _norm2(_sub(cand[1], apex)) < _norm2(_sub(best[1], apex))):
                    best = cand
            if best[0] is None:
                return chain
            chain.append(best)
            pool.remove(best)
            apex = best[1]

    def _collapse_spike(self, i: int) -> None:
        nodes = self.nodes
        P, N = nodes[i - 1], nodes[i + 1]
        if P.kind == _ANCHOR and N.kind == _ANCHOR:
            raise TrivialArc("the arc is homotopic to a constant path")
        if N.kind == _ANCHOR:
            del nodes[i - 1:i + 1]
        else:
            # retract the spike onto P; N is a duplicate of P's position
            if N.kind == _CONTACT and P.kind == _CONTACT:  # pragma: no cover
                raise NonConvergence("unexpected same-center spike between contacts")
            del nodes[i:i + 2]
        self._absorb_ends()

    def _absorb_ends(self) -> None:
        """A contact at the start (end) puncture next to the anchor slides off."""
        nodes = self.nodes
        changed = True
        while changed:
            changed = False
            if len(nodes) > 2 and nodes[1].kind == _CONTACT and nodes[1].pt == nodes[0].pt:
                del nodes[1]
                changed = True
            if len(nodes) > 2 and nodes[-2].kind == _CONTACT and nodes[-2].pt == nodes[-1].pt:
                del nodes[-2]
                changed = True
        if len(nodes) == 2 and nodes[0].pt == nodes[1].pt:
            raise TrivialArc("the arc is homotopic to a constant path")


def contact_word(vertices: Sequence[Sequence[float]], start: LatticePoint, end: LatticePoint) -> ContactWord:
    """Limit contact word of the polygonal arc through ``vertices``.

    The vertices are the interior of the arc: the string runs from the
    center of ``start`` through them to the center of ``end``.  Only the
    homotopy class matters, so edges need only avoid the puncture centers.
    """
    nodes = [_Node(_ANCHOR, (Fraction(start.l, 2), Fraction(start.m, 2)), start)]
    for x, y in vertices:
        pt = _fp(x, y)
        if pt != nodes[-1].pt:
            nodes.append(_Node(_PIN, pt))
    end_pt = (Fraction(end.l, 2), Fraction(end.m, 2))
    if nodes[-1].pt == end_pt and len(nodes) > 1:
        nodes.pop()
    nodes.append(_Node(_ANCHOR, end_pt, end))
    for a, b in zip(nodes, nodes[1:]):
        for c, pt in _lattice_in_triangle(a.pt, b.pt, b.pt):
            if pt != a.pt and pt != b.pt:
                raise NonConvergence(f"polyline edge passes through the puncture center {tuple(c)}")
    for n in nodes[1:-1]:
        if n.pt[0].denominator == 2 and n.pt[1].denominator == 2:
            raise NonConvergence("polyline vertex sits on a puncture center")
    puller = _Puller(nodes)
    puller.run()
    contacts = tuple(
        Contact(n.center, n.side, puller.turn(i)) for i, n in enumerate(nodes) if n.kind == _CONTACT
    )
    if not contacts and start == end:
        raise TrivialArc("the arc is homotopic to a constant path")
    return ContactWord(start, end, contacts)


def polyline_word(poly: Polyline) -> ContactWord:
    return contact_word(poly.vertices, poly.start, poly.end)


def word_from_sequence(disp: Sequence[tuple[int, int]], windings: Sequence[int],
                       start: LatticePoint) -> ContactWord:
    """Limit contact word realising given slopes and windings.

    Raises ValueError when the windings are not realisable by a taut string
    through the implied centers (wrong parity, or a zero winding where the
    string is not straight between same-side neighbours).
    """
    centers = [start]
    for p, q in disp:
        centers.append(centers[-1].shifted(p, q))
    n = len(windings)
    sides = [_sgn(m) for m in windings]
    for i, m in enumerate(windings):
        if m == 0:
            nb = [sides[j] for j in (i - 1, i + 1) if 0 <= j < n and sides[j] != 0]
            if not nb or len(set(nb)) != 1:
                raise ValueError(f"zero winding at contact {i + 1} needs neighbours on one side")
            sides[i] = nb[0]
    contacts = []
    for i, m in enumerate(windings):
        (ax, ay), (bx, by) = disp[i], disp[i + 1]
        s = sides[i]
        cross, dot = ax * by - ay * bx, ax * bx + ay * by
        base = s * math.atan2(cross, dot) % TWO_PI  # side-sense angle in [0, 2 pi)
        if cross == 0 and dot > 0:
            base = 0.0
        mag = abs(m)
        if cross != 0:
            lo = math.ceil(base / math.pi)
        else:
            j0 = round(base / math.pi)
            same = 0 < i < n - 1 and sides[i - 1] == s == sides[i + 1]
            lo = j0 if same else j0 + 1
        if mag < lo or (mag - lo) % 2:
            raise ValueError(f"winding {m} is not realisable at contact {i + 1}")
        if mag == 0 and not (0 < i < n - 1):
            raise ValueError(f"zero winding at contact {i + 1} needs two neighbours")
        contacts.append(Contact(centers[i + 1], s, s * (base + math.pi * (mag - lo))))
    return ContactWord(start, centers[-1], tuple(contacts))


# -- stage 2: finite eps ---------------------------------------------------------

@dataclass
class _Slot:
    center: LatticePoint
    side: int
    ref: float        # reference turn used to pick the 2 pi branch
    limit: bool       # belongs to the limit word


def _signed_radius(slot: Optional[_Slot], eps: float) -> float:
    return 0.0 if slot is None else slot.side * eps


def _geometry(start: LatticePoint, end: LatticePoint, slots: list[_Slot], eps: float):
    """Tangent pieces and finite turns for the slot list."""
    ends = [(start.xy, None)] + [(s.center.xy, s) for s in slots] + [(end.xy, None)]
    pieces = []
    for (c1, s1), (c2, s2) in zip(ends, ends[1:]):
        pieces.append(tangent_line(c1, _signed_radius(s1, eps), c2, _signed_radius(s2, eps)))
    turns = []
    for i, s in enumerate(slots):
        u_in, u_out = pieces[i][2], pieces[i + 1][2]
        a = signed_angle(u_in, u_out)
        turns.append(a + TWO_PI * round((s.ref - a) / TWO_PI))
    return pieces, turns


def realize(word: ContactWord, eps: float) -> TautPath:
    """Taut path of the word's homotopy class in the eps-punctured plane."""
    eps = check_eps(eps)
    slots = [_Slot(c.center, c.side, c.turn, True) for c in word.contacts]
    for _ in range(MAX_ITER):
        pieces, turns = _geometry(word.start, word.end, slots, eps)
        # (b) release contacts the string has pulled away from
        worst, worst_t = None, 0.0
        for i, (s, t) in enumerate(zip(slots, turns)):
            st = s.side * t
            limit_ok = st >= -TAU_TURN if s.limit else st > TAU_TURN
            if not limit_ok and (worst is None or st < worst_t):
                worst, worst_t = i, st
        if worst is not None:
            del slots[worst]
            continue
        # (c) catch punctures the straight pieces run into
        inserted = False
        for i, (t1, t2, _) in enumerate(pieces):
            a, b = _clip(pieces, i, word, slots, eps)
            hits = [c for c in segment_disk_conflicts(a, b, eps)]
            if not hits:
                continue
            x = hits[0]
            c_from = word.start if i == 0 else slots[i - 1].center
            c_to = word.end if i == len(slots) else slots[i].center
            side = _lattice_side(c_from, c_to, x)
            if side == 0:
                raise NonConvergence(f"puncture {tuple(x)} lies on the line of a taut piece at eps={eps}")
            slots.insert(i, _Slot(x, side, 0.0, False))
            inserted = True
            break
        if not inserted:
            return _build_path(word, slots, pieces, turns, eps)
    raise NonConvergence(MAX_ITER)


def _lattice_side(a: LatticePoint, b: LatticePoint, x: LatticePoint) -> int:
    return _sgn((b.l - a.l) * (x.m - a.m) - (b.m - a.m) * (x.l - a.l))


def _clip(pieces, i, word: ContactWord, slots, eps) -> tuple[Point, Point]:
    """Segment i with its free ends moved out of the anchor disks."""
    t1, t2, u = pieces[i]
    if i == 0:
        c = word.start.xy
        t1 = Point(c[0] + eps * u[0], c[1] + eps * u[1])
    if i == len(pieces) - 1:
        c = word.end.xy
        t2 = Point(c[0] - eps * u[0], c[1] - eps * u[1])
    return t1, t2


def _build_path(word, slots, pieces, turns, eps) -> TautPath:
    segs = []
    for i in range(len(pieces)):
        a, b = _clip(pieces, i, word, slots, eps)
        frm = None if i == 0 else slots[i - 1].center
        to = None if i == len(pieces) - 1 else slots[i].center
        segs.append(TangentSegment(a, b, frm, to))
    arcs = []
    for i, (s, t) in enumerate(zip(slots, turns)):
        if abs(t) < TAU_TURN:
            t = 0.0
        p = segs[i].end
        c = s.center.xy
        arcs.append(ContactArc(s.center, math.atan2(p[1] - c[1], p[0] - c[0]), t, s.side))
    path = TautPath(tuple(segs), tuple(arcs), eps, word.start, word.end)
    object.__setattr__(path, "_extra", tuple(not s.limit for s in slots))
    return path


def tauten(poly: Polyline, eps: Optional[float] = None) -> TautPath:
    """Minimal-length path homotopic to ``poly`` in the eps-punctured plane."""
    return realize(polyline_word(poly), poly.eps if eps is None else eps)


# -- reading integers off a path ------------------------------------------------

def winding_integer(turn: float) -> int:
    """Signed m with (|m| - 1) pi < |turn| <= |m| pi."""
    mag = math.ceil(abs(turn) / math.pi - TAU_TURN)
    return mag if turn > 0 else -mag


def path_sequence(path: TautPath) -> tuple[int, ...]:
    flat: list[int] = []
    for i, seg in enumerate(path.segments):
        flat += list(grid_crossings(seg))
        if i < path.n:
            flat.append(winding_integer(path.arcs[i].turn))
    return tuple(flat)


def detect_arc_reduction(path: TautPath) -> Optional[int]:
    """Least index i (0-based into ``path.arcs``) of an arc-reduction site.

    Pattern: arcs i-1 and i+1 wind in opposite directions, arc i turns less
    than pi, and its center lies on the side of the segment from center i-1
    to center i+1 that the path keeps it on.
    """
    arcs = path.arcs
    for i in range(1, len(arcs) - 1):
        a, b, c = arcs[i - 1], arcs[i], arcs[i + 1]
        if a.side == c.side or abs(b.turn) >= math.pi:
            continue
        if _lattice_side(a.center, c.center, b.center) == b.side:
            return i
    return None


def has_extra_contacts(path: TautPath) -> bool:
    return any(getattr(path, "_extra", ()))


# -- simplification -------------------------------------------------------------

@dataclass(frozen=True)
class SimplifiedTautPath:
    path: TautPath
    epsilon_final: float
    shrink_steps: int
    word: ContactWord = field(repr=False, compare=False, default=None)


def simplify(source: Union[Polyline, ContactWord], eps0: float = 0.1) -> SimplifiedTautPath:
    """Tauten, then halve eps until the extracted sequence is stable.

    Stops when two consecutive eps values give the same integer sequence,
    the path admits no arc reduction, and it rests on exactly the punctures
    of the limit word.
    """
    word = source if isinstance(source, ContactWord) else polyline_word(source)
    eps = check_eps(eps0)
    prev = None
    steps = 0
    while True:
        try:
            path = realize(word, eps)
            seq = path_sequence(path)
        except NonConvergence:
            path, seq = None, None
        if (path is not None and seq == prev and detect_arc_reduction(path) is None
                and not has_extra_contacts(path)):
            return SimplifiedTautPath(path, eps, steps, word)
        prev = seq
        eps /= 2
        steps += 1
        if eps < MIN_EPS:
            raise ShrinkLimit(f"no stable parameterization above eps={MIN_EPS}")


def stabilization_report(simple: SimplifiedTautPath) -> list[str]:
    """Contacts violating the stabilization bracket (empty when certified).

    With r0 the limit turn and m the extracted winding, checks
    (|m|-1) pi <= |r0| <= |turn| <= |m| pi.  The lower bound is closed and the
    upper bound is only required when |r0| is not a multiple of pi: at
    multiples the finite turn sits just above |r0| whenever the neighbours
    are not on the same side.
    """
    word, path = simple.word, simple.path
    out = []
    for i, (c, m) in enumerate(zip(word.contacts, word.windings())):
        r0 = abs(c.turn)
        r = abs(path.arcs[i].turn)
        mag = abs(m)
        on_multiple = abs(r0 / math.pi - round(r0 / math.pi)) < 1e-9
        if not (mag - 1) * math.pi - 1e-9 <= r0 <= r + 1e-9:
            out.append(f"contact {i + 1}: limit turn {r0:.6g} outside bracket of m={m}")
        elif not on_multiple and r > mag * math.pi + 1e-9:
            out.append(f"contact {i + 1}: turn {r:.6g} exceeds {mag} pi")
    return out


def replace_eps(poly: Polyline, eps: float) -> Polyline:
    return replace(poly, eps=eps)
