import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import local_moves, random_polyline, representatives
from tautknot.errors import NonConvergence, TrivialArc
from tautknot.geometry import ContactArc, LatticePoint, Point, Polyline, TangentSegment, TautPath
from tautknot.paramcode import ParamSequence, extract, reconstruct, sequence_word
from tautknot.sampling import random_sequence
from tautknot.tauten import (
    contact_word, detect_arc_reduction, path_sequence, polyline_word, realize, simplify,
    stabilization_report, tauten, winding_integer,
)

W0 = LatticePoint(1, 1)

# from the w0 circle, once counterclockwise around (1.5, 0.5), on to (2.5, 0.5)
LOOP = Polyline(
    ((0.6, 0.5), (1.2, 0.2), (1.8, 0.2), (1.8, 0.8), (1.2, 0.8), (1.2, 0.15), (2.4, 0.5)),
    W0, LatticePoint(5, 1), 0.1,
)


def test_straight_segment_unchanged():
    poly = Polyline(((0.6, 0.5), (1.4, 0.5)), W0, LatticePoint(3, 1), 0.1)
    path = tauten(poly)
    assert path.n == 0
    seg = path.segments[0]
    assert seg.start == pytest.approx((0.6, 0.5)) and seg.end == pytest.approx((1.4, 0.5))


def test_loop_around_one_puncture():
    path = tauten(LOOP)
    assert path.n == 1 and len(path.segments) == 2
    arc = path.arcs[0]
    assert arc.center == LatticePoint(3, 1)
    # one full loop beyond the straight line: the limit turn is exactly 2 pi
    assert 2 * math.pi < arc.turn < 3 * math.pi
    assert path.length < LOOP.length
    for ok, length in local_moves(path):
        assert not ok or length >= path.length - 1e-9


def test_path_pieces_join_up():
    path = realize(sequence_word(ParamSequence.parse("(1,1,2,1,-1,1,0,1)")), 0.1)
    for seg, arc, nxt in zip(path.segments, path.arcs, path.segments[1:]):
        assert math.dist(seg.end, arc.point_at(arc.angle_start, path.eps)) < 1e-12
        assert math.dist(nxt.start, arc.point_at(arc.angle_end, path.eps)) < 1e-12


def test_trivial_arc():
    poly = Polyline(((0.6, 0.5), (0.9, 0.9), (0.5, 0.6)), W0, W0, 0.1)
    with pytest.raises(TrivialArc):
        tauten(poly)


def test_edge_through_center_rejected():
    with pytest.raises(NonConvergence):
        contact_word([(0.6, 0.5), (2.4, 0.5)], W0, LatticePoint(7, 1))


def test_limit_word_windings():
    word = polyline_word(LOOP)
    assert word.sequence() == (1, 0, 3, 1, 0)
    assert word.contacts[0].dir == 1 and word.contacts[0].wraps == 1


@pytest.mark.parametrize("turn, m", [(3.5, 2), (-3.5, -2), (math.pi, 1), (0.1, 1), (-7.0, -3), (0.0, 0)])
def test_winding_integer(turn, m):
    assert winding_integer(turn) == m


def _fake_path(centers, sides, turns):
    arcs = tuple(ContactArc(LatticePoint(*c), 0.0, t, s) for c, s, t in zip(centers, sides, turns))
    segs = tuple(TangentSegment(Point(0, 0), Point(1, 1)) for _ in range(len(arcs) + 1))
    return TautPath(segs, arcs, 0.1, LatticePoint(-1, -1), LatticePoint(9, 9))


def test_arc_reduction_pattern():
    # (1.5,1.5) lies left of (0.5,0.5)->(2.5,0.5) and the path keeps it on its left
    centers = [(1, 1), (3, 3), (5, 1)]
    assert detect_arc_reduction(_fake_path(centers, [1, 1, -1], [2.0, 0.5, -2.0])) == 1
    assert detect_arc_reduction(_fake_path(centers, [1, -1, -1], [2.0, -0.5, -2.0])) is None
    assert detect_arc_reduction(_fake_path(centers, [1, 1, 1], [2.0, 0.5, 2.0])) is None
    assert detect_arc_reduction(_fake_path(centers, [1, 1, -1], [2.0, 3.5, -2.0])) is None
    assert detect_arc_reduction(_fake_path(centers[:1], [1], [2.0])) is None


def test_simplify_already_simple():
    poly = Polyline(((0.6, 0.5), (1.4, 0.5)), W0, LatticePoint(3, 1), 0.1)
    out = simplify(poly)
    assert out.shrink_steps == 1 and out.epsilon_final == 0.05
    assert str(extract(out)) == "(1,0)"


def test_simplify_drops_fat_disk_contacts():
    word = sequence_word(ParamSequence.parse("(1,-1,1,2,1,-1,1,-1)"), LatticePoint(1, 5))
    fat = realize(word, 0.45)
    assert fat.n == 6
    out = simplify(word, 0.45)
    assert out.path.n == 2
    assert str(extract(out)) == "(1,-1,1,2,1,-1,1,-1)"


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_sequence_word_reproduces_windings(seed):
    seq = random_sequence(random.Random(seed))
    assert sequence_word(seq).sequence() == seq.flat()


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_homotopy_invariance(seed):
    rng = random.Random(seed)
    poly = random_polyline(rng)
    try:
        ref = simplify(poly)
    except TrivialArc:
        return
    seq = extract(ref)
    for rep in representatives(poly, rng, 3):
        other = simplify(rep)
        assert extract(other) == seq
        assert abs(other.path.length - ref.path.length) <= 1e-8


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_stabilization_and_halving(seed):
    seq = random_sequence(random.Random(seed))
    out = simplify(reconstruct(seq))
    assert stabilization_report(out) == []
    assert path_sequence(realize(out.word, out.epsilon_final / 2)) == seq.flat()
    again = simplify(out.word, out.epsilon_final)
    assert extract(again) == seq


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_taut_length_not_above_input(seed):
    rng = random.Random(seed)
    poly = random_polyline(rng)
    try:
        path = tauten(poly)
    except TrivialArc:
        return
    assert path.length <= poly.length + 1e-9
