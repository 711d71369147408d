import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautknot.errors import InputError, InvalidSequence
from tautknot.geometry import ContactArc, LatticePoint, Point, TangentSegment, TautPath
from tautknot.paramcode import (
    ParamSequence, TorusArcInput, extract, lift_and_parameterize, reconstruct, reconstruct_full,
    sequence_word, validate,
)
from tautknot.sampling import random_sequence
from tautknot.tauten import SimplifiedTautPath, simplify

FIG2_TEXT = "(2,1,1,1,1,1,0,1,1,-1,1,-1,-1,3,3,-1,-1,-2,-1,1,1,0,1,-3,1)"


def test_text_round_trip():
    s = ParamSequence.parse("(1, 1, 2, 1, -1)")
    assert s.triples == ((1, 1, 2),) and s.tail == (1, -1) and s.n == 1
    assert str(s) == "(1,1,2,1,-1)"
    assert ParamSequence.from_flat(s.flat()) == s


@pytest.mark.parametrize("text", ["(1,2,3)", "(1)", "()", "(1,a)"])
def test_parse_rejects(text):
    with pytest.raises(InvalidSequence):
        ParamSequence.parse(text)


@pytest.mark.parametrize("text, problem", [
    ("(1,0)", None),
    ("(0,-1)", None),
    ("(1,-1)", None),
    ("(3,-2)", None),
    ("(2,4)", "coprimality at 1"),
    ("(1,0,1,2,2)", "p=±q requires values in {1,−1} at 2"),
    ("(0,0)", "zero slope pair at 1"),
    ("(0,2)", "zero-partner must be +-1 at 1"),
])
def test_validate(text, problem):
    got = validate(ParamSequence.parse(text))
    assert got == ([] if problem is None else [problem])


def test_figure2_sequence_is_malformed():
    # 25 entries cannot be split as 3n + 2
    with pytest.raises(InvalidSequence):
        ParamSequence.parse(FIG2_TEXT)


def test_extract_reads_crossings_and_turns():
    segs = (TangentSegment(Point(0.6, 0.5), Point(1.4, 0.6)), TangentSegment(Point(1.6, 0.4), Point(1.7, 1.4)))
    arcs = (ContactArc(LatticePoint(3, 1), 0.0, 3.5, 1),)
    path = TautPath(segs, arcs, 0.1, LatticePoint(1, 1), LatticePoint(3, 3))
    assert str(extract(SimplifiedTautPath(path, 0.1, 1))) == "(1,0,2,0,1)"


def test_reconstruct_straight():
    poly = reconstruct(ParamSequence.parse("(1,0)"), 0.1)
    assert poly.start == LatticePoint(1, 1) and poly.end == LatticePoint(3, 1)
    assert poly.violations() == []
    path = simplify(poly).path
    assert path.n == 0
    assert path.segments[0].start[1] == pytest.approx(0.5)


def test_reconstruct_single_arc():
    poly = reconstruct(ParamSequence.parse("(1,1,2,1,-1)"), 0.1)
    out = simplify(poly)
    assert out.path.n == 1 and len(out.path.segments) == 2
    arc = out.path.arcs[0]
    assert arc.center == LatticePoint(3, 3) and math.pi < arc.turn <= 2 * math.pi
    assert str(extract(out)) == "(1,1,2,1,-1)"


@pytest.mark.parametrize("text", ["(2,4)", "(1,0,3,-1,0)", "(1,0,0,1,0)"])
def test_reconstruct_rejects(text):
    with pytest.raises(InvalidSequence):
        reconstruct(ParamSequence.parse(text))


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_round_trip_and_conservation(seed):
    seq = random_sequence(random.Random(seed))
    rec = reconstruct_full(seq, 0.1)
    poly = rec.polyline
    assert poly.violations() == []
    assert poly.start.displacement_to(poly.end) == seq.displacement()
    got = extract(simplify(poly))
    assert got == seq and validate(got) == []


def test_reconstruct_reports_eps_used():
    rec = reconstruct_full(ParamSequence.parse("(1,1,2,1,-1)"), 0.45)
    assert rec.eps_used <= 0.45 and rec.polyline.eps == rec.eps_used / 2


def _torus(points):
    v = [(x % 1, y % 1) for x, y in points]
    v[0] = v[-1] = (0.5, 0.5)
    return TorusArcInput(tuple(v))


def test_lift_meridian_loop():
    assert str(lift_and_parameterize(TorusArcInput(((0.5, 0.5), (0.9, 0.5), (0.1, 0.5), (0.5, 0.5))))) == "(1,0)"
    assert str(lift_and_parameterize(TorusArcInput(((0.5, 0.5), (0.5, 0.5)), ((1, 0),)))) == "(1,0)"


def test_lift_torus_knot_line():
    pts = [(0.5 + 2 * t / 40, 0.5 + 3 * t / 40) for t in range(41)]
    seq = lift_and_parameterize(_torus(pts))
    assert seq.displacement() == (2, 3)
    assert all(m in (-1, 0, 1) for m in seq.windings())


def test_lift_ignores_collinear_vertices():
    pts = [(0.5 + 2 * t / 40, 0.5 + 3 * t / 40) for t in range(41)]
    wiggle = [(x + 0.2 * math.sin(math.pi * i / 8), y) for i, (x, y) in enumerate(pts)]
    base = lift_and_parameterize(_torus(wiggle))
    dense = []
    for a, b in zip(wiggle, wiggle[1:]):
        dense += [a, ((2 * a[0] + b[0]) / 3, (2 * a[1] + b[1]) / 3)]
    dense.append(wiggle[-1])
    assert lift_and_parameterize(_torus(dense)) == base


@pytest.mark.parametrize("verts, shifts", [
    (((0.5, 0.5), (0.2, 0.2)), None),
    (((0.5, 0.5), (1.5, 0.5), (0.5, 0.5)), None),
    (((0.5, 0.5), (0.5, 0.5), (0.5, 0.5)), None),
    (((0.5, 0.5), (0.5, 0.5)), ((1, 0), (0, 1))),
])
def test_torus_input_checks(verts, shifts):
    with pytest.raises(InputError):
        TorusArcInput(verts, shifts)


def test_sequence_word_start():
    w = sequence_word(ParamSequence.parse("(1,0)"), LatticePoint(-1, 3))
    assert w.end == LatticePoint(1, 3)
