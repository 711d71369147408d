"""Tight integer parameterizations of arcs in the punctured plane and of (1,1)-knots."""

from .contfrac import Rational, cf_eval, convergents, even_expand, palindrome_check
from .errors import (
    CFDivisionByZero, ComputationError, DegenerateTangent, GridTouch, InfeasibleEpsilon,
    InputError, InvalidSequence, InvalidTaut, NonConvergence, NotExpandable, ShrinkLimit,
    TautKnotError, TrivialArc,
)
from .geometry import ContactArc, LatticePoint, Point, Polyline, TangentSegment, TautPath, bitangent, grid_crossings
from .paramcode import ParamSequence, TorusArcInput, extract, lift_and_parameterize, reconstruct, validate
from .satellite import SatelliteSpec, algorithm1, associated_sequence, tight_pair
from .tauten import ContactWord, SimplifiedTautPath, detect_arc_reduction, simplify

__version__ = "0.1.0"
