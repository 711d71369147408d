"""Exception hierarchy shared by all modules."""


class TautKnotError(Exception):
    """Base class for every error raised by the package."""


class InputError(TautKnotError, ValueError):
    """Malformed or out-of-domain user input (CLI exit code 2)."""


class ComputationError(TautKnotError, RuntimeError):
    """A computation that could not complete (CLI exit code 3)."""


# core_geometry
class DegenerateTangent(ComputationError):
    pass


class GridTouch(ComputationError):
    pass


# tauten
class NonConvergence(ComputationError):
    pass


class ShrinkLimit(ComputationError):
    pass


class TrivialArc(InputError):
    """The arc is homotopic to a constant path at its start puncture."""


# paramcode
class InvalidTaut(ComputationError):
    pass


class InvalidSequence(InputError):
    pass


class InfeasibleEpsilon(ComputationError):
    pass


# contfrac
class CFDivisionByZero(ComputationError, ZeroDivisionError):
    def __init__(self, suffix):
        self.suffix = tuple(suffix)
        super().__init__(f"continued fraction suffix {list(self.suffix)} evaluates to 0")


class NotExpandable(InputError):
    pass
