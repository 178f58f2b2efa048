"""Pipeline errors carrying the data of the failing step."""

from __future__ import annotations


class ShaliftError(Exception):
    """Base class for pipeline failures."""


class InputError(ShaliftError):
    """Malformed or inconsistent input data."""


class NotAHomotopyAction(ShaliftError):
    """The supplied lift fails a low-arity relation (a map is not a chain map, ...)."""


class UnitNotHomotopicToIdentity(ShaliftError):
    def __init__(self, residual=None):
        super().__init__("alpha(1) is not homotopic to the identity")
        self.residual = residual


class NoHomotopy(ShaliftError):
    """A defect m2(ab) - m2(a) m2(b) is not nullhomotopic."""

    def __init__(self, i: int, j: int, defect=None):
        super().__init__(f"defect of basis pair ({i}, {j}) is not nullhomotopic")
        self.pair = (i, j)
        self.defect = defect


class TodaViolation(ShaliftError):
    """The obstruction c_N is a chain map that is not nullhomotopic."""

    def __init__(self, N: int, tup=None, obstruction=None):
        loc = f" on tuple {tup}" if tup is not None else ""
        super().__init__(f"no m_{N}: obstruction class{loc} is nonzero")
        self.N = N
        self.tuple = tup
        self.obstruction = obstruction


class InternalSignError(ShaliftError):
    """An identity that holds for every valid input failed: an implementation fault."""


class ComparisonFailed(ShaliftError):
    pass
