"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the command line can
map it to an exit status and a report entry.
"""

from __future__ import annotations


class PreLieError(Exception):
    """Base class for all errors raised by this package."""

    code = "Error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class InputError(PreLieError):
    """Malformed or inconsistent input (shapes, parse failures)."""

    code = "InputError"


class MathError(PreLieError):
    """An object fails the identity it is required to satisfy."""

    code = "MathError"


class ResourceLimit(PreLieError):
    code = "ResourceLimit"


# linear algebra
class SingularMatrix(MathError):
    code = "SingularMatrix"


class NonSquare(InputError):
    code = "NonSquare"


class ImageNotInKernel(MathError):
    code = "ImageNotInKernel"


class ParseError(InputError):
    code = "ParseError"


class ShapeMismatch(InputError):
    code = "ShapeMismatch"


class IndexOutOfRange(InputError):
    code = "IndexOutOfRange"


# algebras and representations
class NotPreLie(MathError):
    code = "NotPreLie"


class NotLie(MathError):
    code = "NotLie"


class NotCommAssoc(MathError):
    code = "NotCommAssoc"


class NotHomomorphism(MathError):
    code = "NotHomomorphism"


class FlavorMismatch(InputError):
    code = "FlavorMismatch"


class AlgebraMismatch(InputError):
    code = "AlgebraMismatch"


class NotRepresentation(MathError):
    code = "NotRepresentation"


# complexes
class NotAComplex(MathError):
    code = "NotAComplex"


class ArityMismatch(InputError):
    code = "ArityMismatch"


# constructions
class NotDerivation(MathError):
    code = "NotDerivation"


class Degenerate(MathError):
    code = "Degenerate"


class NotCocycle(MathError):
    code = "NotCocycle"


class NotRotaBaxter(MathError):
    code = "NotRotaBaxter"


class NotNijenhuis(MathError):
    code = "NotNijenhuis"


class NotOOperator(MathError):
    code = "NotOOperator"


class NotSymmetric(InputError):
    code = "NotSymmetric"


class NotSMatrix(MathError):
    code = "NotSMatrix"


class NotCompatible(MathError):
    code = "NotCompatible"


class SingularT2(MathError):
    code = "SingularT2"


class CrossCheckMismatch(MathError):
    """Two independent formulations disagree; signals an internal bug."""

    code = "CrossCheckMismatch"


# deformations
class NotClosed(MathError):
    code = "NotClosed"


class NotNijenhuisPair(MathError):
    code = "NotNijenhuisPair"


class TripleMismatch(InputError):
    code = "TripleMismatch"
