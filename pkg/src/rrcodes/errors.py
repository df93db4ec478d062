"""Exception hierarchy.

Every error carries a short machine name (the class name) so the CLI can
report it verbatim and map it to an exit code.
"""

from __future__ import annotations


class RRCodesError(Exception):
    """Base class for all library errors."""

    exit_code = 2

    @property
    def name(self) -> str:
        return type(self).__name__


class InvalidInput(RRCodesError):
    pass


# field layer
class NotPrime(InvalidInput):
    pass


class PEqualsThree(InvalidInput):
    pass


class ReducibleModulus(InvalidInput):
    pass


class DivisionByZero(InvalidInput):
    pass


class NotACube(InvalidInput):
    pass


class ZeroInput(InvalidInput):
    pass


class WrongResidueClass(InvalidInput):
    pass


class ContextMismatch(InvalidInput):
    pass


# ring / polynomial layer
class NotAUnit(InvalidInput):
    pass


class ZeroPolynomial(InvalidInput):
    pass


class DegreeTooLarge(InvalidInput):
    pass


class ShapeMismatch(InvalidInput):
    pass


class LengthMismatch(InvalidInput):
    pass


class ProductMismatch(RRCodesError):
    exit_code = 1


# code layer
class RangeViolation(InvalidInput):
    pass


class ZNotInvertible(InvalidInput):
    pass


class MuNotBelowIm(InvalidInput):
    pass


class UnsupportedCase(InvalidInput):
    pass


class NotCube(InvalidInput):
    pass


class AmbientMismatch(InvalidInput):
    pass


class InvariantFailure(RRCodesError):
    """An internal postcondition did not hold."""

    exit_code = 1


class FormulaDiscrepancy(RRCodesError):
    """A transcribed closed-form dual disagrees with the linear-algebra oracle.

    ``synthesized`` and ``expected`` hold the two subspaces (oracle bases) so
    callers can inspect the disagreement.
    """

    exit_code = 3

    def __init__(self, message: str, branch: str, synthesized=None, expected=None):
        super().__init__(message)
        self.branch = branch
        self.synthesized = synthesized
        self.expected = expected
