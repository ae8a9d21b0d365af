"""
Exception hierarchy for the toolkit
"""
from typing import Optional, Tuple


class ToolkitError(Exception):
    """Base class for every error raised on purpose by the toolkit"""


# Polynomial arithmetic

class PolynomialError(ToolkitError):
    """Raised when a Laurent-polynomial operation leaves the integer ring"""


class NonUnitCoefficientAtNegativeExponent(PolynomialError):
    pass


class NegativeExponentSubstitution(PolynomialError):
    pass


class ZeroAtNegativeExponent(PolynomialError):
    pass


class NonIntegralResult(PolynomialError):
    pass


# Matroids

class MatroidError(ToolkitError):
    """Raised when a matroid cannot be built or combined"""


class UnderlyingMatroidMismatch(MatroidError):
    pass


class GroundSetTooLarge(MatroidError):
    pass


class RankExceedsSize(MatroidError):
    pass


class HeightMismatch(MatroidError):
    pass


class NonpositiveMultiplicity(MatroidError):
    pass


class NotAMatroid(MatroidError):
    """Rank table violates the matroid axioms"""

    def __init__(self, message: str, counterexample: Optional[Tuple[int, ...]] = None):
        super().__init__(message)
        self.counterexample = counterexample


# Spec documents

class SpecDocumentError(ToolkitError):
    """Raised when a spec document cannot be turned into a MatroidSpec"""


class MalformedDocument(SpecDocumentError):
    pass


class UnknownKind(SpecDocumentError):
    pass


class BadSubsetKey(SpecDocumentError):
    pass


class TableSizeMismatch(SpecDocumentError):
    pass
