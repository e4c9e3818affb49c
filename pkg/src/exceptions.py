"""
Defines custom exception classes for the library.

This module establishes a hierarchy of exceptions used to signal specific
error conditions in exact field arithmetic, Lie algebra realizations,
Belavin-Drinfeld triple combinatorics, r-matrix construction and the
cohomology computations. The CLI and the HTTP layer translate these into exit
codes and status codes respectively.
"""

from typing import Optional


class BDCohomologyError(Exception):
    """Base exception for all library-specific errors."""

    pass


# --- Field tower ---


class FieldError(BDCohomologyError):
    """Base exception for errors raised by exact field arithmetic."""

    pass


class DivisionByZero(FieldError):
    """Raised when dividing by the zero element."""

    pass


class ZeroElement(FieldError):
    """Raised when an operation requires a nonzero element and got zero."""

    pass


class MixedTowerElement(FieldError):
    """Raised when the valuation is not fixed by a single leading monomial."""

    pass


class NotConstructivelyRepresentable(FieldError):
    """
    Raised when an element exists in C((h)) but has no representative in any
    finite square-root tower over rational functions (e.g. the square root of
    1 + h).
    """

    def __init__(self, message: str, element: Optional[str] = None):
        self.element = element
        super().__init__(message)


class NotInBaseField(FieldError):
    """Raised when an operation defined on K receives a proper tower element."""

    pass


class AutomorphismTowerMismatch(FieldError):
    """Raised when a Galois element does not act on all generators of an element."""

    pass


class NoConsistentExtension(FieldError):
    """Raised when an automorphism admits no extension to a larger tower."""

    pass


class FieldParseError(FieldError):
    """Raised when the textual form of a field element cannot be parsed."""

    pass


# --- Lie algebra ---


class AlgebraError(BDCohomologyError):
    """Base exception for errors in matrix realizations of the algebras."""

    pass


class UnsupportedRank(AlgebraError):
    """Raised when the series or rank has no supported realization."""

    def __init__(self, message: str, series: Optional[str] = None, rank: int = 0):
        self.series = series
        self.rank = rank
        super().__init__(message)


class IndexOutOfRange(AlgebraError):
    """Raised when a simple root index is outside 1..n."""

    pass


class NotInAlgebra(AlgebraError):
    """Raised when a matrix is not in the span of the algebra basis."""

    pass


class DegenerateForm(AlgebraError):
    """Raised when the invariant form is degenerate on the basis."""

    pass


class SizeMismatch(AlgebraError):
    """Raised when a matrix does not have the size of the realization."""

    pass


class NotInGroup(AlgebraError):
    """Raised when a matrix fails X^T B X = B or det X = 1."""

    pass


class NotInTorus(AlgebraError):
    """Raised when a group element is not a diagonal torus element."""

    pass


# --- Triples ---


class TripleError(BDCohomologyError):
    """Base exception for Belavin-Drinfeld triple errors."""

    pass


class MalformedBijection(TripleError):
    """Raised when tau is not a bijection between subsets of simple roots."""

    pass


class BudgetExceeded(TripleError):
    """Raised when an exhaustive enumeration exceeds the configured rank budget."""

    def __init__(self, message: str, rank: int = 0, budget: int = 0):
        self.rank = rank
        self.budget = budget
        super().__init__(message)


# --- r-matrices ---


class RMatrixError(BDCohomologyError):
    """Base exception for r-matrix construction and verification."""

    pass


class Inconsistent(RMatrixError):
    """
    Raised when the linear conditions on r0 have no solution. For an
    admissible triple this is an internal failure.
    """

    pass


class InvalidRZero(RMatrixError):
    """Raised when a supplied r0 violates the symmetric-part or root conditions."""

    pass


class IrrationalSpectrum(RMatrixError):
    """Raised when an endomorphism has eigenvalues outside the rationals."""

    pass


# --- Cohomology ---


class CohomologyError(BDCohomologyError):
    """Base exception for cocycle computations."""

    pass


class BlockHypothesisViolated(CohomologyError):
    """Raised when X^{-1} sigma(X) is not block diagonal of the requested shape."""

    pass


class NotACocycle(CohomologyError):
    """Raised when a matrix is not a cocycle of the requested kind."""

    def __init__(self, message: str, kind: Optional[str] = None):
        self.kind = kind
        super().__init__(message)


class NotTwistedCocycle(NotACocycle):
    """Raised when a matrix cannot be written as R J D for a twisted cocycle."""

    def __init__(self, message: str):
        super().__init__(message, kind="twisted")


class FormsInequivalent(CohomologyError):
    """Raised when two quadratic or symplectic forms are not congruent."""

    pass


class SingularD(CohomologyError):
    """Raised when a diagonal datum has a zero entry."""

    pass
