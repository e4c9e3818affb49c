"""
Shared types and constructions for Belavin-Drinfeld cocycles.

This module holds the result types exchanged by the classifiers and the
pieces both kinds of cocycle need: the Galois condition X^{-1} sigma(X) in
C(r), the block decomposition X = Q K with Q over K, torus elements built
from prescribed characters, and root-group unipotents used by probes.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from src.core import matrices as mx
from src.core.bd_triples import AdmissibleTriple
from src.core.field_tower import (
    GaloisElement,
    Scalar,
    galois_group,
    sqrt_witness,
)
from src.core.lie_algebra import (
    AlgebraRep,
    TorusElement,
    basis_matrix,
    character_value,
    group_inverse,
)
from src.core.matrices import Matrix
from src.core.r_matrix import centralizer_contains
from src.core.root_system import Series
from src.exceptions import (
    BlockHypothesisViolated,
    NotConstructivelyRepresentable,
    NotInTorus,
    SingularD,
)

logger = logging.getLogger(__name__)


class CocycleKind(str, Enum):
    NONTWISTED = "nontwisted"
    TWISTED = "twisted"


@dataclass(frozen=True)
class DiagonalDatum:
    """A diagonal matrix diag(d_1, ..., d_M) over a tower."""

    entries: Tuple[Scalar, ...]

    @classmethod
    def from_matrix(cls, D: Matrix) -> "DiagonalDatum":
        if not mx.is_diagonal(D):
            raise SingularD("Diagonal datum expected, got a non-diagonal matrix.")
        return cls(tuple(mx.diagonal(D)))

    def check_nonsingular(self) -> None:
        for k, d in enumerate(self.entries, start=1):
            if mx.normalize(d) == 0:
                raise SingularD(f"Diagonal entry {k} is zero.")

    def matrix(self) -> Matrix:
        return mx.diag(self.entries)

    def inverse(self) -> "DiagonalDatum":
        self.check_nonsingular()
        return DiagonalDatum(tuple(mx.reciprocal(d) for d in self.entries))

    def times(self, other: "DiagonalDatum") -> "DiagonalDatum":
        return DiagonalDatum(
            tuple(mx.normalize(a * b) for a, b in zip(self.entries, other.entries))
        )


@dataclass(frozen=True)
class Cocycle:
    """A verified cocycle of one kind together with any factors computed for it."""

    matrix: Matrix
    kind: CocycleKind
    triple: AdmissibleTriple
    witnesses: Mapping[str, Matrix] = field(default_factory=dict)


@dataclass(frozen=True)
class CohomologyClass:
    label: str
    representative: Cocycle
    parameter: Optional[Scalar] = None


@dataclass(frozen=True)
class CohomologySet:
    """
    The classes of one cohomology set in canonical order. `finite` is False
    when the classes are a sample of an infinite set.
    """

    triple: AdmissibleTriple
    kind: CocycleKind
    classes: Tuple[CohomologyClass, ...]
    finite: bool = True
    note: str = ""

    @property
    def count(self) -> int:
        return len(self.classes)

    def labels(self) -> List[str]:
        return [c.label for c in self.classes]


@dataclass(frozen=True)
class Reduction:
    """X = Q * representative * C. Q and C are None only for hand-built labels."""

    label: str
    representative: Matrix
    Q: Optional[Matrix] = None
    C: Optional[Matrix] = None

    def has_witnesses(self) -> bool:
        return self.Q is not None and self.C is not None


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    label1: str
    label2: str
    Q: Optional[Matrix] = None
    C: Optional[Matrix] = None


# --- Centralizer and Galois conditions ---


def in_centralizer(algebra: AlgebraRep, triple: AdmissibleTriple, Y: Matrix) -> bool:
    """Y in C(r): a torus element with simple-root characters constant on strings."""
    try:
        return centralizer_contains(algebra, triple, Y)
    except NotInTorus:
        return False


def galois_twist(algebra: AlgebraRep, X: Matrix, sigma: GaloisElement) -> Matrix:
    """X^{-1} sigma(X) for X in the group."""
    return mx.mul(group_inverse(algebra, X), mx.apply_galois(sigma, X))


def galois_condition(
    algebra: AlgebraRep,
    triple: AdmissibleTriple,
    X: Matrix,
    group: Sequence[GaloisElement],
) -> bool:
    for sigma in group:
        if not in_centralizer(algebra, triple, galois_twist(algebra, X, sigma)):
            logger.debug(f"Galois condition fails for {sigma.describe()}")
            return False
    return True


# --- Block decomposition ---


def block_decompose(
    X: Matrix, blocks: Optional[Sequence[Sequence[int]]] = None
) -> Tuple[Matrix, Matrix]:
    """
    Writes X = Q K with Q over K and K block diagonal on the given index blocks
    (singletons by default).

    Each block of columns spans a Galois-stable subspace, so the normalized
    basis C A^{-1} of that span is defined over K and A is the block of K.

    Raises:
        BlockHypothesisViolated: if some X^{-1} sigma(X) leaves the block shape
            or the recovered Q is not over K.
    """
    m = len(X)
    groups = [list(b) for b in blocks] if blocks else [[i] for i in range(m)]
    if sorted(i for g in groups for i in g) != list(range(m)):
        raise BlockHypothesisViolated("Blocks must partition the matrix indices.")
    if mx.is_over_base(X):
        return X, mx.identity(m)

    owner = {i: k for k, g in enumerate(groups) for i in g}
    X_inv = mx.inverse(X)
    for sigma in galois_group(mx.matrix_tower(X)):
        twisted = mx.mul(X_inv, mx.apply_galois(sigma, X))
        for i in range(m):
            for j in range(m):
                if owner[i] != owner[j] and mx.normalize(twisted[i][j]) != 0:
                    raise BlockHypothesisViolated(
                        f"X^-1 sigma(X) has entry ({i + 1},{j + 1}) across blocks "
                        f"for sigma = {sigma.describe()}."
                    )

    Q: List[List[Scalar]] = [[0] * m for _ in range(m)]
    K: List[List[Scalar]] = [[0] * m for _ in range(m)]
    for group in groups:
        basis, chosen = mx.column_echelon_basis(X, group)
        for pos, j in enumerate(group):
            for i in range(m):
                Q[i][j] = basis[i][pos]
        for row_pos, r in enumerate(chosen):
            for pos, j in enumerate(group):
                K[group[row_pos]][j] = X[r][j]
    Q_mat, K_mat = mx.from_rows(Q), mx.from_rows(K)
    if not mx.is_over_base(Q_mat):
        raise BlockHypothesisViolated("Recovered Q is not defined over the base field.")
    if not mx.equal(mx.mul(Q_mat, K_mat), X):
        raise BlockHypothesisViolated("Block decomposition does not reconstruct X.")
    logger.debug(f"block_decompose: {len(groups)} blocks of a {m}x{m} matrix")
    return Q_mat, K_mat


# --- Torus elements from characters ---


def torus_from_characters(
    algebra: AlgebraRep,
    characters: Mapping[int, Scalar],
    last: Optional[Scalar] = None,
) -> TorusElement:
    """
    The torus element with e^{alpha_i}(t) = characters[i].

    The last parameter is fixed by `last` when given, otherwise it is taken
    as a square root where the series needs one (C, and the pair n-1, n of D).

    Raises:
        NotInTorus: if the characters are inconsistent with `last`.
        NotConstructivelyRepresentable: if a needed square root is not
            available in a finite tower.
    """
    n = algebra.rank
    chi = {i: mx.normalize(characters.get(i, 1)) for i in range(1, n + 1)}
    d: List[Scalar] = [1] * n
    if algebra.series is Series.B:
        d[n - 1] = chi[n] if last is None else last
        top = n - 1
    elif algebra.series is Series.C:
        d[n - 1] = last if last is not None else _root(chi[n])
        top = n - 1
    else:
        if last is None:
            d[n - 2] = _root(mx.normalize(chi[n - 1] * chi[n]))
            d[n - 1] = mx.normalize(chi[n] * mx.reciprocal(d[n - 2]))
        else:
            d[n - 1] = last
            d[n - 2] = mx.normalize(chi[n] * mx.reciprocal(last))
        top = n - 2
    for i in range(top, 0, -1):
        d[i - 1] = mx.normalize(chi[i] * d[i])
    t = TorusElement(tuple(d))
    for i in range(1, n + 1):
        if mx.normalize(character_value(algebra, i, t) - chi[i]) != 0:
            raise NotInTorus(
                f"No torus element has the requested character at alpha_{i}."
            )
    return t


def _root(value: Scalar) -> Scalar:
    if mx.normalize(value) == 1:
        return 1
    return mx.normalize(sqrt_witness(value)[0])


# --- Root-group elements ---


def unipotent(algebra: AlgebraRep, index: int, t: Scalar) -> Matrix:
    """exp(t * x) for the root vector x with the given basis index."""
    x = mx.scale(t, basis_matrix(algebra, index))
    m = algebra.size
    result = mx.identity(m)
    term = mx.identity(m)
    k = 1
    while True:
        term = mx.scale(Fraction(1, k), mx.mul(term, x))
        if mx.is_zero_matrix(term):
            break
        result = mx.add(result, term)
        k += 1
    return result


# --- Equivalence by reduction ---


def compare_reductions(first: Reduction, second: Reduction) -> EquivalenceResult:
    """
    X1 = Q1 Rep C1 and X2 = Q2 Rep C2 give X1 = (Q1 Q2^-1) X2 (C2^-1 C1).

    Raises:
        NotConstructivelyRepresentable: if equal labels come without witnesses.
    """
    if first.label != second.label:
        return EquivalenceResult(False, first.label, second.label)
    if not (first.has_witnesses() and second.has_witnesses()):
        raise NotConstructivelyRepresentable(
            f"Class '{first.label}' matched without witnesses Q and C."
        )

    Q = mx.mul(first.Q, mx.inverse(second.Q))
    C = mx.mul(mx.inverse(second.C), first.C)
    return EquivalenceResult(True, first.label, second.label, Q, C)
