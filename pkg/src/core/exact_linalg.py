"""Linear algebra over Q backed by sympy's DomainMatrix."""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

Rows = List[List[Fraction]]


def to_domain(rows: Sequence[Sequence], ncols: Optional[int] = None) -> DomainMatrix:
    if not rows:
        return DomainMatrix.zeros((0, ncols or 0), QQ).to_dense()
    converted = [
        [(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in rows
    ]
    return DomainMatrix.from_list(converted, QQ)


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def from_domain(matrix: DomainMatrix) -> Rows:
    return [[to_fraction(v) for v in row] for row in matrix.to_dense().to_list()]


def nullspace(rows: Sequence[Sequence], ncols: int) -> Rows:
    """Basis of {x : A x = 0} as a list of vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    basis = to_domain(rows).nullspace()
    return from_domain(basis)


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return to_domain(rows).rank()


def solve(
    rows: Sequence[Sequence], rhs: Sequence, ncols: int
) -> Optional[Tuple[List[Fraction], Rows]]:
    """
    Solves A x = b. Returns the particular solution with free variables set to
    zero and a nullspace basis, or None when the system is inconsistent.
    """
    if not rows:
        return [Fraction(0)] * ncols, nullspace(rows, ncols)
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = to_domain(augmented).rref()
    if ncols in pivots:
        return None
    reduced_rows = from_domain(reduced)
    particular = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        particular[c] = reduced_rows[r][ncols]
    return particular, nullspace(rows, ncols)


def min_norm(particular: Sequence[Fraction], null_basis: Rows) -> List[Fraction]:
    """The solution of least Euclidean norm: x_p - N (N^T N)^-1 N^T x_p."""
    if not null_basis:
        return list(particular)
    n_mat = to_domain(null_basis).transpose()
    x = to_domain([[v] for v in particular])
    nt = n_mat.transpose()
    correction = n_mat * (nt * n_mat).inv() * (nt * x)
    return [row[0] for row in from_domain(x - correction)]


def in_span(basis: Rows, vectors: Rows) -> bool:
    return rank(list(basis) + list(vectors)) == rank(basis)


def same_span(a: Rows, b: Rows) -> bool:
    return rank(a) == rank(b) == rank(list(a) + list(b))
