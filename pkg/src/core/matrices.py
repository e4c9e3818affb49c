"""
Dense square matrices over the field tower.

Matrices are tuples of row tuples whose entries are ints, Fractions or
FieldElements; mixing is allowed because FieldElement coerces the other two.
All helpers return new tuples.
"""

import logging
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from src.core.field_tower import (
    FieldElement,
    GaloisElement,
    Scalar,
    Tower,
    apply_automorphism,
    format_element,
    scalar_is_zero,
    tower_of,
)
from src.exceptions import DivisionByZero, SizeMismatch

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[Scalar, ...], ...]


def normalize(value: Scalar) -> Scalar:
    """Collapses rational FieldElements back to Fractions."""
    if isinstance(value, FieldElement) and value.is_rational():
        value = value.to_fraction()
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def reciprocal(value: Scalar) -> Scalar:
    if isinstance(value, FieldElement):
        return normalize(value.inverse())
    if value == 0:
        raise DivisionByZero("Division by zero.")
    return Fraction(1) / value


def from_rows(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    return tuple(tuple(normalize(v) for v in row) for row in rows)


def zeros(m: int, n: Optional[int] = None) -> Matrix:
    return tuple(tuple(0 for _ in range(n if n is not None else m)) for _ in range(m))


def identity(m: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def diag(entries: Sequence[Scalar]) -> Matrix:
    m = len(entries)
    return tuple(
        tuple(normalize(entries[i]) if i == j else 0 for j in range(m))
        for i in range(m)
    )


def elementary(m: int, i: int, j: int, value: Scalar = 1) -> Matrix:
    """The matrix with `value` at 1-based position (i, j)."""
    return tuple(
        tuple(value if (r, c) == (i - 1, j - 1) else 0 for c in range(m))
        for r in range(m)
    )


def size(a: Matrix) -> int:
    return len(a)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(normalize(x + y) for x, y in zip(row_a, row_b))
        for row_a, row_b in zip(a, b)
    )


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(normalize(x - y) for x, y in zip(row_a, row_b))
        for row_a, row_b in zip(a, b)
    )


def scale(c: Scalar, a: Matrix) -> Matrix:
    return tuple(tuple(normalize(c * x) for x in row) for row in a)


def neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def mul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise SizeMismatch(
            f"Cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}."
        )
    columns = list(zip(*b))
    result = []
    for row in a:
        out = []
        for col in columns:
            acc: Scalar = 0
            for x, y in zip(row, col):
                if not scalar_is_zero(x) and not scalar_is_zero(y):
                    acc = acc + x * y
            out.append(normalize(acc))
        result.append(tuple(out))
    return tuple(result)


def mul_chain(*factors: Matrix) -> Matrix:
    result = factors[0]
    for factor in factors[1:]:
        result = mul(result, factor)
    return result


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(mul(a, b), mul(b, a))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def trace(a: Matrix) -> Scalar:
    total: Scalar = 0
    for i in range(len(a)):
        total = total + a[i][i]
    return normalize(total)


def trace_of_product(a: Matrix, b: Matrix) -> Scalar:
    total: Scalar = 0
    for i, row in enumerate(a):
        for k, x in enumerate(row):
            if not scalar_is_zero(x) and not scalar_is_zero(b[k][i]):
                total = total + x * b[k][i]
    return normalize(total)


def is_zero_matrix(a: Matrix) -> bool:
    return all(scalar_is_zero(x) for row in a for x in row)


def equal(a: Matrix, b: Matrix) -> bool:
    if len(a) != len(b):
        return False
    return all(
        normalize(x) == normalize(y)
        for row_a, row_b in zip(a, b)
        for x, y in zip(row_a, row_b)
    )


def is_diagonal(a: Matrix) -> bool:
    m = len(a)
    return all(scalar_is_zero(a[i][j]) for i in range(m) for j in range(m) if i != j)


def diagonal(a: Matrix) -> List[Scalar]:
    return [a[i][i] for i in range(len(a))]


def map_entries(func: Callable[[Scalar], Scalar], a: Matrix) -> Matrix:
    return tuple(tuple(normalize(func(x)) for x in row) for row in a)


def apply_galois(sigma: GaloisElement, a: Matrix) -> Matrix:
    """Entrywise action of a Galois element; plain rationals are fixed."""

    def act(x: Scalar) -> Scalar:
        if isinstance(x, FieldElement):
            return apply_automorphism(sigma, x)
        return x

    return map_entries(act, a)


def matrix_tower(a: Matrix) -> Tower:
    return tower_of(x for row in a for x in row)


def is_over_base(a: Matrix) -> bool:
    """True when every entry lies in K."""
    return all(not isinstance(x, FieldElement) or x.is_base() for row in a for x in row)


def _row_echelon(
    rows: List[List[Scalar]]
) -> Tuple[List[List[Scalar]], Scalar, List[int]]:
    """In-place Gaussian elimination; returns rows, determinant factor and pivots."""
    m = len(rows)
    cols = len(rows[0]) if rows else 0
    det_factor: Scalar = 1
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, m) if not scalar_is_zero(rows[i][c])), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            det_factor = -det_factor
        pivot_value = rows[r][c]
        det_factor = det_factor * pivot_value
        inverse = reciprocal(pivot_value)
        rows[r] = [normalize(x * inverse) for x in rows[r]]
        for i in range(m):
            if i != r and not scalar_is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [normalize(x - factor * y) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, det_factor, pivots


def determinant(a: Matrix) -> Scalar:
    rows = [list(row) for row in a]
    reduced, factor, pivots = _row_echelon(rows)
    if len(pivots) < len(a):
        return 0
    return normalize(factor)


def inverse(a: Matrix) -> Matrix:
    m = len(a)
    augmented = [list(row) + list(ident) for row, ident in zip(a, identity(m))]
    reduced, _, pivots = _row_echelon(augmented)
    if pivots[:m] != list(range(m)):
        raise DivisionByZero("Matrix is singular.")
    return tuple(tuple(normalize(x) for x in row[m:]) for row in reduced)


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    if not rows:
        return 0
    _, _, pivots = _row_echelon([list(row) for row in rows])
    return len(pivots)


def solve_left_combination(
    rows: Sequence[Sequence[Scalar]], target: Sequence[Scalar]
) -> Optional[List[Scalar]]:
    """Coefficients c with sum c_i * rows[i] == target, or None."""
    k = len(rows)
    n = len(target)
    # Columns of the system are the given rows; solve A c = target.
    system = [[rows[i][j] for i in range(k)] + [target[j]] for j in range(n)]
    reduced, _, pivots = _row_echelon(system)
    if k in pivots:
        return None
    solution: List[Scalar] = [0] * k
    for r, c in enumerate(pivots):
        solution[c] = normalize(reduced[r][k])
    return solution


def submatrix(a: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return tuple(tuple(a[i][j] for j in cols) for i in rows)


def column_echelon_basis(
    a: Matrix, cols: Sequence[int]
) -> Tuple[Matrix, List[int]]:
    """
    For the columns `cols` of a (full column rank), returns C * A^{-1} where A
    is the square submatrix on the first independent rows, and those rows.

    The result depends only on the column space, so it is invariant under
    right multiplication of the columns by an invertible matrix.
    """
    block = [[a[i][j] for j in cols] for i in range(len(a))]
    chosen: List[int] = []
    for i in range(len(block)):
        if rank([block[r] for r in chosen + [i]]) > len(chosen):
            chosen.append(i)
        if len(chosen) == len(cols):
            break
    square = tuple(tuple(block[r]) for r in chosen)
    full = tuple(tuple(row) for row in block)
    return mul(full, inverse(square)), chosen


def to_text(a: Matrix) -> List[List[str]]:
    """Entries in the canonical field-element text form."""
    return [[format_element(normalize(x)) for x in row] for row in a]
