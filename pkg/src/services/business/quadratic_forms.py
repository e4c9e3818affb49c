"""
Congruence of symmetric and skew forms over the base field.

Given a nondegenerate form F over K and the split form of the group, these
helpers build R over K with R F R^T equal to the split form. Symmetric forms
are diagonalized and their entries paired into hyperbolic planes; over the
C((h)) model two entries pair exactly when they have the same valuation
parity. Skew forms always admit a symplectic basis.
"""

import logging
from typing import List, Sequence, Tuple

from src.core import matrices as mx
from src.core.field_tower import FieldElement, Scalar, sqrt_witness, valuation
from src.core.matrices import Matrix
from src.exceptions import FormsInequivalent

logger = logging.getLogger(__name__)

Vector = List[Scalar]


def bilinear(F: Matrix, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """u F v^T."""
    total: Scalar = 0
    for i, ui in enumerate(u):
        if mx.normalize(ui) == 0:
            continue
        for j, vj in enumerate(v):
            if mx.normalize(vj) != 0 and mx.normalize(F[i][j]) != 0:
                total = total + ui * F[i][j] * vj
    return mx.normalize(total)


def _combine(u: Sequence[Scalar], v: Sequence[Scalar], c: Scalar) -> Vector:
    """u + c v."""
    return [mx.normalize(x + c * y) for x, y in zip(u, v)]


def _scaled(c: Scalar, u: Sequence[Scalar]) -> Vector:
    return [mx.normalize(c * x) for x in u]


def _unit(m: int, i: int) -> Vector:
    return [1 if k == i else 0 for k in range(m)]


def diagonalize_symmetric(F: Matrix) -> Tuple[List[Vector], List[Scalar]]:
    """
    An orthogonal basis u_1..u_M for the symmetric form F with the values
    F(u_k, u_k).

    Raises:
        FormsInequivalent: if F is degenerate.
    """
    m = len(F)
    pool: List[Vector] = [_unit(m, i) for i in range(m)]
    basis: List[Vector] = []
    values: List[Scalar] = []
    while pool:
        index = next(
            (k for k, x in enumerate(pool) if bilinear(F, x, x) != 0), None
        )
        if index is None:
            found = next(
                (
                    (a, b)
                    for a in range(len(pool))
                    for b in range(a + 1, len(pool))
                    if bilinear(F, pool[a], pool[b]) != 0
                ),
                None,
            )
            if found is None:
                raise FormsInequivalent("The symmetric form is degenerate.")
            a, b = found
            pool[a] = _combine(pool[a], pool[b], 1)
            index = a
        u = pool.pop(index)
        c = bilinear(F, u, u)
        basis.append(u)
        values.append(c)
        inverse = mx.reciprocal(c)
        pool = [_combine(y, u, -bilinear(F, y, u) * inverse) for y in pool]
    return basis, values


def _parity(c: Scalar) -> int:
    v = valuation(FieldElement.coerce(c))
    if v.denominator != 1:
        raise FormsInequivalent(f"Form value {c} is not in the base field.")
    return v.numerator % 2


def orthogonal_invariants(F: Matrix) -> Tuple[int, int]:
    """Rank and discriminant square class (valuation parity) of a symmetric form."""
    _, values = diagonalize_symmetric(F)
    discriminant: Scalar = 1
    for c in values:
        discriminant = discriminant * c
    return len(values), _parity(discriminant)


def split_symmetric_congruence(F: Matrix, form: Matrix) -> Matrix:
    """
    R over K with R F R^T = form, where form has ones on the anti-diagonal.

    Raises:
        FormsInequivalent: if F and form are not congruent over C((h)).
    """
    m = len(F)
    basis, values = diagonalize_symmetric(F)
    classes: Tuple[List[int], List[int]] = ([], [])
    for k, c in enumerate(values):
        classes[_parity(c)].append(k)
    leftovers = [group.pop() for group in classes if len(group) % 2]
    expected_leftovers = m % 2
    odd_leftover = bool(leftovers) and _parity(values[leftovers[0]]) == 1
    if len(leftovers) != expected_leftovers or odd_leftover:
        raise FormsInequivalent(
            f"Form with square-class counts {len(classes[0])}/{len(classes[1])} "
            f"is not split."
        )

    rows: List[Vector] = [[0] * m for _ in range(m)]
    slot = 0
    for group in classes:
        for a, b in zip(group[0::2], group[1::2]):
            c_a, c_b = values[a], values[b]
            q, _ = sqrt_witness(mx.normalize(-c_a * mx.reciprocal(c_b)))
            u = _combine(basis[a], basis[b], q)
            v = _scaled(mx.reciprocal(2 * c_a), _combine(basis[a], basis[b], -q))
            rows[slot], rows[m - 1 - slot] = u, v
            slot += 1
    if leftovers:
        k = leftovers[0]
        root, _ = sqrt_witness(values[k])
        rows[m // 2] = _scaled(mx.reciprocal(root), basis[k])
    R = mx.from_rows(rows)
    _check_congruence(R, F, form)
    return R


def symplectic_congruence(F: Matrix, form: Matrix) -> Matrix:
    """
    R over K with R F R^T = form for a skew form F, where form is +1 above and
    -1 below the anti-diagonal midpoint.

    Raises:
        FormsInequivalent: if F is degenerate.
    """
    m = len(F)
    pool: List[Vector] = [_unit(m, i) for i in range(m)]
    rows: List[Vector] = [[0] * m for _ in range(m)]
    slot = 0
    while pool:
        u = pool.pop(0)
        partner = next((k for k, w in enumerate(pool) if bilinear(F, u, w) != 0), None)
        if partner is None:
            raise FormsInequivalent("The skew form is degenerate.")
        w = pool.pop(partner)
        v = _scaled(mx.reciprocal(bilinear(F, u, w)), w)
        rows[slot], rows[m - 1 - slot] = u, v
        slot += 1
        reduced = []
        for x in pool:
            x = _combine(x, u, -bilinear(F, x, v))
            x = _combine(x, v, bilinear(F, x, u))
            if any(mx.normalize(e) != 0 for e in x):
                reduced.append(x)
        pool = reduced
    R = mx.from_rows(rows)
    _check_congruence(R, F, form)
    return R


def _check_congruence(R: Matrix, F: Matrix, form: Matrix) -> None:
    if not mx.equal(mx.mul_chain(R, F, mx.transpose(R)), form):
        raise FormsInequivalent(
            "Congruence witness does not reproduce the target form."
        )
    if not mx.is_over_base(R):
        raise FormsInequivalent(
            "Congruence witness is not defined over the base field."
        )
    logger.debug(f"Congruence witness found for a {len(R)}x{len(R)} form")
