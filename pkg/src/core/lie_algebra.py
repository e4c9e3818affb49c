"""
Matrix realizations of so(2n+1), sp(2n) and so(2n) as the algebras of
matrices X with X B + B X^T = 0 for the form matrix B of each series.

Basis order is: positive root vectors (by height, then coefficient tuple),
the negative root vectors in the same order, then the Cartan elements
h_i = E_ii - E_{M+1-i, M+1-i}. Root vectors of non-simple roots are the
brackets [e_j, e_parent] found by breadth-first closure; negative root
vectors are e_alpha^T scaled so that tr(e_-alpha e_alpha) = 1.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.core import matrices as mx
from src.core.field_tower import Scalar, scalar_is_zero
from src.core.matrices import Matrix
from src.core.root_system import (
    Series,
    Vector,
    algebra_dimension,
    check_index,
    matrix_size,
    root_eps,
    validate_rank,
)
from src.core.tensors import Element, RTensor, clean
from src.exceptions import (
    DegenerateForm,
    DivisionByZero,
    NotInAlgebra,
    NotInGroup,
    NotInTorus,
    SizeMismatch,
)

logger = logging.getLogger(__name__)

SparseMatrix = Dict[Tuple[int, int], Fraction]


# --- Sparse helpers (0-based positions) ---


def _sparse_mul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    rows_b: Dict[int, List[Tuple[int, Fraction]]] = {}
    for (k, j), v in b.items():
        rows_b.setdefault(k, []).append((j, v))
    out: SparseMatrix = {}
    for (i, k), v in a.items():
        for j, w in rows_b.get(k, ()):
            out[(i, j)] = out.get((i, j), Fraction(0)) + v * w
    return {key: v for key, v in out.items() if v}


def _sparse_commutator(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    ab = _sparse_mul(a, b)
    for key, v in _sparse_mul(b, a).items():
        ab[key] = ab.get(key, Fraction(0)) - v
    return {key: v for key, v in ab.items() if v}


def _sparse_trace_product(a: SparseMatrix, b: SparseMatrix) -> Fraction:
    return sum(
        (v * b.get((j, i), Fraction(0)) for (i, j), v in a.items()), Fraction(0)
    )


def _to_dense(a: SparseMatrix, m: int) -> Matrix:
    return tuple(
        tuple(mx.normalize(a.get((i, j), Fraction(0))) for j in range(m))
        for i in range(m)
    )


def _from_dense(a: Matrix) -> Dict[Tuple[int, int], Scalar]:
    return {
        (i, j): v
        for i, row in enumerate(a)
        for j, v in enumerate(row)
        if not scalar_is_zero(v)
    }


# --- Algebra ---


@dataclass(frozen=True)
class BasisElement:
    label: str
    root: Optional[Vector]
    cartan_index: Optional[int]

    @property
    def is_cartan(self) -> bool:
        return self.cartan_index is not None


def root_label(root: Vector) -> str:
    sign = "+" if sum(root) > 0 else "-"
    return f"e[{sign}{','.join(str(abs(c)) for c in root)}]"


class AlgebraRep:
    """
    An immutable matrix realization with root data, the trace form and
    structure constants. Build through `build_algebra`.
    """

    def __init__(self, series: Series, n: int) -> None:
        validate_rank(series, n)
        self.series = series
        self.rank = n
        self.size = matrix_size(series, n)
        self.form_matrix = self._form_matrix()
        self._simple = [self._simple_sparse(i) for i in range(1, n + 1)]
        roots, self._root_matrices, self.root_parents = self._close_roots()
        self.positive_roots: Tuple[Vector, ...] = roots

        basis: List[BasisElement] = []
        mats: List[SparseMatrix] = []
        for root in self.positive_roots:
            basis.append(BasisElement(root_label(root), root, None))
            mats.append(self._root_matrices[root])
        for root in self.positive_roots:
            negative = tuple(-c for c in root)
            e = self._root_matrices[root]
            norm = _sparse_trace_product(e, {(j, i): v for (i, j), v in e.items()})
            basis.append(BasisElement(root_label(negative), negative, None))
            mats.append({(j, i): v / norm for (i, j), v in e.items()})
        for i in range(1, n + 1):
            basis.append(BasisElement(f"e[h{i}]", None, i))
            mirror = self.size - i
            mats.append({(i - 1, i - 1): Fraction(1), (mirror, mirror): Fraction(-1)})
        self.basis: Tuple[BasisElement, ...] = tuple(basis)
        self.basis_matrices: Tuple[SparseMatrix, ...] = tuple(mats)
        self.dimension = len(basis)
        self.labels: Tuple[str, ...] = tuple(b.label for b in basis)
        self.index_of_label = {b.label: k for k, b in enumerate(basis)}
        self.index_of_root = {
            b.root: k for k, b in enumerate(basis) if b.root is not None
        }
        self.cartan_indices = tuple(range(2 * len(roots), self.dimension))

        self.form_gram = self._gram()
        self.dual_basis = self._dual_basis()
        self.structure = self._structure_constants()
        logger.debug(f"Built {series.value}_{n}: dim {self.dimension}, M={self.size}")

    # -- construction --

    def _form_matrix(self) -> Matrix:
        m, n = self.size, self.rank

        def entry(i: int, j: int) -> int:
            if i + j != m - 1:
                return 0
            if self.series is Series.C:
                return 1 if i < n else -1
            return 1

        return tuple(tuple(entry(i, j) for j in range(m)) for i in range(m))

    def _simple_sparse(self, i: int) -> SparseMatrix:
        m, n = self.size, self.rank
        one = Fraction(1)
        if i < n:
            return {(i - 1, i): one, (m - i - 1, m - i): -one}
        if self.series is Series.B:
            return {(n - 1, n): one, (n, n + 1): -one}
        if self.series is Series.C:
            return {(n - 1, n): one}
        return {(n - 2, n): one, (n - 1, n + 1): -one}

    def _close_roots(self):
        n = self.rank
        units = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
        found: Dict[Vector, SparseMatrix] = {
            u: self._simple[j] for j, u in enumerate(units)
        }
        parents: Dict[Vector, Tuple[Optional[Vector], int]] = {
            u: (None, j + 1) for j, u in enumerate(units)
        }
        frontier = sorted(found)
        while frontier:
            fresh = []
            for root in sorted(frontier):
                for j in range(n):
                    candidate = tuple(a + b for a, b in zip(root, units[j]))
                    if candidate in found:
                        continue
                    value = _sparse_commutator(self._simple[j], found[root])
                    if value:
                        found[candidate] = value
                        parents[candidate] = (root, j + 1)
                        fresh.append(candidate)
            frontier = fresh
        ordered = sorted(found, key=lambda r: (sum(r), r))
        return tuple(ordered), found, parents

    def _gram(self) -> Dict[Tuple[int, int], Fraction]:
        gram: Dict[Tuple[int, int], Fraction] = {}
        p = len(self.positive_roots)
        mats = self.basis_matrices
        for k in range(p):
            value = _sparse_trace_product(mats[k], mats[k + p])
            gram[(k, k + p)] = gram[(k + p, k)] = value
        for a in self.cartan_indices:
            for b in self.cartan_indices:
                value = _sparse_trace_product(mats[a], mats[b])
                if value:
                    gram[(a, b)] = value
        return gram

    def _dual_basis(self) -> Tuple[Element, ...]:
        p = len(self.positive_roots)
        duals: List[Element] = []
        for k in range(2 * p):
            partner = k + p if k < p else k - p
            value = self.form_gram.get((k, partner), Fraction(0))
            if not value:
                raise DegenerateForm(f"Root vector {self.labels[k]} pairs to zero.")
            duals.append({partner: 1 / value})
        cartan = self.cartan_indices
        block = tuple(
            tuple(self.form_gram.get((a, b), Fraction(0)) for b in cartan)
            for a in cartan
        )
        try:
            inverse = mx.inverse(block)
        except DivisionByZero as exc:
            raise DegenerateForm(
                "Trace form is degenerate on the Cartan subalgebra."
            ) from exc
        for i in range(len(cartan)):
            duals.append(clean({cartan[j]: inverse[j][i] for j in range(len(cartan))}))
        return tuple(duals)

    def _structure_constants(self) -> Dict[Tuple[int, int], Element]:
        table: Dict[Tuple[int, int], Element] = {}
        for a in range(self.dimension):
            for b in range(a + 1, self.dimension):
                value = _sparse_commutator(
                    self.basis_matrices[a], self.basis_matrices[b]
                )
                if not value:
                    continue
                coords = self.coordinates(value)
                table[(a, b)] = coords
                table[(b, a)] = {k: -v for k, v in coords.items()}
        return table

    # -- coordinates --

    def coordinates(
        self, matrix: Mapping[Tuple[int, int], Scalar], check: bool = True
    ) -> Element:
        """Basis coordinates of a matrix given sparsely (0-based positions)."""
        pairings: List[Scalar] = []
        for dual in self.basis_matrices:
            total: Scalar = 0
            for (i, j), v in dual.items():
                entry = matrix.get((j, i))
                if entry is not None and not scalar_is_zero(entry):
                    total = total + entry * v
            pairings.append(total)
        coords: Dict[int, Scalar] = {}
        for a in range(self.dimension):
            value: Scalar = 0
            for b, c in self.dual_basis[a].items():
                if not scalar_is_zero(pairings[b]):
                    value = value + c * pairings[b]
            coords[a] = value
        coords = clean(coords)
        if check:
            rebuilt = self.sparse_of(coords)
            keys = set(rebuilt)
            keys.update(k for k, v in matrix.items() if not scalar_is_zero(v))
            for key in keys:
                if mx.normalize(rebuilt.get(key, 0) - matrix.get(key, 0)) != 0:
                    raise NotInAlgebra(
                        f"Matrix entry {key} is outside the algebra span."
                    )
        return coords

    def sparse_of(self, element: Mapping[int, Scalar]) -> Dict[Tuple[int, int], Scalar]:
        out: Dict[Tuple[int, int], Scalar] = {}
        for a, c in element.items():
            for key, v in self.basis_matrices[a].items():
                out[key] = out.get(key, 0) + c * v
        return clean(out)

    def matrix_of(self, element: Mapping[int, Scalar]) -> Matrix:
        sparse = self.sparse_of(element)
        m = self.size
        return tuple(tuple(sparse.get((i, j), 0) for j in range(m)) for i in range(m))

    def element_of(self, matrix: Matrix) -> Element:
        if len(matrix) != self.size:
            raise SizeMismatch(f"Expected a {self.size}x{self.size} matrix.")
        return self.coordinates(_from_dense(matrix))

    def basis_vector(self, index: int) -> Element:
        return {index: 1}

    def root_vector(self, root: Vector) -> Element:
        return {self.index_of_root[tuple(root)]: 1}

    def negative_index(self, index: int) -> int:
        p = len(self.positive_roots)
        return index + p if index < p else index - p

    def root_value_on_cartan(self, root: Vector, i: int) -> int:
        """alpha(h_i): the i-th epsilon coordinate of the root."""
        return root_eps(self.series, self.rank, root)[i - 1]


@lru_cache(maxsize=None)
def build_algebra(series: Series, n: int) -> AlgebraRep:
    """Cached constructor; representations are immutable and shared."""
    algebra = AlgebraRep(series, n)
    expected = algebra_dimension(series, n)
    if algebra.dimension != expected:
        raise NotInAlgebra(
            f"Bracket closure for {series.value}_{n} found dimension "
            f"{algebra.dimension}, expected {expected}."
        )
    return algebra


def simple_root_vector(algebra: AlgebraRep, i: int) -> Matrix:
    check_index(algebra.rank, i)
    unit = tuple(int(k == i - 1) for k in range(algebra.rank))
    return basis_matrix(algebra, algebra.index_of_root[unit])


def basis_matrix(algebra: AlgebraRep, index: int) -> Matrix:
    return _to_dense(algebra.basis_matrices[index], algebra.size)


# --- Brackets, form, Casimir ---


def bracket(
    algebra: AlgebraRep, x: Mapping[int, Scalar], y: Mapping[int, Scalar]
) -> Element:
    """[x, y] in coordinates, from the structure constants."""
    result: Dict[int, Scalar] = {}
    for a, ca in x.items():
        for b, cb in y.items():
            table = algebra.structure.get((a, b))
            if not table:
                continue
            weight = ca * cb
            for k, v in table.items():
                result[k] = result.get(k, 0) + weight * v
    return clean(result)


def bracket_matrices(algebra: AlgebraRep, x: Matrix, y: Matrix) -> Element:
    """Matrix commutator in basis coordinates; both inputs must lie in the algebra."""
    algebra.element_of(x)
    algebra.element_of(y)
    return algebra.element_of(mx.commutator(x, y))


def invariant_form(
    algebra: AlgebraRep, x: Mapping[int, Scalar], y: Mapping[int, Scalar]
) -> Scalar:
    """Trace form of the defining representation."""
    total: Scalar = 0
    for a, ca in x.items():
        for b, cb in y.items():
            g = algebra.form_gram.get((a, b))
            if g:
                total = total + ca * cb * g
    return mx.normalize(total)


def casimir(algebra: AlgebraRep) -> RTensor:
    """Sum of x_a (x) x^a over the basis and its trace-form dual."""
    terms: Dict[Tuple[int, int], Scalar] = {}
    for a in range(algebra.dimension):
        for b, c in algebra.dual_basis[a].items():
            terms[(a, b)] = terms.get((a, b), 0) + c
    return RTensor.build(terms)


def cartan_casimir(algebra: AlgebraRep) -> RTensor:
    return casimir(algebra).restrict(algebra.cartan_indices)


# --- Torus and characters ---


@dataclass(frozen=True)
class TorusElement:
    """(d_1, ..., d_n) with realized matrix diag(d_1..d_n, [1,] d_n^-1..d_1^-1)."""

    parameters: Tuple[Scalar, ...]

    def diagonal(self, series: Series) -> List[Scalar]:
        inverses = [mx.reciprocal(d) for d in reversed(self.parameters)]
        middle = [1] if series is Series.B else []
        return list(self.parameters) + middle + inverses

    def matrix(self, series: Series) -> Matrix:
        return mx.diag(self.diagonal(series))


def torus_from_matrix(algebra: AlgebraRep, X: Matrix) -> TorusElement:
    """
    Raises:
        NotInTorus: if X is not diagonal of the torus shape.
    """
    if len(X) != algebra.size:
        raise SizeMismatch(f"Expected a {algebra.size}x{algebra.size} matrix.")
    if not mx.is_diagonal(X):
        raise NotInTorus("Matrix is not diagonal.")
    entries = mx.diagonal(X)
    torus = TorusElement(tuple(entries[: algebra.rank]))
    if not mx.equal(torus.matrix(algebra.series), X):
        raise NotInTorus("Diagonal entries are not of the form (d, [1,] d^-1).")
    return torus


def character_value(algebra: AlgebraRep, i: int, t: TorusElement) -> Scalar:
    """e^{alpha_i}(t)."""
    check_index(algebra.rank, i)
    d = t.parameters
    n = algebra.rank
    if i < n:
        return mx.normalize(d[i - 1] * mx.reciprocal(d[i]))
    if algebra.series is Series.B:
        return mx.normalize(d[n - 1])
    if algebra.series is Series.C:
        return mx.normalize(d[n - 1] * d[n - 1])
    return mx.normalize(d[n - 2] * d[n - 1])


def root_character(algebra: AlgebraRep, root: Sequence[int], t: TorusElement) -> Scalar:
    value: Scalar = 1
    for i, c in enumerate(root, start=1):
        if c:
            chi = character_value(algebra, i, t)
            value = value * (chi**c if c > 0 else mx.reciprocal(chi) ** (-c))
    return mx.normalize(value)


# --- Group ---


def group_membership(algebra: AlgebraRep, X: Matrix) -> bool:
    """X^T B X == B and det X == 1."""
    if len(X) != algebra.size or any(len(row) != algebra.size for row in X):
        raise SizeMismatch(f"Expected a {algebra.size}x{algebra.size} matrix.")
    B = algebra.form_matrix
    preserved = mx.equal(mx.mul_chain(mx.transpose(X), B, X), B)
    return preserved and mx.normalize(mx.determinant(X)) == 1


def group_inverse(algebra: AlgebraRep, X: Matrix) -> Matrix:
    """X^-1 = B^-1 X^T B for X in the group."""
    b = algebra.form_matrix
    return mx.mul_chain(mx.inverse(b), mx.transpose(X), b)


def adjoint_action(
    algebra: AlgebraRep, X: Matrix, check: bool = True
) -> Tuple[Element, ...]:
    """Ad_X on each basis element, in coordinates."""
    if check and not group_membership(algebra, X):
        raise NotInGroup("Adjoint action requested for a matrix outside the group.")
    X_inv = group_inverse(algebra, X)
    images = []
    for a in range(algebra.dimension):
        conjugated = mx.mul_chain(X, basis_matrix(algebra, a), X_inv)
        images.append(algebra.coordinates(_from_dense(conjugated), check=False))
    return tuple(images)


def adjoint_on_element(
    images: Sequence[Mapping[int, Scalar]], x: Mapping[int, Scalar]
) -> Element:
    result: Dict[int, Scalar] = {}
    for a, c in x.items():
        for k, v in images[a].items():
            result[k] = result.get(k, 0) + c * v
    return clean(result)


def adjoint_on_tensor(algebra: AlgebraRep, X: Matrix, r: RTensor) -> RTensor:
    """(Ad_X (x) Ad_X)(r)."""
    images = adjoint_action(algebra, X)
    return apply_adjoint_images(images, r)


def apply_adjoint_images(images: Sequence[Mapping[int, Scalar]], r: RTensor) -> RTensor:
    terms: Dict[Tuple[int, int], Scalar] = {}
    for (a, b), c in r.items():
        for k, u in images[a].items():
            for m, v in images[b].items():
                terms[(k, m)] = terms.get((k, m), 0) + c * u * v
    return RTensor.build(terms)
