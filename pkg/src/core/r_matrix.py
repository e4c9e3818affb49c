"""
Belavin-Drinfeld r-matrices and their verification.

    r = r0 + sum_{a>0} e_-a (x) e_a
           + sum_{a in Span(G1)+} sum_{k>=1} e_-a ^ theta^k(e_a)

where theta is the Lie algebra map of the positive parts fixed by
e_{alpha_i} -> e_{tau(alpha_i)} and r0 lies in h (x) h with
r0 + r0^21 equal to the Cartan part of the Casimir and
(tau(a) (x) 1 + 1 (x) a) r0 = 0 for a in Gamma_1.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.core import exact_linalg as la
from src.core.bd_triples import AdmissibleTriple
from src.core.field_tower import Scalar
from src.core.lie_algebra import (
    AlgebraRep,
    TorusElement,
    bracket,
    cartan_casimir,
    character_value,
    torus_from_matrix,
)
from src.core.matrices import Matrix, normalize
from src.core.tensors import Element, RTensor, Tensor3, clean, element_scale
from src.exceptions import Inconsistent, InvalidRZero, IrrationalSpectrum

logger = logging.getLogger(__name__)

Rows = List[List[Fraction]]


@dataclass(frozen=True)
class RZeroSolution:
    """Canonical r0 together with a basis of the homogeneous solutions (skew forms)."""

    particular: RTensor
    homogeneous: Tuple[RTensor, ...] = field(default_factory=tuple)
    skew_coefficients: Tuple[Fraction, ...] = field(default_factory=tuple)


# --- r0 ---


def _skew_pairs(n: int) -> List[Tuple[int, int]]:
    return [(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]


def _root_on_cartan(algebra: AlgebraRep, i: int) -> List[int]:
    """alpha_i(h_1), ..., alpha_i(h_n)."""
    unit = tuple(1 if k == i else 0 for k in range(1, algebra.rank + 1))
    return [algebra.root_value_on_cartan(unit, m) for m in range(1, algebra.rank + 1)]


def _skew_tensor(algebra: AlgebraRep, values: Sequence[Fraction]) -> RTensor:
    h = algebra.cartan_indices
    terms: Dict[Tuple[int, int], Scalar] = {}
    for (p, q), v in zip(_skew_pairs(algebra.rank), values):
        terms[(h[p - 1], h[q - 1])] = v
        terms[(h[q - 1], h[p - 1])] = -v
    return RTensor.build(terms)


def solve_r0(algebra: AlgebraRep, triple: AdmissibleTriple) -> RZeroSolution:
    """
    Symmetric part half the Cartan Casimir; skew part the minimal-norm
    rational solution of the root conditions in the basis h_p (x) h_q, p < q.

    Raises:
        Inconsistent: if the root conditions have no solution.
    """
    n = algebra.rank
    pairs = _skew_pairs(n)
    rows: Rows = []
    rhs: List[Fraction] = []
    for a, b in triple.pairs:
        alpha, beta = _root_on_cartan(algebra, a), _root_on_cartan(algebra, b)
        for m in range(1, n + 1):
            row = []
            for p, q in pairs:
                coeff = 0
                if m == q:
                    coeff += beta[p - 1] - alpha[p - 1]
                if m == p:
                    coeff += alpha[q - 1] - beta[q - 1]
                row.append(Fraction(coeff))
            rows.append(row)
            rhs.append(-Fraction(beta[m - 1] + alpha[m - 1], 4))
    solved = la.solve(rows, rhs, len(pairs))
    if solved is None:
        raise Inconsistent(
            f"No r0 for {triple.series.value}_{n} triple {triple.describe()}."
        )
    particular, null_basis = solved
    skew = la.min_norm(particular, null_basis)
    r0 = cartan_casimir(algebra).scale(Fraction(1, 2)) + _skew_tensor(algebra, skew)
    homogeneous = tuple(_skew_tensor(algebra, v) for v in null_basis)
    logger.debug(
        f"r0 for {triple.describe()}: skew {skew}, {len(homogeneous)} free parameters"
    )
    return RZeroSolution(r0, homogeneous, tuple(skew))


def r0_residuals(
    algebra: AlgebraRep, triple: AdmissibleTriple, r0: RTensor
) -> Tuple[RTensor, List[Element]]:
    """Residuals of the symmetric-part condition and of each root condition."""
    symmetric = r0 + r0.transpose() - cartan_casimir(algebra)
    cartan_position = {
        index: i for i, index in enumerate(algebra.cartan_indices, start=1)
    }
    root_residuals = []
    for a, b in triple.pairs:
        alpha, beta = _root_on_cartan(algebra, a), _root_on_cartan(algebra, b)
        acc: Dict[int, Scalar] = {}
        for (x, y), c in r0.items():
            i, j = cartan_position[x], cartan_position[y]
            acc[y] = acc.get(y, 0) + c * beta[i - 1]
            acc[x] = acc.get(x, 0) + c * alpha[j - 1]
        root_residuals.append(clean(acc))
    return symmetric, root_residuals


def validate_r0(algebra: AlgebraRep, triple: AdmissibleTriple, r0: RTensor) -> None:
    cartan = set(algebra.cartan_indices)
    if any(a not in cartan or b not in cartan for (a, b), _ in r0.items()):
        raise InvalidRZero("r0 has components outside h (x) h.")
    symmetric, root_residuals = r0_residuals(algebra, triple, r0)
    if not symmetric.is_zero():
        raise InvalidRZero("r0 + r0^21 differs from the Cartan part of the Casimir.")
    if any(root_residuals):
        raise InvalidRZero("r0 violates a root condition of the triple.")


# --- The map theta ---


def _support(root: Sequence[int]) -> List[int]:
    return [i for i, c in enumerate(root, start=1) if c]


def tau_of_root(triple: AdmissibleTriple, root: Sequence[int]) -> Tuple[int, ...]:
    tau = triple.tau
    image = [0] * len(root)
    for i, c in enumerate(root, start=1):
        if c:
            image[tau[i] - 1] += c
    return tuple(image)


def theta(
    algebra: AlgebraRep, triple: AdmissibleTriple, root: Sequence[int]
) -> Element:
    """theta(e_root) for a positive root supported in Gamma_1, via its bracket word."""
    tau = triple.tau
    parent, j = algebra.root_parents[tuple(root)]
    simple_image = algebra.root_vector(
        tuple(1 if k == tau[j] else 0 for k in range(1, algebra.rank + 1))
    )
    if parent is None:
        return simple_image
    return bracket(algebra, simple_image, theta(algebra, triple, parent))


def wedge_terms(algebra: AlgebraRep, triple: AdmissibleTriple) -> RTensor:
    gamma1 = set(triple.gamma1)
    total = RTensor()
    for root in algebra.positive_roots:
        if not set(_support(root)) <= gamma1:
            continue
        negative = algebra.root_vector(tuple(-c for c in root))
        current_root, image = root, algebra.root_vector(root)
        while set(_support(current_root)) <= gamma1:
            ((_, coeff),) = image.items()
            image = element_scale(coeff, theta(algebra, triple, current_root))
            current_root = tau_of_root(triple, current_root)
            total = total + RTensor.wedge(negative, image)
    return total


def build_r(
    algebra: AlgebraRep, triple: AdmissibleTriple, r0: Optional[RTensor] = None
) -> RTensor:
    """
    Raises:
        InvalidRZero: if a supplied r0 violates its defining conditions.
    """
    if r0 is None:
        r0 = solve_r0(algebra, triple).particular
    else:
        validate_r0(algebra, triple, r0)
    terms: Dict[Tuple[int, int], Scalar] = {}
    for root in algebra.positive_roots:
        positive = algebra.index_of_root[root]
        terms[(algebra.negative_index(positive), positive)] = 1
    return r0 + RTensor.build(terms) + wedge_terms(algebra, triple)


def r_transpose(r: RTensor) -> RTensor:
    return r.transpose()


def cybe_residual(algebra: AlgebraRep, r: RTensor) -> Tensor3:
    """[r12, r13] + [r12, r23] + [r13, r23] from the structure constants."""
    structure = algebra.structure
    items = list(r.items())
    acc: Dict[Tuple[int, int, int], Scalar] = {}

    def add(key: Tuple[int, int, int], value: Scalar) -> None:
        acc[key] = acc.get(key, 0) + value

    for (a, b), u in items:
        for (c, d), v in items:
            weight = u * v
            for x, s in structure.get((a, c), {}).items():
                add((x, b, d), weight * s)
            for x, s in structure.get((b, c), {}).items():
                add((a, x, d), weight * s)
            for x, s in structure.get((b, d), {}).items():
                add((a, c, x), weight * s)
    return Tensor3(clean(acc))


# --- Phi and the Jordan-Chevalley decomposition ---


def phi_endomorphism(algebra: AlgebraRep, r: RTensor) -> Rows:
    """Matrix of (id (x) Q)(r) acting on g, Q the trace-form isomorphism g -> g*."""
    dim = algebra.dimension
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for (a, b), c in r.items():
        for j in range(dim):
            g = algebra.form_gram.get((b, j))
            if g:
                rows[a][j] += Fraction(normalize(c * g))
    return rows


def _poly_at(coefficients: Sequence, matrix: DomainMatrix) -> DomainMatrix:
    size = matrix.shape[0]
    identity = DomainMatrix.eye(size, QQ).to_dense()
    result = DomainMatrix.zeros((size, size), QQ).to_dense()
    for c in coefficients:
        result = result * matrix + identity * c
    return result


def _is_zero(matrix: DomainMatrix) -> bool:
    return all(v == 0 for row in matrix.to_dense().to_list() for v in row)


def squarefree_spectrum(rows: Rows) -> Tuple[Poly, List[Fraction]]:
    """
    Square-free part of the characteristic polynomial and its roots.

    Raises:
        IrrationalSpectrum: if an eigenvalue lies outside Q.
    """
    x = Symbol("x")
    coeffs = la.to_domain(rows).charpoly()
    chi = Poly([QQ.to_sympy(c) for c in coeffs], x, domain="QQ")
    squarefree = chi.quo(chi.gcd(chi.diff(x)))
    _, factors = squarefree.factor_list()
    eigenvalues = []
    for factor, _ in factors:
        if factor.degree() != 1:
            raise IrrationalSpectrum(
                f"Eigenvalues outside Q: factor {factor.as_expr()}."
            )
        a, b = factor.all_coeffs()
        eigenvalues.append(-Fraction(int(b.p), int(b.q)) / Fraction(int(a.p), int(a.q)))
    return squarefree.monic(), sorted(eigenvalues)


def jordan_chevalley(rows: Rows) -> Tuple[Rows, Rows]:
    """Additive decomposition A = S + N by Newton iteration on the square-free part."""
    squarefree, _ = squarefree_spectrum(rows)
    p = [QQ.from_sympy(c) for c in squarefree.all_coeffs()]
    dp = [QQ.from_sympy(c) for c in squarefree.diff().all_coeffs()]
    a = la.to_domain(rows).to_dense()
    s = a
    for _ in range(len(rows) + 1):
        value = _poly_at(p, s)
        if _is_zero(value):
            break
        s = s - value * _poly_at(dp, s).inv()
    return la.from_domain(s), la.from_domain(a - s)


def eigenspaces(rows: Rows) -> Dict[Fraction, Rows]:
    _, eigenvalues = squarefree_spectrum(rows)
    dim = len(rows)
    spaces = {}
    for value in eigenvalues:
        shifted = [
            [rows[i][j] - (value if i == j else 0) for j in range(dim)]
            for i in range(dim)
        ]
        spaces[value] = la.nullspace(shifted, dim)
    return spaces


def normalizer(algebra: AlgebraRep, vectors: Rows) -> Rows:
    """Basis of {x in g : [x, V] in V} for V spanned by `vectors`."""
    dim = algebra.dimension
    annihilator = la.nullspace(vectors, dim)
    if not annihilator:
        return [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    conditions: Rows = []
    for v in vectors:
        element = {k: c for k, c in enumerate(v) if c}
        images = [bracket(algebra, {a: 1}, element) for a in range(dim)]
        for w in annihilator:
            conditions.append(
                [
                    sum(
                        (w[k] * Fraction(normalize(c)) for k, c in images[a].items()),
                        Fraction(0),
                    )
                    for a in range(dim)
                ]
            )
    return la.nullspace(conditions, dim)


def standard_subalgebras(algebra: AlgebraRep) -> Dict[str, Rows]:
    dim = algebra.dimension
    p = len(algebra.positive_roots)

    def span(indices: Sequence[int]) -> Rows:
        return [[Fraction(int(k == i)) for k in range(dim)] for i in indices]

    cartan = list(algebra.cartan_indices)
    return {
        "b+": span(list(range(p)) + cartan),
        "b-": span(list(range(p, 2 * p)) + cartan),
        "h": span(cartan),
    }


def classify_subalgebra(algebra: AlgebraRep, basis: Rows) -> str:
    for name, reference in standard_subalgebras(algebra).items():
        if la.same_span(basis, reference):
            return name
    return "other"


@dataclass(frozen=True)
class EigenspaceInfo:
    eigenvalue: Fraction
    dimension: int
    normalizer: str


def eigenspace_normalizers(
    algebra: AlgebraRep, semisimple: Rows
) -> List[EigenspaceInfo]:
    return [
        EigenspaceInfo(
            value,
            len(space),
            classify_subalgebra(algebra, normalizer(algebra, space)),
        )
        for value, space in eigenspaces(semisimple).items()
    ]


# --- Centralizer ---


def torus_in_centralizer(
    triple: AdmissibleTriple, algebra: AlgebraRep, t: TorusElement
) -> bool:
    """Simple-root characters agree on alpha and tau(alpha) for alpha in Gamma_1."""
    return all(
        normalize(character_value(algebra, a, t))
        == normalize(character_value(algebra, b, t))
        for a, b in triple.pairs
    )


def centralizer_contains(
    algebra: AlgebraRep, triple: AdmissibleTriple, X: Matrix
) -> bool:
    """
    Raises:
        NotInTorus: if X is not a torus element.
    """
    return torus_in_centralizer(triple, algebra, torus_from_matrix(algebra, X))


def torus_weights(algebra: AlgebraRep, r: RTensor) -> List[Tuple[int, ...]]:
    """
    Nonzero weights rho_a + rho_b of the terms x_a (x) x_b of r, in simple-root
    coordinates. A torus element fixes r exactly when every weight has
    character 1 on it.
    """
    zero = (0,) * algebra.rank
    weights = set()
    for (a, b), _ in r.items():
        left = algebra.basis[a].root or zero
        right = algebra.basis[b].root or zero
        weight = tuple(x + y for x, y in zip(left, right))
        if any(weight):
            weights.add(weight)
    return sorted(weights)


def centralizer_relations(triple: AdmissibleTriple) -> List[Tuple[int, ...]]:
    """alpha_b - alpha_a for every (a, b) in tau: the weights C(r) must kill."""
    rows = []
    for a, b in triple.pairs:
        row = [0] * triple.rank
        row[a - 1] -= 1
        row[b - 1] += 1
        rows.append(tuple(row))
    return rows


def centralizer_matches_triple(
    algebra: AlgebraRep, triple: AdmissibleTriple, r: RTensor
) -> bool:
    """The torus centralizer read off r equals the one the triple predicts."""
    return la.same_span(torus_weights(algebra, r), centralizer_relations(triple))
