"""
Twisted Belavin-Drinfeld cohomology.

A twisted cocycle is a group element X with X^{-1} sigma(X) in C(r) for
every sigma fixing K[sqrt_h], and S X^{-1} sigma0(X) in C(r) where sigma0
flips sqrt_h. Such an X factors as R J D with R over K, J the fixed matrix
over K[sqrt_h] below and D diagonal; the class of X is then read off D.

Index conventions are 0-based inside this module. J pairs the index k with
M-1-k; the B series keeps its center alone and D_n with odd n keeps the two
central indices alone.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.core import matrices as mx
from src.core.bd_triples import (
    AdmissibleTriple,
    enumerate_admissible,
    string_groups,
    string_of,
)
from src.core.field_tower import (
    IMAG_UNIT,
    ROOT4_HBAR,
    SQRT_H,
    SQRT_HBAR,
    FieldElement,
    GaloisElement,
    Scalar,
    Tower,
    apply_automorphism,
    format_element,
    galois_group_over_sqrt_h,
    sigma0_on,
    sqrt_witness,
    tower_of,
    valuation,
)
from src.core.lie_algebra import (
    AlgebraRep,
    TorusElement,
    adjoint_action,
    apply_adjoint_images,
    character_value,
    group_membership,
    torus_from_matrix,
)
from src.core.matrices import Matrix
from src.core.r_matrix import build_r
from src.core.root_system import Series, matrix_size
from src.exceptions import (
    BlockHypothesisViolated,
    FormsInequivalent,
    NotConstructivelyRepresentable,
    NotInGroup,
    NotInTorus,
    NotTwistedCocycle,
    SingularD,
)
from src.interfaces.classifier_interface import ICohomologyClassifier
from src.services.business.cocycles import (
    Cocycle,
    CocycleKind,
    CohomologyClass,
    CohomologySet,
    DiagonalDatum,
    EquivalenceResult,
    Reduction,
    block_decompose,
    compare_reductions,
    galois_condition,
    galois_twist,
    in_centralizer,
    torus_from_characters,
)
from src.services.business.quadratic_forms import (
    split_symmetric_congruence,
    symplectic_congruence,
)

logger = logging.getLogger(__name__)

Datum = Union[DiagonalDatum, Matrix]


# --- Index structure ---


def paired_indices(series: Series, n: int) -> List[Tuple[int, int]]:
    """The index pairs (k, M-1-k) coupled by J."""
    m = matrix_size(series, n)
    count = n - 1 if series is Series.D and n % 2 else n
    return [(k, m - 1 - k) for k in range(count)]


def single_indices(series: Series, n: int) -> List[int]:
    coupled = {i for pair in paired_indices(series, n) for i in pair}
    return [i for i in range(matrix_size(series, n)) if i not in coupled]


def index_blocks(series: Series, n: int) -> List[List[int]]:
    blocks = [list(pair) for pair in paired_indices(series, n)]
    blocks.extend([i] for i in single_indices(series, n))
    return blocks


# --- The matrices S, P and J ---


def S_matrix(series: Series, n: int) -> Matrix:
    """
    Ones on the anti-diagonal, with the series adjustments: negated for B_n
    with odd n, -1 on the upper half for C_n, and the central 2x2 block
    replaced by the identity for D_n with odd n.
    """
    m = matrix_size(series, n)
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        if series is Series.C:
            rows[i][m - 1 - i] = -1 if i < n else 1
        elif series is Series.B and n % 2:
            rows[i][m - 1 - i] = -1
        else:
            rows[i][m - 1 - i] = 1
    if series is Series.D and n % 2:
        rows[n - 1][n], rows[n][n - 1] = 0, 0
        rows[n - 1][n - 1], rows[n][n] = 1, 1
    return mx.from_rows(rows)


def pair_swap(series: Series, n: int) -> Matrix:
    """P with sigma0(J) = J P: swaps each J-pair and fixes the single indices."""
    m = matrix_size(series, n)
    rows = [[0] * m for _ in range(m)]
    for k, k_bar in paired_indices(series, n):
        rows[k][k_bar] = rows[k_bar][k] = 1
    for i in single_indices(series, n):
        rows[i][i] = 1
    return mx.from_rows(rows)


def swap_relation(series: Series, n: int) -> str:
    """Names P in terms of S: 'S', '-S' or "S'" (the unsigned anti-diagonal)."""
    S, P = S_matrix(series, n), pair_swap(series, n)
    if mx.equal(P, S):
        return "S"
    if mx.equal(P, mx.neg(S)):
        return "-S"
    return "S'"


def J_matrix(series: Series, n: int) -> Matrix:
    """Each J-pair (k, k') carries the block [[1, 1], [sqrt_h, -sqrt_h]]."""
    m = matrix_size(series, n)
    rows: List[List[Scalar]] = [[0] * m for _ in range(m)]
    for k, k_bar in paired_indices(series, n):
        rows[k][k] = rows[k][k_bar] = 1
        rows[k_bar][k] = SQRT_HBAR
        rows[k_bar][k_bar] = -SQRT_HBAR
    for i in single_indices(series, n):
        rows[i][i] = 1
    return mx.from_rows(rows)


def J_inverse(series: Series, n: int) -> Matrix:
    return mx.inverse(J_matrix(series, n))


# --- Diagonal data and the map T ---


def _as_datum(D: Datum) -> DiagonalDatum:
    datum = D if isinstance(D, DiagonalDatum) else DiagonalDatum.from_matrix(D)
    datum.check_nonsingular()
    return datum


def _sigma0(entries: Sequence[Scalar]) -> GaloisElement:
    return sigma0_on(tower_of(entries).union(Tower((SQRT_H,))))


def base_datum(series: Series, n: int) -> DiagonalDatum:
    """
    The diagonal datum of the Drinfeld-Jimbo representative: I, except
    sqrt_h at the center of B_n with odd n and on the lower half for C_n.
    """
    m = matrix_size(series, n)
    entries: List[Scalar] = [1] * m
    if series is Series.B and n % 2:
        entries[n] = SQRT_HBAR
    if series is Series.C:
        entries[n:] = [SQRT_HBAR] * n
    return DiagonalDatum(tuple(entries))


def T_map(series: Series, n: int, D: Datum) -> Matrix:
    """
    T(D) = S^{-1} D^{-1} P sigma0(D), a diagonal matrix.

    Raises:
        SingularD: if D has a zero entry or is not diagonal.
    """
    datum = _as_datum(D)
    sigma0 = _sigma0(datum.entries)
    moved = mx.diag([apply_automorphism(sigma0, d) for d in datum.entries])
    S = S_matrix(series, n)
    result = mx.mul_chain(
        mx.inverse(S), datum.inverse().matrix(), pair_swap(series, n), moved
    )
    if not mx.is_diagonal(result):
        raise SingularD("T(D) is not diagonal; D does not match the series.")
    return result


def T0_map(series: Series, n: int, D: Datum) -> Matrix:
    """The multiplicative part S^{-1} D^{-1} S sigma0(D); T(D W) = T(D) T0(W)."""
    datum = _as_datum(D)
    sigma0 = _sigma0(datum.entries)
    moved = mx.diag([apply_automorphism(sigma0, d) for d in datum.entries])
    S = S_matrix(series, n)
    return mx.mul_chain(mx.inverse(S), datum.inverse().matrix(), S, moved)


def in_T_kernel(series: Series, n: int, D: Datum) -> bool:
    return mx.equal(T0_map(series, n, D), mx.identity(matrix_size(series, n)))


def is_in_Z(algebra: AlgebraRep, triple: AdmissibleTriple, D: Datum) -> bool:
    """
    Membership of a diagonal datum in Z: paired products in K (in sqrt_h K
    for C), the B center fixed by the parity of n, and D^{-1} sigma(D) in
    C(r) for every sigma fixing K[sqrt_h].
    """
    series, n = algebra.series, algebra.rank
    datum = _as_datum(D)
    d = [FieldElement.coerce(x) for x in datum.entries]
    m = len(d)
    for k in range(m // 2):
        product = d[k] * d[m - 1 - k]
        if series is Series.C:
            product = product / SQRT_HBAR
        if not product.is_base():
            return False
    if series is Series.B:
        center = d[n]
        if n % 2 == 0 and center != 1:
            return False
        if n % 2 and not (center / SQRT_HBAR).is_base():
            return False
    D_mat = datum.matrix()
    tower = mx.matrix_tower(D_mat).union(Tower((SQRT_H,)))
    D_inv = datum.inverse().matrix()
    for sigma in galois_group_over_sqrt_h(tower):
        moved = mx.apply_galois(sigma, D_mat)
        if not in_centralizer(algebra, triple, mx.mul(D_inv, moved)):
            return False
    return True


# --- Twistable triples ---


def _involution(series: Series, n: int) -> Dict[int, int]:
    """iota: swaps alpha_{n-1} and alpha_n for D_n with odd n, identity otherwise."""
    iota = {i: i for i in range(1, n + 1)}
    if series is Series.D and n % 2:
        iota[n - 1], iota[n] = n, n - 1
    return iota


def is_twistable(triple: AdmissibleTriple) -> bool:
    """iota tau iota == tau^{-1}: the wedge supports of Ad_S r and r^21 agree."""
    iota = _involution(triple.series, triple.rank)
    conjugated = {iota[a]: iota[b] for a, b in triple.pairs}
    inverse = {b: a for a, b in triple.pairs}
    return conjugated == inverse


def twistable_triples(series: Series, n: int, budget: int) -> List[AdmissibleTriple]:
    """Admissible triples whose r^21 is conjugate to r, in canonical order."""
    found = [t for t in enumerate_admissible(series, n, budget) if is_twistable(t)]
    logger.debug(f"{series.value}_{n}: {len(found)} twistable triples")
    return found


def check_r21_AdS(algebra: AlgebraRep, triple: AdmissibleTriple) -> bool:
    """Exact test of (Ad_S (x) Ad_S) r == r^21 for r with the canonical r0."""
    r = build_r(algebra, triple)
    images = adjoint_action(algebra, S_matrix(algebra.series, algebra.rank))
    return apply_adjoint_images(images, r) == r.transpose()


# --- Completion to the group ---


def complete_to_group(algebra: AlgebraRep, D: Datum) -> Matrix:
    """
    R over K with R J D in the group.

    The form F = (JD) B (JD)^T is over K; R is a congruence from F to B,
    with a pair swap fixing the determinant in the orthogonal case.

    Raises:
        FormsInequivalent: if F is not over K or not congruent to B.
    """
    series, n = algebra.series, algebra.rank
    datum = _as_datum(D)
    JD = mx.mul(J_matrix(series, n), datum.matrix())
    B = algebra.form_matrix
    F = mx.mul_chain(JD, B, mx.transpose(JD))
    if not mx.is_over_base(F):
        raise FormsInequivalent(
            "(JD) B (JD)^T is not defined over K; D lies outside Z."
        )
    if series is Series.C:
        R = symplectic_congruence(F, B)
    else:
        R = split_symmetric_congruence(F, B)
        if mx.normalize(mx.determinant(mx.mul(R, JD))) != 1:
            rows = [list(row) for row in R]
            rows[0], rows[-1] = rows[-1], rows[0]
            R = mx.from_rows(rows)
    if not group_membership(algebra, mx.mul(R, JD)):
        raise FormsInequivalent("Completed matrix R J D is not in the group.")
    return R


# --- Cocycle condition and decomposition ---


def is_twisted_cocycle(
    algebra: AlgebraRep, triple: AdmissibleTriple, X: Matrix
) -> bool:
    """
    Raises:
        NotInGroup: if X is not in the group.
    """
    if not group_membership(algebra, X):
        raise NotInGroup(
            "Twisted cocycle check requested for a matrix outside the group."
        )
    tower = mx.matrix_tower(X).union(Tower((SQRT_H,)))
    if not galois_condition(algebra, triple, X, galois_group_over_sqrt_h(tower)):
        return False
    S = S_matrix(algebra.series, algebra.rank)
    twisted = mx.mul(S, galois_twist(algebra, X, sigma0_on(tower)))
    return in_centralizer(algebra, triple, twisted)


def split_over_sqrt_h(u: Scalar) -> Optional[Tuple[Scalar, Scalar]]:
    """(a, b) over K with u = a + b sqrt_h, or None."""
    a, b = FieldElement.coerce(u).split(SQRT_H)
    if not (a.is_base() and b.is_base()):
        return None
    return mx.normalize(a), mx.normalize(b)


def decompose_pair_block(block: Matrix) -> Tuple[Matrix, Tuple[Scalar, Scalar]]:
    """
    Writes a 2x2 block as R_b [[1, 1], [sqrt_h, -sqrt_h]] diag(d1, d2).

    A row with both entries nonzero gives (d1, d2) and becomes (1, 0) in R_b;
    the other row becomes (a, b) with x/d1 = a + b sqrt_h and y/d2 = a - b sqrt_h.

    Raises:
        NotTwistedCocycle: if the block has no such form.
    """
    reference = next(
        (r for r in range(2) if all(mx.normalize(v) != 0 for v in block[r])), None
    )
    if reference is None:
        raise NotTwistedCocycle("Pair block has no row with two nonzero entries.")
    other = 1 - reference
    d1, d2 = block[reference]
    x, y = block[other]
    parts = split_over_sqrt_h(mx.normalize(x * mx.reciprocal(d1)))
    if parts is None:
        raise NotTwistedCocycle("Pair block ratio is not in K[sqrt_h].")
    a, b = parts
    if mx.normalize(y * mx.reciprocal(d2) - (a - b * SQRT_HBAR)) != 0:
        raise NotTwistedCocycle("Pair block columns are not sigma0-conjugate.")
    rows: List[List[Scalar]] = [[0, 0], [0, 0]]
    rows[reference] = [1, 0]
    rows[other] = [a, b]
    return mx.from_rows(rows), (mx.normalize(d1), mx.normalize(d2))


def decompose_RJD(
    algebra: AlgebraRep, triple: AdmissibleTriple, X: Matrix
) -> Tuple[Matrix, DiagonalDatum]:
    """
    X = R J D with R over K and D in Z.

    Raises:
        NotTwistedCocycle: if X is not a twisted cocycle or does not factor.
    """
    series, n = algebra.series, algebra.rank
    if not is_twisted_cocycle(algebra, triple, X):
        raise NotTwistedCocycle("X is not a twisted cocycle.")
    try:
        Q, K = block_decompose(X, index_blocks(series, n))
    except BlockHypothesisViolated as exc:
        raise NotTwistedCocycle(f"Block structure failed: {exc}") from exc

    m = algebra.size
    R_rows: List[List[Scalar]] = [[0] * m for _ in range(m)]
    d: List[Scalar] = [1] * m
    for k, k_bar in paired_indices(series, n):
        block = ((K[k][k], K[k][k_bar]), (K[k_bar][k], K[k_bar][k_bar]))
        R_b, (d[k], d[k_bar]) = decompose_pair_block(block)
        for r, i in enumerate((k, k_bar)):
            R_rows[i][k], R_rows[i][k_bar] = R_b[r]
    for i in single_indices(series, n):
        R_rows[i][i] = 1
        d[i] = K[i][i]
    R = mx.mul(Q, mx.from_rows(R_rows))
    D = DiagonalDatum(tuple(d))
    if not mx.is_over_base(R):
        raise NotTwistedCocycle("R is not defined over K.")
    if not mx.equal(mx.mul_chain(R, J_matrix(series, n), D.matrix()), X):
        raise NotTwistedCocycle("R J D does not reconstruct X.")
    return R, D


# --- Norm roots and centralizer elements ---


def norm_root(value: Scalar) -> FieldElement:
    """
    w in K[sqrt_h] with w sigma0(w) == value for value in K: sqrt(value) for
    even valuation, y sqrt_h with -h y^2 == value otherwise.

    Raises:
        NotConstructivelyRepresentable: if the needed square root is not
            available in a finite tower.
    """
    value = FieldElement.coerce(value)
    if valuation(value).numerator % 2 == 0:
        w, _ = sqrt_witness(value)
    else:
        y, _ = sqrt_witness(-value / FieldElement.hbar())
        w = y * SQRT_HBAR
    if not (w / SQRT_HBAR).is_base() and not w.is_base():
        raise NotConstructivelyRepresentable(f"Norm root of {value} leaves K[sqrt_h].")
    return w


def _sigma0_quotient(x: Scalar) -> Scalar:
    """sigma0(x)/x."""
    x = FieldElement.coerce(x)
    moved = apply_automorphism(_sigma0([x]), x)
    return mx.normalize(moved / x)


def centralizer_with_T0(
    algebra: AlgebraRep, triple: AdmissibleTriple, t: TorusElement
) -> Matrix:
    """
    C in C(r) over K[sqrt_h] with T0(C) = t, for t in C(r).

    Raises:
        NotConstructivelyRepresentable: if a norm root is not constructive.
        NotInTorus: if no such element exists in the supported shapes.
    """
    series, n = algebra.series, algebra.rank
    params: List[Scalar] = [1] * n
    odd_d = series is Series.D and n % 2 == 1
    if triple.is_drinfeld_jimbo():
        upper = n - 1 if odd_d else n
        for a in range(upper):
            params[a] = norm_root(t.parameters[a])
        if odd_d:
            sign = mx.normalize(t.parameters[n - 1])
            if sign not in (1, -1):
                raise NotInTorus("Central entry of T0 is not a sign.")
            params[n - 1] = 1 if sign == 1 else SQRT_HBAR
        C = TorusElement(tuple(params)).matrix(series)
    else:
        if not odd_d or mx.normalize(t.parameters[n - 1]) != 1:
            raise NotInTorus(
                "Classes differ in the central sign; no centralizer element."
            )
        characters: Dict[int, Scalar] = {}
        for group in string_groups(triple):
            psi = norm_root(character_value(algebra, group[0], t))
            characters.update((i, psi) for i in group)
        C = torus_from_characters(algebra, characters, last=1).matrix(series)
    if not mx.equal(T0_map(series, n, C), t.matrix(series)):
        raise NotInTorus("Constructed element does not reach the requested T0 value.")
    if not in_centralizer(algebra, triple, C):
        raise NotInTorus("Constructed element is not in C(r).")
    return C


# --- Representatives ---


def minus_datum(algebra: AlgebraRep, triple: AdmissibleTriple) -> DiagonalDatum:
    """
    The datum of the second class for D_n with odd n: a torus element with
    sqrt_h in position n and entries in {1, i} so that T has character -1 on
    the string of alpha_n and 1 elsewhere.
    """
    n = algebra.rank
    chain = string_of(triple, n) or []
    characters = {i: (-1 if i in chain else 1) for i in range(1, n + 1)}
    t = torus_from_characters(algebra, characters, last=-1)
    params: List[Scalar] = []
    for a in range(n - 1):
        value = mx.normalize(t.parameters[a])
        params.append(1 if value == 1 else IMAG_UNIT)
    params.append(SQRT_HBAR)
    return DiagonalDatum(tuple(TorusElement(tuple(params)).diagonal(algebra.series)))


def representative(algebra: AlgebraRep, D: Datum) -> Matrix:
    """complete_to_group(D) J D."""
    datum = _as_datum(D)
    R = complete_to_group(algebra, datum)
    return mx.mul_chain(R, J_matrix(algebra.series, algebra.rank), datum.matrix())


class TwistedClassifier(ICohomologyClassifier):
    """
    Classifies twisted cocycles. The Drinfeld-Jimbo triple has one class;
    the four D_n families with odd n have two, told apart by the sign
    sigma0(d)/d of the datum entry at position n.
    """

    kind = CocycleKind.TWISTED

    def is_cocycle(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, X: Matrix
    ) -> bool:
        return is_twisted_cocycle(algebra, triple, X)

    def _data(
        self, algebra: AlgebraRep, triple: AdmissibleTriple
    ) -> List[Tuple[str, DiagonalDatum]]:
        series, n = algebra.series, algebra.rank
        if triple.is_drinfeld_jimbo():
            return [("trivial", base_datum(series, n))]
        return [
            ("plus", base_datum(series, n)),
            ("minus", minus_datum(algebra, triple)),
        ]

    def classify(self, algebra: AlgebraRep, triple: AdmissibleTriple) -> CohomologySet:
        if not is_twistable(triple):
            logger.info(
                f"{triple.describe()}: r^21 is not conjugate to r; no twisted cocycles"
            )
            return CohomologySet(
                triple, self.kind, (), note="r^21 is not conjugate to r"
            )
        classes = []
        for label, datum in self._data(algebra, triple):
            R = complete_to_group(algebra, datum)
            J = J_matrix(algebra.series, algebra.rank)
            X = mx.mul_chain(R, J, datum.matrix())
            if not is_twisted_cocycle(algebra, triple, X):
                raise NotTwistedCocycle(
                    f"Representative '{label}' fails the cocycle check."
                )
            witnesses = {"R": R, "J": J, "D": datum.matrix()}
            cocycle = Cocycle(X, self.kind, triple, witnesses)
            classes.append(CohomologyClass(label, cocycle))
        logger.info(f"{triple.describe()}: {len(classes)} twisted classes")
        return CohomologySet(triple, self.kind, tuple(classes))

    def _label(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, D: DiagonalDatum
    ) -> str:
        if triple.is_drinfeld_jimbo():
            return "trivial"
        sign = _sigma0_quotient(D.entries[algebra.rank - 1])
        if sign == 1:
            return "plus"
        if sign == -1:
            return "minus"
        raise NotTwistedCocycle(f"sigma0(d_n)/d_n = {sign} is not a sign.")

    def reduce(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, X: Matrix
    ) -> Reduction:
        """
        X = Q * rep * C with Q over K and C in C(r).

        Raises:
            NotTwistedCocycle: if X is not a twisted cocycle.
            NotConstructivelyRepresentable: if Q or C cannot be built exactly.
        """
        series, n = algebra.series, algebra.rank
        R, D = decompose_RJD(algebra, triple, X)
        F = quarter_root_factor(algebra, triple, D)
        D = D.times(DiagonalDatum.from_matrix(mx.inverse(F)))
        label = self._label(algebra, triple, D)
        rep_datum = dict(self._data(algebra, triple))[label]
        R_rep = complete_to_group(algebra, rep_datum)
        J = J_matrix(series, n)
        rep = mx.mul_chain(R_rep, J, rep_datum.matrix())
        try:
            E = D.times(rep_datum.inverse())
            if not all(_in_k_sqrt_h(e) for e in E.entries):
                raise NotConstructivelyRepresentable("Datum ratio leaves K[sqrt_h].")
            t = torus_from_matrix(algebra, T0_map(series, n, E))
            C1 = centralizer_with_T0(algebra, triple, t)
            K0 = mx.mul(E.matrix(), mx.inverse(C1))
            C = mx.mul(C1, F)
            Q = mx.mul_chain(R, J, K0, J_inverse(series, n), mx.inverse(R_rep))
        except (NotInTorus, FormsInequivalent) as exc:
            raise NotConstructivelyRepresentable(
                f"Twisted witnesses unavailable: {exc}"
            ) from exc
        if not (mx.is_over_base(Q) and mx.equal(mx.mul_chain(Q, rep, C), X)):
            raise NotConstructivelyRepresentable("Twisted witnesses do not rebuild X.")
        return Reduction(label, rep, Q, C)

    def equivalent(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, X1: Matrix, X2: Matrix
    ) -> EquivalenceResult:
        return compare_reductions(
            self.reduce(algebra, triple, X1), self.reduce(algebra, triple, X2)
        )


def _in_k_sqrt_h(e: Scalar) -> bool:
    return FieldElement.coerce(e).moving_generators() <= {SQRT_H}


def quarter_root_factor(
    algebra: AlgebraRep, triple: AdmissibleTriple, D: DiagonalDatum
) -> Matrix:
    """
    F in the torus and in C(r) with D F^{-1} over K[sqrt_h]. The parameter
    at index a is h^(1/4) when d_a carries an odd power of h^(1/4), 1 otherwise.

    Raises:
        NotConstructivelyRepresentable: if an entry mixes both parities or
            F is not in C(r).
    """
    params: List[Scalar] = []
    for a in range(algebra.rank):
        entry = FieldElement.coerce(D.entries[a])
        if _in_k_sqrt_h(entry):
            params.append(1)
        elif _in_k_sqrt_h(entry / ROOT4_HBAR):
            params.append(ROOT4_HBAR)
        else:
            raise NotConstructivelyRepresentable(
                f"Datum entry {format_element(entry)} is not a monomial in h^(1/4)."
            )
    F = TorusElement(tuple(params)).matrix(algebra.series)
    if not in_centralizer(algebra, triple, F):
        raise NotConstructivelyRepresentable("The h^(1/4) part of D is not in C(r).")
    if any(p != 1 for p in params):
        logger.debug(f"{triple.describe()}: split off h^(1/4) factor {params}")
    return F


def classify_twisted(algebra: AlgebraRep, triple: AdmissibleTriple) -> CohomologySet:
    return TwistedClassifier().classify(algebra, triple)


def quarter_root_element(series: Series, n: int) -> DiagonalDatum:
    """
    diag(1, ..., h^(1/4), h^(-1/4), ..., 1): the torus element with last
    parameter h^(1/4), so the roots sit at 0-based positions n-1 and n.
    """
    params: List[Scalar] = [1] * (n - 1) + [ROOT4_HBAR]
    return DiagonalDatum(tuple(TorusElement(tuple(params)).diagonal(series)))
