import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from src.exceptions import IndexOutOfRange, UnsupportedRank

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


class Series(str, Enum):
    """The classical series handled by the library."""

    B = "B"
    C = "C"
    D = "D"


def parse_series(value: str) -> Series:
    try:
        return Series(value.strip().upper())
    except ValueError as exc:
        raise UnsupportedRank(
            f"Unknown series '{value}'. Expected one of B, C, D.", series=value
        ) from exc


def validate_rank(series: Series, n: int) -> None:
    """
    Raises UnsupportedRank below rank 2. D_2 is accepted for the matrix
    examples but logged, since its Dynkin diagram is disconnected.
    """
    if n < 2:
        raise UnsupportedRank(
            f"{series.value}_{n} is not supported; rank must be at least 2.",
            series=series.value,
            rank=n,
        )
    if series is Series.D and n == 2:
        logger.warning("D_2 is reducible; only matrix identities are meaningful.")


def matrix_size(series: Series, n: int) -> int:
    return 2 * n + 1 if series is Series.B else 2 * n


def algebra_dimension(series: Series, n: int) -> int:
    return n * (2 * n - 1) if series is Series.D else n * (2 * n + 1)


def check_index(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"Simple root index {i} outside 1..{n}.")


@lru_cache(maxsize=None)
def simple_root_eps(series: Series, n: int) -> Tuple[Vector, ...]:
    """Simple roots in the coordinates epsilon_1..epsilon_n."""
    roots: List[Vector] = []
    for i in range(1, n):
        v = [0] * n
        v[i - 1], v[i] = 1, -1
        roots.append(tuple(v))
    last = [0] * n
    if series is Series.B:
        last[n - 1] = 1
    elif series is Series.C:
        last[n - 1] = 2
    else:
        last[n - 2], last[n - 1] = 1, 1
    roots.append(tuple(last))
    return tuple(roots)


def root_eps(series: Series, n: int, coefficients: Vector) -> Vector:
    """A root given by simple-root coefficients, in epsilon coordinates."""
    simple = simple_root_eps(series, n)
    return tuple(
        sum(c * simple[k][j] for k, c in enumerate(coefficients)) for j in range(n)
    )


@lru_cache(maxsize=None)
def gram_matrix(series: Series, n: int) -> Tuple[Tuple[int, ...], ...]:
    """Euclidean inner products of the simple roots."""
    simple = simple_root_eps(series, n)
    return tuple(
        tuple(sum(a * b for a, b in zip(simple[i], simple[j])) for j in range(n))
        for i in range(n)
    )


@lru_cache(maxsize=None)
def cartan_matrix(series: Series, n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    gram = gram_matrix(series, n)
    return tuple(
        tuple(Fraction(2 * gram[i][j], gram[j][j]) for j in range(n)) for i in range(n)
    )
