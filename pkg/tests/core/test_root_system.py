# File: tests/core/test_root_system.py

from fractions import Fraction

import pytest

from src.core.root_system import (
    Series,
    algebra_dimension,
    cartan_matrix,
    check_index,
    gram_matrix,
    matrix_size,
    parse_series,
    root_eps,
    simple_root_eps,
    validate_rank,
)
from src.exceptions import IndexOutOfRange, UnsupportedRank


@pytest.mark.parametrize("text, expected", [("B", Series.B), (" c ", Series.C)])
def test_parse_series(text, expected):
    assert parse_series(text) is expected


def test_parse_series_rejects_unknown():
    with pytest.raises(UnsupportedRank):
        parse_series("A")


def test_validate_rank_bounds():
    with pytest.raises(UnsupportedRank):
        validate_rank(Series.B, 1)
    validate_rank(Series.C, 2)


def test_d2_is_accepted_with_warning(caplog):
    validate_rank(Series.D, 2)
    assert "reducible" in caplog.text


@pytest.mark.parametrize(
    "series, n, size, dim",
    [
        (Series.B, 2, 5, 10),
        (Series.C, 3, 6, 21),
        (Series.D, 4, 8, 28),
        (Series.D, 5, 10, 45),
    ],
)
def test_sizes_and_dimensions(series, n, size, dim):
    assert matrix_size(series, n) == size
    assert algebra_dimension(series, n) == dim


def test_simple_roots_in_epsilon_coordinates():
    assert simple_root_eps(Series.B, 2) == ((1, -1), (0, 1))
    assert simple_root_eps(Series.C, 2) == ((1, -1), (0, 2))
    assert simple_root_eps(Series.D, 3) == ((1, -1, 0), (0, 1, -1), (0, 1, 1))


def test_root_eps_of_highest_root_b2():
    assert root_eps(Series.B, 2, (1, 2)) == (1, 1)


def test_gram_and_cartan_matrix_b2():
    assert gram_matrix(Series.B, 2) == ((2, -1), (-1, 1))
    assert cartan_matrix(Series.B, 2) == (
        (Fraction(2), Fraction(-2)),
        (Fraction(-1), Fraction(2)),
    )


def test_d_series_forks_at_the_end():
    gram = gram_matrix(Series.D, 4)
    assert gram[1][2] == gram[1][3] == -1
    assert gram[2][3] == 0


def test_check_index():
    check_index(3, 3)
    with pytest.raises(IndexOutOfRange):
        check_index(3, 0)
