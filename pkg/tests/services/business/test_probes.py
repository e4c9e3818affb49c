# File: tests/services/business/test_probes.py

import pytest

from src.config import config
from src.core import matrices as mx
from src.core.bd_triples import drinfeld_jimbo, make_triple
from src.core.lie_algebra import build_algebra, group_membership
from src.core.root_system import Series
from src.services.business.cocycles import block_decompose, in_centralizer
from src.services.business.probes import ProbeGenerator
from src.services.business.twisted import is_in_Z


def test_seed_defaults_to_config(mocker):
    mocker.patch.object(config, "PROBE_SEED", 99)
    assert ProbeGenerator().seed == 99
    assert ProbeGenerator(4).seed == 4


def test_generators_are_reproducible():
    first, second = ProbeGenerator(7), ProbeGenerator(7)
    assert [first.base_scalar() for _ in range(5)] == [
        second.base_scalar() for _ in range(5)
    ]


@pytest.mark.parametrize("series, n", [(Series.B, 2), (Series.C, 2), (Series.D, 4)])
def test_base_group_elements_are_in_the_group(series, n):
    algebra = build_algebra(series, n)
    X = ProbeGenerator(1).base_group_element(algebra)
    assert mx.is_over_base(X)
    assert group_membership(algebra, X)


def test_centralizer_elements_are_in_the_centralizer():
    d4 = build_algebra(Series.D, 4)
    triple = make_triple(Series.D, 4, {1: 3})
    generator = ProbeGenerator(2)
    for _ in range(3):
        assert in_centralizer(d4, triple, generator.centralizer_element(d4, triple))


@pytest.mark.parametrize(
    "series, n", [(Series.B, 2), (Series.B, 3), (Series.C, 2), (Series.D, 3)]
)
def test_data_in_Z_are_accepted(series, n):
    algebra = build_algebra(series, n)
    datum = ProbeGenerator(3).datum_in_Z(algebra)
    assert is_in_Z(algebra, drinfeld_jimbo(series, n), datum)


def test_twisted_group_data_are_group_elements():
    b2 = build_algebra(Series.B, 2)
    X, _ = ProbeGenerator(4).twisted_group_datum(b2)
    assert group_membership(b2, X)


def test_block_instances_decompose():
    X, Q0, K0 = ProbeGenerator(6).block_instance(3)
    assert mx.equal(mx.mul(Q0, K0), X)
    Q, K = block_decompose(X)
    assert mx.is_over_base(Q)
    assert mx.equal(mx.mul(Q, K), X)
