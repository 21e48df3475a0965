import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gelfand_lab.partition import (
    InterlacingCoordinates,
    Partition,
    dim_exact,
    interlacing_of,
    log_dim,
    moment_p,
    partitions_of,
)
from gelfand_lab.square_roots import involution_count

from oracles import brute_involutions, brute_syt, corners_bruteforce


def test_partition_validates():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    p = Partition((3, 1, 1))
    assert p.size == 5
    assert p.multiplicities() == {3: 1, 1: 2}
    assert p.conjugate() == Partition((3, 1, 1))
    assert Partition.of([1, 3, 1]) == p


def test_json_roundtrip():
    p = Partition((7, 6, 4, 4, 3, 1))
    assert p.to_json() == "[7, 6, 4, 4, 3, 1]"
    assert Partition.from_json(p.to_json()) == p


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_interlacing_examples():
    assert interlacing_of(Partition(())) == InterlacingCoordinates((0,), ())
    assert interlacing_of(Partition((2, 1))) == InterlacingCoordinates((-2, 0, 2), (-1, 1))
    ic = interlacing_of(Partition((7, 6, 4, 4, 3, 1)))
    assert len(ic.x) == 6 and len(ic.y) == 5
    assert ic.moment(2) == 50


def test_interlacing_rejects_bad_input():
    with pytest.raises(ValueError):
        InterlacingCoordinates((0, 1), (2,))


@pytest.mark.parametrize("n", range(0, 31))
def test_interlacing_exhaustive(n):
    for lam in partitions_of(n):
        ic = interlacing_of(lam)
        assert (ic.x, ic.y) == corners_bruteforce(lam.parts)
        assert sum(ic.x) - sum(ic.y) == 0
        assert ic.moment(2) == 2 * n


def test_moment_examples():
    lam = Partition((2, 1))
    assert moment_p(lam, 1) == 0
    assert moment_p(lam, 2) == 6
    assert moment_p(lam, 3) == 0
    assert moment_p(lam, 4) == 30
    with pytest.raises(ValueError):
        moment_p(lam, 0)


def test_dim_examples():
    assert dim_exact(Partition((2, 1))) == 2
    for n in range(1, 15):
        assert dim_exact(Partition((n,))) == 1
    assert sum(dim_exact(lam) for lam in partitions_of(6)) == 76 == brute_involutions(6)


@pytest.mark.parametrize("n", range(1, 10))
def test_dim_matches_branching_count(n):
    for lam in partitions_of(n):
        assert dim_exact(lam) == brute_syt(lam.parts)


@pytest.mark.parametrize("n", range(0, 13))
def test_dimension_sums(n):
    dims = [dim_exact(lam) for lam in partitions_of(n)]
    assert sum(dims) == involution_count(n)
    assert sum(d * d for d in dims) == math.factorial(n)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=40))
def test_log_dim_matches_exact(parts):
    lam = Partition.of(parts)
    exact = dim_exact(lam)
    assert abs(log_dim(lam) - math.log(exact)) < 1e-9


def test_log_dim_large_n():
    # staircase-ish shape of size 10^4, compared against exact big-int logarithm
    parts = [100] * 100
    lam = Partition(tuple(parts))
    exact = dim_exact(lam)
    shift = exact.bit_length() - 800
    log_exact = math.log(exact >> shift) + shift * math.log(2)
    assert abs(log_dim(lam) - log_exact) < 1e-9 * max(1.0, abs(log_exact)) + 1e-6
    assert abs(Fraction(log_dim(lam)) - Fraction(log_exact)) < 1e-6
