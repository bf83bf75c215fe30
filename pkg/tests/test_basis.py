"""Laguerre recurrence and displaced-overlap table against brute force."""

import math

import numpy as np
import pytest

from rabispec import (DomainError, ModelParams, ResourceLimitError,
                      build_overlap_table, laguerre, overlap)
from rabispec._kernels import _overlap_cy, _overlap_py

from conftest import overlap_oracle

BACKENDS = [_overlap_py, _overlap_cy]


def laguerre_direct(m, k, x):
    """Explicit alternating sum, fine for small m."""
    return sum((-1) ** i * math.comb(m + k, m - i) * x**i / math.factorial(i)
               for i in range(m + 1))


def test_laguerre_trivial_values():
    assert laguerre(0, 0, 3.7) == 1.0
    assert laguerre(1, 1, 1.0) == 1.0          # k + 1 - x
    assert laguerre(2, 0, 1.0) == pytest.approx(-0.5, abs=1e-15)


@pytest.mark.parametrize("m", range(6))
@pytest.mark.parametrize("k", [0, 1, 3, 7])
def test_laguerre_matches_direct_sum(m, k):
    for x in (0.0, 0.04, 1.0, 4.0, 9.0):
        assert laguerre(m, k, x) == pytest.approx(laguerre_direct(m, k, x), abs=1e-12)


def test_laguerre_index_limits():
    assert laguerre(512, 0, 1.0) == laguerre(512, 0, 1.0)
    with pytest.raises(DomainError):
        laguerre(513, 0, 1.0)
    with pytest.raises(DomainError):
        laguerre(3, 513, 1.0)
    with pytest.raises(DomainError):
        laguerre(3, 2, math.inf)


def test_overlap_trivial_values():
    assert overlap(0, 0, 0.5) == pytest.approx(math.exp(-0.5), abs=1e-15)
    assert overlap(1, 3, 0.0) == 0.0
    assert overlap(2, 2, 0.0) == 1.0


def test_overlap_requires_ordered_indices():
    with pytest.raises(DomainError):
        overlap(3, 1, 0.5)
    with pytest.raises(DomainError):
        overlap(0, 0, -0.2)
    with pytest.raises(ResourceLimitError):
        overlap(0, 513, 0.5)


def test_overlap_against_fock_expansion():
    assert overlap(1, 3, 0.7) == pytest.approx(overlap_oracle(1, 3, 0.7), abs=1e-12)


@pytest.mark.parametrize("g", [0.1, 0.5, 1.0, 1.5])
def test_overlap_oracle_grid(g):
    for m in range(11):
        for n in range(m, 11):
            assert overlap(m, n, g) == pytest.approx(
                overlap_oracle(m, n, g), abs=1e-10)


def test_overlap_bounded_by_one():
    for g in (0.05, 0.3, 0.9, 1.5, 2.5):
        for m in range(0, 30, 5):
            for n in range(m, 30, 5):
                assert abs(overlap(m, n, g)) <= 1.0 + 1e-15


def test_table_zero_coupling_is_alternating_diagonal():
    t = build_overlap_table(ModelParams(1.0, 0.0, 0.0), 6)
    expected = np.diag([0.5 * (-1.0) ** m for m in range(7)])
    np.testing.assert_array_equal(t.entries, expected)


def test_table_single_entry():
    t = build_overlap_table(ModelParams(1.0, 0.0, 0.5), 0)
    assert t.entries[0, 0] == pytest.approx(0.3032653298563167, abs=1e-15)


def test_table_matches_oracle_entrywise():
    params = ModelParams(0.5, 0.0, 0.3)
    t = build_overlap_table(params, 5)
    for m in range(6):
        for n in range(6):
            lo, hi = min(m, n), max(m, n)
            ref = 0.5 * params.delta * (-1.0) ** lo * overlap_oracle(lo, hi, params.g)
            assert t.entries[m, n] == pytest.approx(ref, abs=1e-12)


def test_table_symmetry_is_exact():
    t = build_overlap_table(ModelParams(1.3, 0.0, 0.8), 40)
    assert np.array_equal(t.entries, t.entries.T)


def test_table_ceiling_and_validation():
    with pytest.raises(ResourceLimitError):
        build_overlap_table(ModelParams(1.0, 0.0, 0.5), 513)
    with pytest.raises(DomainError):
        build_overlap_table(ModelParams(1.0, 0.0, 0.5), -1)
    with pytest.raises(DomainError):
        ModelParams(-0.5, 0.0, 0.5)
    with pytest.raises(DomainError):
        ModelParams(1.0, 0.0, -0.5)
    with pytest.raises(DomainError):
        ModelParams(1.0, math.nan, 0.5)


def test_table_is_read_only():
    t = build_overlap_table(ModelParams(1.0, 0.0, 0.5), 4)
    with pytest.raises(ValueError):
        t.entries[0, 0] = 1.0


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
def test_backends_finite_at_max_truncation(backend):
    table = backend.fill_table(1.5, 1.5, 513)
    assert np.all(np.isfinite(table))
    assert np.array_equal(table, table.T)


def test_backends_agree():
    for delta, g, size in [(1.0, 0.5, 48), (0.5, 1.5, 130), (2.0, 0.0, 9)]:
        a = _overlap_cy.fill_table(delta, g, size)
        b = _overlap_py.fill_table(delta, g, size)
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-13)


def test_scalar_overlap_consistent_with_kernel_table():
    params = ModelParams(0.7, 0.0, 0.9)
    t = build_overlap_table(params, 25)
    for m in range(0, 26, 3):
        for n in range(m, 26, 3):
            ref = 0.5 * params.delta * (-1.0) ** m * overlap(m, n, params.g)
            assert t.entries[m, n] == pytest.approx(ref, abs=1e-14)
