import numpy as np
import pytest

from simplicial_gap.circulant import (
    SymmetricCirculant,
    basis,
    circulant_spectrum,
    cosine_profile,
    identity_suite,
    lagrange_cosine_sum,
    ring_adjacency,
)


def test_first_row_layout():
    c = SymmetricCirculant(6, [1.0, 2.0, 3.0])
    # offsets 1 and 5 get coeff 1, 2 and 4 get coeff 2, the antipode gets 2*3
    assert np.array_equal(c.first_row(), [0.0, 1.0, 2.0, 6.0, 2.0, 1.0])
    assert c.row_sum() == 12.0


def test_densify_symmetric_circulant():
    rng = np.random.default_rng(3)
    c = SymmetricCirculant(8, rng.normal(size=4))
    m = c.densify()
    assert np.array_equal(m, m.T)
    # every row is a rotation of the first
    for r in range(8):
        assert np.array_equal(m[r], np.roll(m[0], r))
    assert np.allclose(m.sum(axis=1), c.row_sum(), atol=1e-12)


def test_basis_matrices_cover_offdiagonal():
    # offsets 1..d-1 contribute once each, the antipode twice; row sums are
    # all 2 so the stack of basis matrices sums to J - I + antipode
    total = sum(basis(6, i).densify() for i in range(1, 4))
    antipode = np.roll(np.eye(6), 3, axis=1)
    assert np.array_equal(total, np.ones((6, 6)) - np.eye(6) + antipode)
    for i in range(1, 4):
        assert basis(6, i).row_sum() == 2.0


def test_spectrum_matches_dense_eigenvalues():
    rng = np.random.default_rng(4)
    c = SymmetricCirculant(10, rng.normal(size=5))
    dense = np.linalg.eigvalsh(c.densify())
    assert np.abs(circulant_spectrum(c) - dense).max() < 1e-12


def test_cosine_profile_reflection_is_exact():
    rng = np.random.default_rng(5)
    prof = cosine_profile(rng.normal(size=9), 18)
    for k in range(1, 18):
        assert prof[k] == prof[18 - k]


def test_cosine_profile_zero_frequency_is_plain_sum():
    coeffs = np.array([0.5, 0.25, 0.125])
    assert cosine_profile(coeffs, 6)[0] == pytest.approx(coeffs.sum(), abs=1e-15)


@pytest.mark.parametrize("n", [6, 8, 14])
def test_lagrange_cosine_sum_against_brute_force(n):
    d = n // 2
    j = np.arange(1, d + 1)
    for k in range(n + 1):
        brute = float(np.cos(np.pi * j * k / d).sum())
        assert lagrange_cosine_sum(n, k) == pytest.approx(brute, abs=1e-12)


def test_ring_adjacency_structure():
    m = ring_adjacency(6)
    assert np.array_equal(m, m.T)
    assert np.array_equal(m.sum(axis=1), np.full(6, 2.0))
    assert m[0, 1] == m[0, 5] == 1.0 and m[0, 2] == 0.0
    # odd sizes work too
    m5 = ring_adjacency(5)
    assert np.array_equal(m5.sum(axis=1), np.full(5, 2.0))


def test_ring_adjacency_minimum_size():
    with pytest.raises(ValueError):
        ring_adjacency(2)


@pytest.mark.parametrize("g", [2, 4, 6, 8, 10])
def test_identity_suite_residuals_tiny(g):
    for n in range(2 * g, 201, 2 * g):
        suite = identity_suite(g, n)
        worst = max(abs(v) for v in suite.values())
        assert worst <= 1e-9, (g, n, suite)


def test_identity_suite_has_stable_keys():
    keys = sorted(identity_suite(2, 8))
    assert keys == sorted(identity_suite(4, 16))
    assert len(keys) == 6


def test_identity_suite_rejects_bad_config():
    with pytest.raises(ValueError):
        identity_suite(3, 12)
    with pytest.raises(ValueError):
        identity_suite(4, 6)
    with pytest.raises(ValueError):
        identity_suite(2, 7)
