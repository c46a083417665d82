import numpy as np
import pytest

from simplicial_gap.certificates import (
    CertCoeffs,
    assemble,
    closed_form_spectrum,
    coeffs_general,
    coeffs_two_group,
    lower_bound_akk,
    objective_dense_trace,
    objective_povh_rendl,
    profile_identity_residuals,
    verify_povh_rendl,
)
from simplicial_gap.instances import make_equal
from simplicial_gap.matrix_core import SizeLimitError

# oracle values computed independently at 40-digit precision and frozen
TWO_GROUP_8_A = (
    0.56903559372884917,
    0.33333333333333333,
    0.097631072937817492,
    0.0,
)
TWO_GROUP_8_B = (
    0.073223304703363119,
    0.25,
    0.42677669529663688,
    0.25,
)
OBJ_8_2 = 1.1715728752538099
OBJ_16_2 = 0.60896373990970595
B1_16_2 = 0.0095150584360891555


def test_two_group_coefficients_frozen_values():
    c = coeffs_two_group(8)
    assert np.allclose(c.a, TWO_GROUP_8_A, atol=1e-15)
    assert np.allclose(c.b, TWO_GROUP_8_B, atol=1e-15)
    assert coeffs_two_group(16).b[0] == pytest.approx(B1_16_2, rel=1e-13)


def test_general_reduces_to_two_group():
    for n in (6, 8, 16, 30):
        spectrum = coeffs_two_group(n)
        gen = coeffs_general(n, 2)
        assert np.allclose(gen.a, spectrum.a, atol=1e-15)
        assert np.allclose(gen.b, spectrum.b, atol=1e-15)


def test_smallest_general_case_is_exact():
    c = coeffs_general(4, 2)
    assert tuple(c.a) == (1.0, 0.0)
    assert tuple(c.b) == (0.5, 0.5)


@pytest.mark.parametrize("g,n", [(2, 8), (2, 14), (4, 16), (6, 36), (8, 64)])
def test_coefficient_sums_and_coupling(g, n):
    c = coeffs_general(n, g)
    assert c.a.sum() == pytest.approx(1.0, abs=1e-12)
    assert c.b.sum() == pytest.approx(1.0, abs=1e-12)
    assert c.a.min() >= -1e-15 and c.b.min() >= -1e-15
    lhs = (n - g) * c.a + n * (g - 1.0) * c.b
    want = np.full(c.d, 2.0 * g)
    want[-1] = float(g)
    assert np.abs(lhs - want).max() < 1e-12


def test_coeffs_validation():
    with pytest.raises(ValueError):
        coeffs_general(9, 2)
    with pytest.raises(ValueError):
        coeffs_general(12, 3)
    with pytest.raises(ValueError):
        coeffs_general(4, 4)  # one vertex per group
    with pytest.raises(ValueError):
        CertCoeffs(n=8, g=2, a=np.zeros(3), b=np.zeros(4))


def test_densify_block_structure():
    y = assemble(coeffs_two_group(8))
    yd = y.densify()
    amat, bmat = y.inner_matrices()
    assert np.array_equal(yd, yd.T)
    assert np.array_equal(np.diag(yd), np.full(64, 1.0 / 8))
    blocks = yd.reshape(8, 8, 8, 8).transpose(0, 2, 1, 3)
    assert np.array_equal(blocks[0, 0], np.eye(8) / 8)  # same vertex
    assert np.array_equal(blocks[0, 1], amat / 16)  # same group
    assert np.array_equal(blocks[0, 4], bmat / 16)  # across groups
    assert y.block_kind(0, 0) == "identity"
    assert y.block_kind(0, 3) == "within"
    assert y.block_kind(3, 4) == "across"


def test_densify_respects_cap():
    y = assemble(coeffs_two_group(64))
    with pytest.raises(SizeLimitError):
        y.densify(max_dim=1024)


@pytest.mark.parametrize("g,n", [(2, 8), (2, 16), (4, 16)])
def test_verify_passes_dense_and_structured(g, n):
    y = assemble(coeffs_general(n, g))
    dense = verify_povh_rendl(y, dense=True)
    structured = verify_povh_rendl(y, dense=False)
    for rep in (dense, structured):
        assert rep.passed
        assert rep.residual_row_assign <= 1e-9
        assert rep.residual_col_assign <= 1e-9
        assert rep.residual_gangster <= 1e-9
        assert rep.residual_total_sum <= 1e-9
        assert rep.min_entry >= -1e-15
        assert rep.min_eig_closed_form >= -1e-12
    assert dense.dense_checked and not structured.dense_checked
    assert dense.min_eig_numeric >= -1e-12
    assert structured.min_eig_numeric is None


def test_verify_structured_scales_far_past_dense_cap():
    rep = verify_povh_rendl(assemble(coeffs_two_group(512)), dense=False)
    assert rep.passed
    assert rep.min_eig_closed_form >= -1e-12


def test_verify_auto_mode_follows_cap():
    y = assemble(coeffs_two_group(8))
    assert verify_povh_rendl(y).dense_checked  # 64 <= default cap
    assert not verify_povh_rendl(y, max_dim=32).dense_checked


def test_perturbed_total_sum_is_caught():
    c = coeffs_two_group(8)
    c.b[1] += 0.1  # 32 across-group cells gain 0.1 each
    rep = verify_povh_rendl(assemble(c), dense=False)
    assert not rep.passed
    assert rep.residual_total_sum == pytest.approx(3.2, abs=1e-12)
    dense_rep = verify_povh_rendl(assemble(c), dense=True)
    assert dense_rep.residual_total_sum == pytest.approx(3.2, abs=1e-9)


def test_negative_coefficient_is_caught():
    c = coeffs_two_group(8)
    c.a[0] -= 0.6  # drives the within-group entries below zero
    rep = verify_povh_rendl(assemble(c), dense=True)
    assert not rep.passed
    assert rep.min_entry < -1e-9


def test_report_serializes():
    rep = verify_povh_rendl(assemble(coeffs_two_group(8)))
    d = rep.to_json_dict()
    assert d["passed"] is True
    assert d["n"] == 8
    assert isinstance(d["min_eig_closed_form"], str)


def test_objective_frozen_values():
    inst8 = make_equal(2, 4)
    y8 = assemble(coeffs_two_group(8))
    assert objective_povh_rendl(inst8, y8) == pytest.approx(OBJ_8_2, rel=1e-13)
    inst16 = make_equal(2, 8)
    y16 = assemble(coeffs_two_group(16))
    assert objective_povh_rendl(inst16, y16) == pytest.approx(OBJ_16_2, rel=1e-13)


@pytest.mark.parametrize("g,n", [(2, 8), (2, 16), (4, 16)])
def test_objective_double_route(g, n):
    # closed form against the brute-force dense trace
    inst = make_equal(g, n // g)
    y = assemble(coeffs_general(n, g))
    closed = objective_povh_rendl(inst, y)
    dense = objective_dense_trace(inst, y)
    assert closed == pytest.approx(dense, abs=1e-12)


def test_objective_rejects_wrong_layout():
    y = assemble(coeffs_two_group(8))
    with pytest.raises(ValueError):
        objective_povh_rendl(make_equal(4, 2), y)
    with pytest.raises(ValueError):
        objective_dense_trace(make_equal(2, 3), y)


@pytest.mark.parametrize("g,n", [(2, 8), (2, 16), (4, 16), (6, 36)])
def test_spectrum_multiset_matches_dense(g, n, dense_cert):
    _, eigs = dense_cert(g, n)
    multiset = closed_form_spectrum(coeffs_general(n, g)).multiset()
    assert np.abs(multiset / (2.0 * n) - eigs).max() < 1e-8


def test_spectrum_bookkeeping():
    spectrum = closed_form_spectrum(coeffs_two_group(8))
    assert spectrum.total_multiplicity() == 64
    top = [ln for ln in spectrum.lines if ln.k == 0 and ln.family == "coupled-zero"]
    assert top[0].value == pytest.approx(16.0, abs=1e-12)
    for ln in spectrum.lines:
        if ln.family == "coupled-zero" and ln.k >= 1:
            assert abs(ln.value) <= 1e-12
    assert spectrum.min_value() >= -1e-12
    # 2 - 2 * a-profile at k=1 for n=8: profile is 1/3, eigenvalue 4/3
    plain = [ln.value for ln in spectrum.lines if ln.family == "plain" and ln.k == 1]
    assert plain[0] == pytest.approx(4.0 / 3.0, abs=1e-14)


def test_lower_bound_akk_hits_floor_at_small_n():
    assert lower_bound_akk(coeffs_two_group(8)) == pytest.approx(-1.0 / 3, abs=1e-14)


def test_lower_bound_akk_rejects_broken_profiles():
    c = coeffs_two_group(8)
    c.a[0] = 2.0
    with pytest.raises(ArithmeticError):
        lower_bound_akk(c)
    c2 = coeffs_two_group(8)
    c2.a[0] = -1.0
    with pytest.raises(ArithmeticError):
        lower_bound_akk(c2)


@pytest.mark.parametrize("g", [2, 4, 6, 8, 10])
def test_profile_identities_on_grid(g):
    for n in range(2 * g, 201, 2 * g):
        if n // g < 2:
            continue
        res = profile_identity_residuals(coeffs_general(n, g))
        worst = max(abs(v) for v in res.values())
        assert worst <= 1e-9, (g, n, res)
