import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from radialeit.operator import (
    BoundaryField,
    InversionSettings,
    Spectrum,
    apply_operator,
    decay_constant,
    dual_route,
    eigenvalue_moment,
    eigenvalue_series,
    forward_matrix,
    harmonic_space_dim,
    invert,
    spectrum_moment,
    spectrum_series,
    truncate,
    truncation_error,
    verify_decay_bound,
    verify_factorial_ratio_bound,
)
from radialeit.profiles import JacobiExpansion, norm_ball_profile, preset, project


# ---------------------------------------------------------------------------
# eigenspace dimensions


def test_harmonic_space_dims():
    assert [harmonic_space_dim(ell, 2) for ell in range(4)] == [1, 2, 2, 2]
    assert [harmonic_space_dim(ell, 3) for ell in range(4)] == [1, 3, 5, 7]
    # d=4, ell=2: C(5,3) - C(3,3) = 9
    assert harmonic_space_dim(2, 4) == 9
    with pytest.raises(ValueError):
        harmonic_space_dim(-1, 3)
    with pytest.raises(ValueError):
        harmonic_space_dim(2, 1)


# ---------------------------------------------------------------------------
# the two eigenvalue routes


def test_constant_profile_closed_form():
    prof = preset("constant", [1.0])
    for d in (2, 3, 6):
        exp = project(prof, d, 0)
        for ell in (1, 2, 9, 31):
            assert abs(eigenvalue_series(exp, ell) + 1.0 / ell) <= 1e-12
            assert abs(eigenvalue_moment(prof, d, ell) + 1.0 / ell) <= 1e-12


def test_ramp_closed_form_d2():
    # eta = r in d=2: lambda_ell = -2/(2 ell + 1)
    prof = preset("ramp", [1.0])
    exp = project(prof, 2, 1)
    for ell in (1, 2, 5, 20):
        want = -2.0 / (2 * ell + 1)
        assert abs(eigenvalue_series(exp, ell) - want) <= 1e-13
        assert abs(eigenvalue_moment(prof, 2, ell) - want) <= 1e-13


def test_annulus_values_d2():
    prof = preset("annulus", [0.5, 1.0, 1.0])
    assert abs(eigenvalue_moment(prof, 2, 1) - (-0.75)) < 1e-15
    assert abs(abs(eigenvalue_moment(prof, 2, 6)) - (1.0 - 0.5**12) / 6.0) < 1e-15


def test_series_is_linear_in_the_coefficients():
    rng = np.random.default_rng(7)
    a = rng.normal(size=9)
    b = rng.normal(size=9)
    for d in (2, 4):
        ea, eb = JacobiExpansion(d, a), JacobiExpansion(d, b)
        both = JacobiExpansion(d, 0.7 * a + b)
        for ell in (1, 3, 5):
            mix = 0.7 * eigenvalue_series(ea, ell) + eigenvalue_series(eb, ell)
            assert abs(eigenvalue_series(both, ell) - mix) <= 1e-12


def test_spectrum_sources_and_norms():
    prof = preset("annulus", [0.3, 0.8, -1.5])
    full = spectrum_series(project(prof, 3, 18), 10)
    cut = spectrum_series(project(prof, 3, 5), 10)
    assert full.source == "series"
    assert cut.source == "series-truncated"
    mom = spectrum_moment(prof, 3, 10)
    assert mom.source == "moment"
    assert abs(mom.eta_norm - norm_ball_profile(prof, 3)) < 1e-14
    assert mom.max_index == 10
    assert mom.eigenvalue(10) == mom.eigenvalues[9]
    with pytest.raises(ValueError):
        mom.eigenvalue(11)
    with pytest.raises(ValueError):
        mom.eigenvalues[0] = 0.0


def test_dual_route_report():
    prof = preset("polynomial", [0.2, -1.0, 0.0, 0.5])
    rep = dual_route(prof, 3, 12)
    assert rep.ok and rep.max_scaled_diff <= 1e-10
    assert rep.series.source == "series"
    # starving the series route of coefficients must show up, not be hidden
    rough = preset("annulus", [0.5, 1.0, 1.0])
    starved = dual_route(rough, 2, 12, coeff_degree=3)
    assert starved.series.source == "series-truncated"
    assert starved.max_scaled_diff > 1e-8


def test_route_input_validation():
    exp = JacobiExpansion(2, np.array([1.0]))
    with pytest.raises(ValueError):
        eigenvalue_series(exp, 0)
    with pytest.raises(ValueError):
        eigenvalue_moment(preset("constant", [1.0]), 2, 0)
    with pytest.raises(ValueError):
        spectrum_series(exp, 0)


# ---------------------------------------------------------------------------
# decay bounds


def test_decay_constant_values():
    assert abs(decay_constant(2) - 4.337750205676911) < 1e-12
    assert abs(decay_constant(3) - 7.585566870553692) < 1e-12
    assert abs(decay_constant(4) - 13.304975533734881) < 1e-12
    with pytest.raises(ValueError):
        decay_constant(1)


def test_decay_bound_constant_profile():
    spec = spectrum_moment(preset("constant", [1.0]), 2, 100)
    rep = verify_decay_bound(spec)
    assert rep.ok and not rep.violations
    assert np.all(rep.margins > 0.0)
    # sup of sqrt(ell)|lambda_ell| / ||eta|| is attained at ell=1: 1/sqrt(pi)
    assert abs(rep.scaled_sup - 1.0 / math.sqrt(math.pi)) < 1e-14


def test_decay_bound_flags_fabricated_violations():
    bogus = Spectrum(d=2, eigenvalues=np.array([10.0, 0.1]), source="external", eta_norm=1.0)
    rep = verify_decay_bound(bogus)
    assert not rep.ok and rep.violations == (1,)


def test_zero_profile_spectrum_is_zero_and_bounded():
    spec = spectrum_moment(preset("constant", [0.0]), 3, 20)
    assert np.all(spec.eigenvalues == 0.0)
    rep = verify_decay_bound(spec)
    assert rep.ok and rep.scaled_sup == 0.0


def test_factorial_ratio_bound_sweep():
    for d in (2, 4, 6):
        rep = verify_factorial_ratio_bound(d, 60)
        assert rep.ok and not rep.violations
        assert rep.pairs_checked == 60 * 60  # sum of (2 ell - 1)
        assert rep.max_excess == 0.0  # attained exactly at k = 0


# ---------------------------------------------------------------------------
# applying and truncating


def test_apply_scales_blocks_m_independently():
    spec = spectrum_moment(preset("constant", [1.0]), 3, 6)
    field = BoundaryField(d=3, blocks={1: np.array([1.0, 2.0, 3.0]), 4: np.ones(9)})
    out = apply_operator(spec, field)
    assert_allclose(out.block(1), -1.0 * np.array([1.0, 2.0, 3.0]), rtol=0, atol=0)
    assert_allclose(out.block(4), -0.25 * np.ones(9), rtol=0, atol=1e-15)
    assert out.degrees == (1, 4)


def test_field_validation():
    with pytest.raises(ValueError):
        BoundaryField(d=3, blocks={0: np.array([1.0])})  # mean-free data only
    with pytest.raises(ValueError):
        BoundaryField(d=3, blocks={2: np.ones(4)})  # wrong eigenspace dimension
    spec = spectrum_moment(preset("constant", [1.0]), 3, 3)
    field = BoundaryField(d=2, blocks={1: np.ones(2)})
    with pytest.raises(ValueError):
        apply_operator(spec, field)  # dimension mismatch
    tall = BoundaryField(d=3, blocks={5: np.ones(11)})
    with pytest.raises(ValueError):
        apply_operator(spec, tall)  # degree beyond the spectrum


def test_truncation_error_constant_profile():
    # eta = 1, cutoff 3, spectrum to 10: the tail starts at |lambda_4| = 1/4
    spec = spectrum_moment(preset("constant", [1.0]), 2, 10)
    rep = truncation_error(truncate(spec, 3))
    assert rep.tail_norm == 0.25
    assert rep.ok
    assert truncation_error(truncate(spec, 10)).tail_norm == 0.0
    with pytest.raises(ValueError):
        truncate(spec, 11)
    with pytest.raises(ValueError):
        truncate(spec, -1)


def test_truncated_apply_zeroes_high_degrees():
    spec = spectrum_moment(preset("constant", [1.0]), 2, 8)
    op = truncate(spec, 2)
    field = BoundaryField(d=2, blocks={1: np.ones(2), 2: np.ones(2), 5: np.ones(2)})
    out = op.apply(field)
    assert_allclose(out.block(1), -np.ones(2), rtol=0, atol=0)
    assert np.all(out.block(5) == 0.0)
    assert out.degrees == (1, 2, 5)


def test_tail_norm_is_non_increasing_in_cutoff():
    spec = spectrum_moment(preset("annulus", [0.3, 0.8, -1.5]), 2, 40)
    tails = [truncation_error(truncate(spec, n)).tail_norm for n in range(21)]
    assert all(tails[i + 1] <= tails[i] for i in range(20))


# ---------------------------------------------------------------------------
# inversion


def test_forward_matrix_structure():
    m = forward_matrix(2, 5, 7)
    assert m.shape == (5, 7)
    for ell in range(1, 6):
        assert np.all(m[ell - 1, 2 * ell - 1 :] == 0.0)
    assert abs(m[0, 0] + math.sqrt(2.0)) < 1e-15  # lambda_1 = -sqrt(d) a_0
    with pytest.raises(ValueError):
        forward_matrix(2, 5, 10)  # needs num_coeffs <= 2 L - 1
    with pytest.raises(ValueError):
        forward_matrix(2, 5, 0)


def test_round_trip_recovery():
    rng = np.random.default_rng(42)
    for d in (2, 3):
        a = rng.normal(size=5)
        spec = spectrum_series(JacobiExpansion(d, a), 10)
        res = invert(spec, 5)
        assert np.abs(res.expansion.coeffs - a).max() <= 1e-8
        assert res.effective_rank == 5
        assert res.residual_norm <= 1e-10
        assert res.singular_values.shape == (5,)


def test_first_singular_value_pinned_d2():
    spec = spectrum_moment(preset("constant", [1.0]), 2, 10)
    res = invert(spec, 5)
    assert abs(res.singular_values[0] - 1.8714935618191042) < 1e-12


def test_zero_spectrum_gives_zero_coefficients():
    zero = Spectrum(d=2, eigenvalues=np.zeros(10), source="external", eta_norm=0.0)
    res = invert(zero, 5)
    assert np.all(res.expansion.coeffs == 0.0)
    assert res.residual_norm == 0.0


def test_regularization_controls():
    spec = spectrum_moment(preset("constant", [1.0]), 2, 10)
    plain = invert(spec, 5)
    # a harsh relative cutoff must drop rank
    hard = invert(spec, 5, InversionSettings(rel_cutoff=1e-1))
    assert hard.effective_rank < plain.effective_rank
    # ridge damping shrinks the solution and grows the residual
    ridged = invert(spec, 5, InversionSettings(ridge=1e-2))
    assert np.linalg.norm(ridged.expansion.coeffs) < np.linalg.norm(plain.expansion.coeffs)
    assert ridged.residual_norm > plain.residual_norm
    with pytest.raises(ValueError):
        InversionSettings(rel_cutoff=-0.1)
    with pytest.raises(ValueError):
        InversionSettings(rel_cutoff=1.5)
    with pytest.raises(ValueError):
        InversionSettings(ridge=-1.0)


def test_invert_validates_coefficient_count():
    spec = spectrum_moment(preset("constant", [1.0]), 2, 10)
    with pytest.raises(ValueError):
        invert(spec, 0)
    with pytest.raises(ValueError):
        invert(spec, 20)
