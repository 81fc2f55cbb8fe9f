"""Scalar and matrix spectral factorization round trips."""

import numpy as np
import pytest

from toepcone.fejer_riesz import (
    convolution_check,
    factor_matrix,
    factor_scalar,
    factorize,
)
from toepcone.sampling import (
    autocorrelation_block,
    autocorrelation_scalar,
    random_nonneg_trig,
    random_psd_valued_block,
    rng_from_seed,
)
from toepcone.trig_core import BlockTrigPoly, Tolerance, TrigPoly, circle_grid


def _analytic(f):
    """All negative-offset coefficients of the factor must vanish."""
    c = np.asarray(f.coeffs)
    return float(np.max(np.abs(c[: f.d]))) if f.d else 0.0


def test_worked_scalar_example():
    # |3 + 2z + z^2|^2 has autocorrelation coefficients (14, 8, 3)
    f = autocorrelation_scalar(np.array([3.0, 2.0, 1.0]))
    np.testing.assert_allclose(f.coeffs, [3, 8, 14, 8, 3])
    fac = factor_scalar(f)
    assert fac.residual < 1e-12
    assert _analytic(fac.H) < 1e-14
    assert convolution_check(fac.H, f) < 1e-12


def test_scalar_constant_symbol():
    fac = factor_scalar(TrigPoly.from_coeffs({0: 9.0}))
    assert fac.H.coeff(0) == pytest.approx(3.0)
    assert fac.residual == 0.0


def test_scalar_boundary_zero():
    # f = |z - 1|^2 vanishes at z = 1; the double root still pairs up
    f = TrigPoly.from_coeffs({-1: -1.0, 0: 2.0, 1: -1.0})
    fac = factor_scalar(f)
    assert fac.residual < 1e-10
    vals = fac.H.eval(circle_grid(64))
    assert np.min(np.abs(vals)) < 1e-5  # the factor inherits the circle zero


def test_scalar_rejects_negative_symbol():
    with pytest.raises(ValueError):
        factor_scalar(TrigPoly.from_coeffs({-1: 1.0, 0: 1.0, 1: 1.0}))
    with pytest.raises(ValueError):
        factor_scalar(TrigPoly.chi(1))  # not selfadjoint


def test_scalar_random_round_trips():
    rng = rng_from_seed(77)
    for _ in range(40):
        d = int(rng.integers(1, 7))
        f = random_nonneg_trig(rng, d)
        fac = factor_scalar(f)
        assert fac.residual < 1e-9
        assert _analytic(fac.H) < 1e-12


def test_matrix_round_trips():
    rng = rng_from_seed(78)
    for _ in range(15):
        d = int(rng.integers(1, 5))
        m = int(rng.integers(2, 4))
        F = random_psd_valued_block(rng, d, m)
        fac = factor_matrix(F)
        assert fac.residual < 1e-8
        assert convolution_check(fac, F) == fac.residual
        # returned factor is analytic
        np.testing.assert_allclose(fac.H.coeffs[: fac.H.d], 0.0, atol=1e-14)


def test_matrix_constant_symbol():
    c = np.array([[[2.0, 1.0], [1.0, 2.0]]], dtype=complex)
    F = BlockTrigPoly(0, 2, c)
    fac = factor_matrix(F)
    assert fac.residual < 1e-12


def test_matrix_boundary_singular_symbol():
    # H(z) = (1 - z) I has an exact circle zero; regularization absorbs it
    b = np.zeros((2, 2, 2), dtype=complex)
    b[0] = np.eye(2)
    b[1] = -np.eye(2)
    F = autocorrelation_block(b)
    fac = factor_matrix(F)
    assert fac.residual < 1e-7
    assert fac.regularization >= 0.0


def test_matrix_rejects_indefinite_symbol():
    c = np.zeros((3, 2, 2), dtype=complex)
    c[1] = np.diag([1.0, -1.0])
    with pytest.raises(ValueError):
        factor_matrix(BlockTrigPoly(1, 2, c))


def test_factorize_dispatch():
    rng = rng_from_seed(79)
    assert factorize(random_nonneg_trig(rng, 2)).residual < 1e-10
    assert factorize(random_psd_valued_block(rng, 2, 2)).residual < 1e-8
    with pytest.raises(TypeError):
        factorize(np.eye(2))


def test_convolution_check_flags_wrong_factor():
    f = autocorrelation_scalar(np.array([3.0, 2.0, 1.0]))
    wrong = TrigPoly.from_coeffs({0: 1.0, 1: 1.0, 2: 1.0})
    assert convolution_check(wrong, f) > 1.0


def test_tight_tolerance_failure_reports_best():
    rng = rng_from_seed(80)
    F = random_psd_valued_block(rng, 3, 2)
    with pytest.raises(RuntimeError, match="best residual"):
        factor_matrix(F, Tolerance(residual_tol=1e-18), max_iter=1)
