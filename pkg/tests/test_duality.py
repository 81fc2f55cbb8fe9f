"""Pairing identities, dual functionals, and the atomic decomposition."""

import numpy as np
import pytest

from toepcone.duality import (
    AtomicMeasure,
    DualFunctional,
    atom_functional,
    caratheodory_decompose,
    dual_basis_eval,
    pair,
    truncate_symbol,
)
from toepcone.sampling import random_psd_toeplitz, rng_from_seed
from toepcone.trig_core import ToeplitzMat, TrigPoly, basis_r, is_psd, pure_atom


def test_pair_frozen_value():
    t = ToeplitzMat.from_symbols(3, {-2: 2 - 1j, -1: 1 + 1j, 0: 5, 1: 1 - 1j, 2: 2 + 1j})
    f = TrigPoly.from_coeffs({-2: 1, -1: 2j, 0: 3, 1: 4, 2: 5j})
    assert pair(t, f) == pytest.approx(28 + 17j, abs=1e-13)


def test_atom_pairing_is_point_evaluation():
    rng = rng_from_seed(23)
    for _ in range(100):
        n = int(rng.integers(1, 9))
        lam = np.exp(2j * np.pi * rng.uniform())
        d = int(rng.integers(0, n))
        f = TrigPoly(d, rng.standard_normal(2 * d + 1) + 1j * rng.standard_normal(2 * d + 1))
        assert pair(pure_atom(n, lam), f) == pytest.approx(f.eval(lam), abs=1e-10)


def test_basis_pairing_is_coefficient_extraction():
    for n in range(1, 6):
        for k in range(-(n - 1), n):
            for j in range(-(n - 1), n):
                val = pair(basis_r(n, k), TrigPoly.chi(j))
                assert val == (1.0 if j == -k else 0.0)


def test_pair_degree_guard():
    t = pure_atom(2, 1.0)
    with pytest.raises(ValueError):
        pair(t, TrigPoly.chi(2))


def test_dual_functional_wrappers():
    lam = np.exp(1j * 0.9)
    phi = atom_functional(5, lam)
    assert isinstance(phi, DualFunctional)
    f = TrigPoly.from_coeffs({-1: 2.0, 0: 1.0, 1: 2.0})
    assert phi(f) == pytest.approx(f.eval(lam))
    assert dual_basis_eval(1, f) == 2.0
    with pytest.raises(ValueError):
        dual_basis_eval(4, f)


def test_truncate_symbol_window():
    f = TrigPoly.from_coeffs({-1: 1.0, 0: 2.0, 1: 1.0})
    t = truncate_symbol(f, 3)
    np.testing.assert_array_equal(
        t.materialize(), np.array([[2, 1, 0], [1, 2, 1], [0, 1, 2]], dtype=complex)
    )
    with pytest.raises(ValueError):
        truncate_symbol(f, 1)


def test_atomic_measure_moments():
    mu = AtomicMeasure(np.array([1.0, -1.0]), np.array([2.0, 3.0]))
    assert mu.moment(0) == pytest.approx(5.0)
    assert mu.moment(1) == pytest.approx(2.0 - 3.0)
    assert mu.size == 2
    # reassembly agrees with the explicit sum of atoms
    n = 3
    direct = 2.0 * pure_atom(n, 1.0).materialize() + 3.0 * pure_atom(n, -1.0).materialize()
    np.testing.assert_allclose(mu.reassemble(n), direct, atol=1e-14)


def test_caratheodory_single_atom_recovery():
    lam = np.exp(1j * 1.7)
    t = pure_atom(4, lam)
    mu = caratheodory_decompose(t)
    assert mu.size == 1
    assert mu.lambdas[0] == pytest.approx(lam, abs=1e-8)
    assert mu.weights[0] == pytest.approx(1.0, abs=1e-8)


def test_caratheodory_known_two_atom_mixture():
    lam1, lam2 = np.exp(1j * 0.4), np.exp(1j * 2.9)
    mix = 0.7 * pure_atom(5, lam1).materialize() + 1.2 * pure_atom(5, lam2).materialize()
    symbols = np.array([mix[max(0, -k) + k, max(0, -k)] for k in range(-4, 5)])
    mu = caratheodory_decompose(ToeplitzMat(5, symbols))
    assert mu.size == 2
    order = np.argsort(mu.weights)
    np.testing.assert_allclose(sorted(mu.weights), [0.7, 1.2], atol=1e-8)
    recovered = mu.lambdas[order]
    np.testing.assert_allclose(recovered, [lam1, lam2], atol=1e-8)


def test_caratheodory_random_instances():
    rng = rng_from_seed(40)
    for _ in range(30):
        n = int(rng.integers(2, 9))
        t = random_psd_toeplitz(rng, n)
        mu = caratheodory_decompose(t)
        assert mu.size <= 2 * n - 1
        assert np.max(np.abs(np.abs(mu.lambdas) - 1.0)) < 1e-8
        assert np.min(mu.weights) >= 0.0
        residual = np.linalg.norm(mu.reassemble(n) - t.materialize())
        assert residual < 1e-8


def test_caratheodory_rejects_non_psd():
    t = ToeplitzMat.from_symbols(2, {0: 1.0, 1: 2.0, -1: 2.0})
    assert not is_psd(t.materialize()).is_psd
    with pytest.raises(ValueError):
        caratheodory_decompose(t)
    with pytest.raises(ValueError):
        caratheodory_decompose(ToeplitzMat.from_symbols(2, {0: 1.0, 1: 1.0}))
