"""Acceptance gate: the twelve headline guarantees, one test (and one
pass/fail line under pytest -v) per criterion, at the stated tolerances."""

import json
import time

import numpy as np
import pytest

from toepcone.block_cones import equivalence_suite, min_neq_max_demo, separable_decompose
from toepcone.cli import main
from toepcone.duality import caratheodory_decompose, pair
from toepcone.entanglement import CHOI_MASK, build_xi, certify_entangled, choi_map, purity_perturbation_search
from toepcone.fejer_riesz import convolution_check, factorize
from toepcone.hardy import circle_minimum, truncation
from toepcone.sampling import (
    autocorrelation_block,
    autocorrelation_scalar,
    random_analytic_block,
    random_analytic_scalar,
    random_hermitian_toeplitz,
    random_psd_block_toeplitz,
    random_psd_toeplitz,
    rng_from_seed,
)
from toepcone.serialize import encode_block_toeplitz, encode_toeplitz, encode_trig_poly
from toepcone.trig_core import Tolerance, TrigPoly, basis_r, is_psd, pure_atom


def test_criterion_01_duality_identity():
    """pair(atom(lambda), f) = f(lambda) within 1e-10, 1000 random draws, < 1 s."""
    rng = rng_from_seed(1001)
    start = time.perf_counter()
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        lam = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        d = int(rng.integers(0, n))
        coeffs = rng.standard_normal(2 * d + 1) + 1j * rng.standard_normal(2 * d + 1)
        f = TrigPoly(d, coeffs)
        assert abs(pair(pure_atom(n, lam), f) - f.eval(lam)) < 1e-10
    assert time.perf_counter() - start < 1.0


def test_criterion_02_basis_duality_exact():
    """pair(r_k, chi_j) equals the Kronecker delta at j = -k, with no float slack."""
    for n in range(1, 9):
        for k in range(-(n - 1), n):
            for j in range(-(n - 1), n):
                expect = 1.0 if j == -k else 0.0
                assert pair(basis_r(n, k), TrigPoly.chi(j)) == expect


def test_criterion_03_fejer_riesz_round_trip():
    """200 random factors (m <= 3, degree <= 5): refactoring the autocorrelation
    leaves a convolution residual < 1e-7; median runtime < 0.5 s."""
    rng = rng_from_seed(1003)
    times = []
    for _ in range(200):
        m = int(rng.integers(1, 4))
        d = int(rng.integers(0, 6))
        if m == 1:
            f = autocorrelation_scalar(random_analytic_scalar(rng, d))
        else:
            f = autocorrelation_block(random_analytic_block(rng, d, m))
        start = time.perf_counter()
        fac = factorize(f)
        times.append(time.perf_counter() - start)
        assert convolution_check(fac, f) < 1e-7
    assert float(np.median(times)) < 0.5


def test_criterion_04_equivalence_suite():
    """100 instances (n, m <= 4), 500 random symbols each plus the deterministic
    witness: matrix and pairing verdicts never disagree."""
    report = equivalence_suite(
        rng_from_seed(1004), instances=100, symbols_per_instance=500, max_n=4, max_m=4
    )
    assert report["disagreements"] == 0


def test_criterion_05_caratheodory():
    """200 random PSD Toeplitz (n <= 8): at most 2n-1 atoms, atoms on the circle
    within 1e-8, reassembly residual < 1e-8."""
    rng = rng_from_seed(1005)
    for _ in range(200):
        n = int(rng.integers(1, 9))
        t = random_psd_toeplitz(rng, n)
        mu = caratheodory_decompose(t)
        assert mu.size <= 2 * n - 1
        assert float(np.max(np.abs(np.abs(mu.lambdas) - 1.0))) < 1e-8
        assert float(np.linalg.norm(mu.reassemble(n) - t.materialize(), "fro")) < 1e-8


def test_criterion_06_projected_separable_decomposition():
    """50 random strictly PSD block Toeplitz (n, m <= 4), eps = 1e-3: converges
    with residual < 1e-6, every weight PSD within 1e-10, each run < 10 s."""
    rng = rng_from_seed(1006)
    tol = Tolerance(residual_tol=1e-6)
    for _ in range(50):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(1, 5))
        t = random_psd_block_toeplitz(rng, n, m)
        start = time.perf_counter()
        dec = separable_decompose(t, 1e-3, tol=tol)
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0
        assert dec.converged
        assert dec.residual < 1e-6
        herm = (dec.weights + dec.weights.conj().transpose(0, 2, 1)) / 2.0
        assert float(np.min(np.linalg.eigvalsh(herm))) >= -1e-10


def test_criterion_07_min_neq_max():
    """The worked element is min-positive with a positive certified margin while
    the averaged obstruction stays below -0.01 on all of [0, 3]^2."""
    report = min_neq_max_demo()
    assert report["certified_margin"] > 0.0
    assert report["min_positive_certified"]
    assert report["max_min_eig"] < -0.01
    assert report["established"]


def test_criterion_08_xi_certificates():
    """xi_n is rank one on 1024 samples (second eigenvalue < 1e-10 * n) and
    certified entangled for n = 2..8; n = 1 is separable."""
    assert certify_entangled(build_xi(1)).verdict == "separable"
    for n in range(2, 9):
        cert = certify_entangled(build_xi(n), samples=1024)
        assert cert.verdict == "entangled"
        assert cert.max_second_eigenvalue < 1e-10 * n


def test_criterion_09_purity_search():
    """1000 perturbation directions at n = 2 and 3: every feasible split stays
    proportional to xi_n within 1e-6."""
    for n, seed in ((2, 1009), (3, 1010)):
        worst = purity_perturbation_search(n, rng_from_seed(seed), directions=1000)
        assert worst < 1e-6


def test_criterion_10_hardy_floors():
    """Sections of 2 + chi_1 + chi_{-1} hit 2 - 2cos(pi/(N+1)) within 1e-10 for
    N in {8, 32, 128}; for 1 + chi_1 + chi_{-1} the 2 x 2 section is PSD while
    the certified circle minimum is -1 within 1e-9."""
    laplace = TrigPoly.from_coeffs({-1: 1.0, 0: 2.0, 1: 1.0})
    for size in (8, 32, 128):
        got = truncation(laplace, size).min_eigenvalue()
        assert abs(got - (2.0 - 2.0 * np.cos(np.pi / (size + 1)))) < 1e-10
    shifted = TrigPoly.from_coeffs({-1: 1.0, 0: 1.0, 1: 1.0})
    assert is_psd(truncation(shifted, 2).matrix).is_psd
    assert abs(circle_minimum(shifted).value - (-1.0)) < 1e-9


def test_criterion_11_choi_demo():
    """Mask eigenvalues {0, 3, 3} within 1e-12; the map equals the mask Schur
    product exactly on 100 random Toeplitz inputs and preserves positivity on
    100 random PSD Toeplitz inputs."""
    eigs = np.linalg.eigvalsh(CHOI_MASK)
    assert float(np.max(np.abs(eigs - np.array([0.0, 3.0, 3.0])))) < 1e-12
    rng = rng_from_seed(1011)
    for _ in range(100):
        x = random_hermitian_toeplitz(rng, 3).materialize()
        assert np.array_equal(choi_map(x), x * CHOI_MASK)
    for _ in range(100):
        x = random_psd_toeplitz(rng, 3).materialize()
        assert is_psd(choi_map(x)).is_psd


def test_criterion_12_cli_determinism(tmp_path):
    """The full CLI sweep, run twice with the same seeds, emits byte-identical
    reports (and byte-identical CSV for the trend table)."""
    rng = rng_from_seed(1012)
    t_path = tmp_path / "t.json"
    t_path.write_text(json.dumps(encode_toeplitz(random_psd_toeplitz(rng, 4))))
    bt_path = tmp_path / "bt.json"
    bt_path.write_text(
        json.dumps(encode_block_toeplitz(random_psd_block_toeplitz(rng, 2, 2, margin=0.3)))
    )
    f = autocorrelation_scalar(random_analytic_scalar(rng, 3))
    f_path = tmp_path / "f.json"
    f_path.write_text(json.dumps(encode_trig_poly(f)))
    pair_path = tmp_path / "pair.json"
    pair_path.write_text(
        json.dumps(
            {
                "t": encode_toeplitz(random_psd_toeplitz(rng, 3)),
                "f": encode_trig_poly(autocorrelation_scalar(random_analytic_scalar(rng, 2))),
            }
        )
    )
    sweep = [
        ["psd", "--json", str(t_path)],
        ["pair", "--json", str(pair_path)],
        ["factorize", "--json", str(f_path)],
        ["caratheodory", "--json", str(t_path)],
        ["separate", "--json", str(bt_path), "--tol", "1e-6", "--seed", "3"],
        ["equiv-check", "--seed", "7", "--instances", "6", "--symbols", "25"],
        ["counterexample", "minmax", "--grid", "256"],
        ["xi", "--n", "3", "--samples", "512"],
        ["choi-demo"],
        ["hardy", "--json", str(f_path), "--sizes", "8,16,32", "--grid", "4096"],
        ["fourier0", "--json", str(f_path), "--prime", "7"],
    ]
    for i, argv in enumerate(sweep):
        first = tmp_path / f"run_a_{i}.json"
        second = tmp_path / f"run_b_{i}.json"
        extra_a, extra_b = [], []
        if argv[0] == "hardy":
            extra_a = ["--csv", str(tmp_path / "trend_a.csv")]
            extra_b = ["--csv", str(tmp_path / "trend_b.csv")]
        code_a = main([*argv, *extra_a, "--out", str(first)])
        code_b = main([*argv, *extra_b, "--out", str(second)])
        assert code_a == code_b
        assert first.read_bytes() == second.read_bytes(), argv[0]
    assert (tmp_path / "trend_a.csv").read_bytes() == (tmp_path / "trend_b.csv").read_bytes()
