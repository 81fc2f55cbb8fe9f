"""Seeded random instance generators shared by the verification protocols and tests."""

from __future__ import annotations

import numpy as np

from .trig_core import BlockToeplitz, BlockTrigPoly, ToeplitzMat, TrigPoly


def rng_from_seed(seed: int) -> np.random.Generator:
    """Counter-based generator so identical seeds reproduce identical streams."""
    return np.random.Generator(np.random.Philox(int(seed)))


def _cnormal(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_selfadjoint_trig(rng: np.random.Generator, d: int) -> TrigPoly:
    pos = _cnormal(rng, d)
    c = np.concatenate([pos[::-1].conj(), [complex(rng.standard_normal())], pos])
    return TrigPoly(d, c)


def random_analytic_scalar(rng: np.random.Generator, d: int) -> np.ndarray:
    """Coefficients h_0..h_d of a random analytic polynomial."""
    return _cnormal(rng, d + 1)


def autocorrelation_scalar(b: np.ndarray) -> TrigPoly:
    """|h|^2 as a trig polynomial: a_l = sum_j conj(b_j) b_{l+j}."""
    d = b.shape[0] - 1
    c = np.zeros(2 * d + 1, dtype=complex)
    for ell in range(-d, d + 1):
        c[ell + d] = sum(np.conj(b[j]) * b[ell + j] for j in range(max(0, -ell), min(d, d - ell) + 1))
    return TrigPoly(d, c)


def random_nonneg_trig(rng: np.random.Generator, d: int) -> TrigPoly:
    return autocorrelation_scalar(random_analytic_scalar(rng, d))


def random_analytic_block(rng: np.random.Generator, d: int, m: int) -> np.ndarray:
    """Stack b_0..b_d of random m x m coefficients."""
    return _cnormal(rng, (d + 1, m, m))


def autocorrelation_block(b: np.ndarray) -> BlockTrigPoly:
    """H* H for analytic H with coefficient stack b, as a BlockTrigPoly."""
    d = b.shape[0] - 1
    m = b.shape[1]
    c = np.zeros((2 * d + 1, m, m), dtype=complex)
    for ell in range(-d, d + 1):
        for j in range(max(0, -ell), min(d, d - ell) + 1):
            c[ell + d] += b[j].conj().T @ b[ell + j]
    return BlockTrigPoly(d, m, c)


def random_psd_valued_block(rng: np.random.Generator, d: int, m: int) -> BlockTrigPoly:
    return autocorrelation_block(random_analytic_block(rng, d, m))


def random_hermitian_toeplitz(rng: np.random.Generator, n: int) -> ToeplitzMat:
    pos = _cnormal(rng, n - 1) if n > 1 else np.zeros(0, dtype=complex)
    s = np.concatenate([pos[::-1].conj(), [complex(rng.standard_normal())], pos])
    return ToeplitzMat(n, s)


def random_psd_toeplitz(rng: np.random.Generator, n: int, margin: float | None = None) -> ToeplitzMat:
    """Random Hermitian Toeplitz shifted to have min eigenvalue equal to margin."""
    t = random_hermitian_toeplitz(rng, n)
    lam = float(np.linalg.eigvalsh(t.materialize())[0])
    if margin is None:
        margin = float(rng.uniform(0.05, 1.0))
    s = np.array(t.symbols)
    s[n - 1] += margin - lam
    return ToeplitzMat(n, s)


def random_hermitian_block_toeplitz(rng: np.random.Generator, n: int, m: int) -> BlockToeplitz:
    pos = _cnormal(rng, (n - 1, m, m)) if n > 1 else np.zeros((0, m, m), dtype=complex)
    mid = _cnormal(rng, (m, m))
    mid = (mid + mid.conj().T) / 2.0
    neg = pos[::-1].conj().transpose(0, 2, 1)
    return BlockToeplitz(n, m, np.concatenate([neg, mid[None], pos]))


def random_psd_block_toeplitz(
    rng: np.random.Generator, n: int, m: int, margin: float | None = None
) -> BlockToeplitz:
    t = random_hermitian_block_toeplitz(rng, n, m)
    lam = float(np.linalg.eigvalsh(t.materialize())[0])
    if margin is None:
        margin = float(rng.uniform(0.05, 1.0))
    s = np.array(t.symbols)
    s[n - 1] += (margin - lam) * np.eye(m)
    return BlockToeplitz(n, m, s)


def random_nonpsd_block_toeplitz(
    rng: np.random.Generator, n: int, m: int, depth: float | None = None
) -> BlockToeplitz:
    """Random Hermitian block Toeplitz shifted to have min eigenvalue equal to -depth."""
    t = random_hermitian_block_toeplitz(rng, n, m)
    lam = float(np.linalg.eigvalsh(t.materialize())[0])
    if depth is None:
        depth = float(rng.uniform(0.05, 1.0))
    s = np.array(t.symbols)
    s[n - 1] += (-depth - lam) * np.eye(m)
    return BlockToeplitz(n, m, s)
