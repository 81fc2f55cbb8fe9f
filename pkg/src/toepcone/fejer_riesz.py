"""Spectral factorization of nonnegative trigonometric polynomials, F = H* H.

The scalar route factors through polynomial roots; the matrix route runs a
Bauer-type iteration (Cholesky of a growing banded block Toeplitz section,
reading the factor off the last block row).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .trig_core import (
    DEFAULT_TOL,
    BlockTrigPoly,
    Tolerance,
    TrigPoly,
    circle_grid,
)

CIRCLE_ROOT_TOL = 1e-6
PAIRING_MISS_TOL = 1e-3
REGULARIZATION_SCALE = 1e-10


@dataclass(frozen=True)
class FejerRieszFactor:
    """Analytic factor H with the convolution residual of the reassembled symbol.

    H is stored as a (Block)TrigPoly whose negative-offset coefficients vanish.
    regularization records any multiple of the identity added to the constant
    coefficient before factoring a boundary-singular symbol.
    """

    H: object
    residual: float
    iterations: int = 0
    regularization: float = 0.0


def _analytic_coeffs(h) -> np.ndarray:
    """Extract b_0..b_d from an analytic (Block)TrigPoly, as a (d+1, m, m) stack."""
    if isinstance(h, FejerRieszFactor):
        h = h.H
    if isinstance(h, TrigPoly):
        b = h.coeffs[h.d :][:, None, None]
    elif isinstance(h, BlockTrigPoly):
        b = h.coeffs[h.d :]
    else:
        raise TypeError("expected TrigPoly or BlockTrigPoly")
    return np.asarray(b, dtype=complex)


def _poly_coeff_stack(f) -> tuple[np.ndarray, int, int]:
    """Coefficients of f as a (2d+1, m, m) stack plus (d, m)."""
    if isinstance(f, TrigPoly):
        return f.coeffs[:, None, None], f.d, 1
    if isinstance(f, BlockTrigPoly):
        return np.asarray(f.coeffs, dtype=complex), f.d, f.m
    raise TypeError("expected TrigPoly or BlockTrigPoly")


def convolution_check(h, f) -> float:
    """max_l || a_l - sum_j b_j* b_{l+j} || for the claimed factor h of f.

    The inner sum ranges over the offsets where both factors are defined, so
    an exact factorization drives every term to zero.
    """
    b = _analytic_coeffs(h)
    a, d_f, m = _poly_coeff_stack(f)
    if b.shape[1] != m:
        raise ValueError("block size mismatch between factor and symbol")
    d_h = b.shape[0] - 1
    d = max(d_f, d_h)
    worst = 0.0
    for ell in range(-d, d + 1):
        acc = np.zeros((m, m), dtype=complex)
        for j in range(max(0, -ell), min(d_h, d_h - ell) + 1):
            acc += b[j].conj().T @ b[ell + j]
        target = a[ell + d_f] if abs(ell) <= d_f else np.zeros((m, m), dtype=complex)
        worst = max(worst, float(np.linalg.norm(target - acc)))
    return worst


def _effective_degree(coeff_norms: np.ndarray, d: int) -> int:
    top = float(np.max(coeff_norms))
    if top == 0.0:
        return 0
    cutoff = 1e-14 * top
    dd = 0
    for k in range(1, d + 1):
        if coeff_norms[d + k] > cutoff or coeff_norms[d - k] > cutoff:
            dd = k
    return dd


def _halve_circle_clusters(roots: np.ndarray) -> list:
    """Half of each even-multiplicity cluster of unit-circle roots.

    A nonnegative symbol hits zero on the circle only with even multiplicity,
    but the root finder splits such a zero into a small cloud. Snap the cloud
    back to the circle, group by angle, and keep each cluster's centroid with
    half its multiplicity.
    """
    if roots.size == 0:
        return []
    snapped = roots / np.abs(roots)
    angles = np.angle(snapped)
    order = np.argsort(angles)
    gap_tol = 16.0 * CIRCLE_ROOT_TOL
    # start the sweep after the widest circular gap so no cluster is split by wraparound
    gaps = np.diff(angles[order], append=angles[order[0]] + 2.0 * np.pi)
    start = int(np.argmax(gaps)) + 1
    ring = np.roll(order, -start)
    clusters = [[ring[0]]]
    for prev, cur in zip(ring, ring[1:]):
        diff = float(np.abs(np.angle(snapped[cur] / snapped[prev])))
        if diff <= gap_tol:
            clusters[-1].append(cur)
        else:
            clusters.append([cur])
    halves = []
    for idx in clusters:
        if len(idx) % 2:
            raise RuntimeError(
                f"root pairing failed: odd circle-root multiplicity {len(idx)}"
            )
        centroid = np.sum(snapped[idx])
        centroid /= np.abs(centroid)
        halves.extend([complex(centroid)] * (len(idx) // 2))
    return halves


def factor_scalar(f: TrigPoly, tol: Tolerance = DEFAULT_TOL) -> FejerRieszFactor:
    """Root-based Fejer-Riesz factorization of a scalar symbol.

    Roots of z^d f(z) come in pairs reflected across the circle; the factor
    keeps one representative per pair (the inner one, or half of each even
    circle cluster) and rescales so the leading coefficient is positive.
    """
    if not f.is_selfadjoint:
        raise ValueError("symbol must be selfadjoint")
    d_eff = _effective_degree(np.abs(f.coeffs), f.d)

    grid = circle_grid(max(512, 64 * (d_eff + 1)))
    vals = f.eval(grid)
    if float(np.min(vals.real)) < -tol.eig_tol:
        raise ValueError(f"symbol is negative on the circle (min {np.min(vals.real):.3e})")

    if d_eff == 0:
        h = TrigPoly(0, np.array([np.sqrt(max(f.coeff(0).real, 0.0))]))
        return FejerRieszFactor(h, convolution_check(h, f))

    a = f.coeffs[f.d - d_eff : f.d + d_eff + 1]
    roots = np.roots(a[::-1])  # z^d_eff * f(z), highest coefficient first
    on_circle = np.abs(np.abs(roots) - 1.0) <= CIRCLE_ROOT_TOL
    chosen = list(_halve_circle_clusters(roots[on_circle]))

    # remaining roots pair up by reflection across the circle; ascending modulus
    # makes the kept representative the inner one
    rest = roots[~on_circle]
    order = np.argsort(np.abs(rest))
    used = np.zeros(rest.size, dtype=bool)
    for i in order:
        if used[i]:
            continue
        used[i] = True
        target = 1.0 / np.conj(rest[i])
        free = np.where(~used)[0]
        if free.size == 0:
            raise RuntimeError("root pairing failed: odd leftover root")
        j = free[np.argmin(np.abs(rest[free] - target))]
        miss = float(np.abs(rest[j] - target))
        if miss > PAIRING_MISS_TOL * max(1.0, float(np.abs(target))):
            raise RuntimeError(f"root pairing failed: reflection miss {miss:.3e}")
        used[j] = True
        chosen.append(rest[i])
    chosen = np.asarray(chosen)

    # f = K |h0|^2 on the circle, with h0 monic over the chosen roots.
    lead = abs(complex(a[-1]))
    scale = np.sqrt(lead / np.prod(np.abs(chosen)))
    b = np.poly(chosen)[::-1] * scale
    coeffs = np.zeros(2 * d_eff + 1, dtype=complex)
    coeffs[d_eff:] = b
    h = TrigPoly(d_eff, coeffs)
    return FejerRieszFactor(h, convolution_check(h, f))


def _banded_block_toeplitz(a: np.ndarray, d: int, m: int, big_k: int) -> np.ndarray:
    """Lower band storage of the (K+1)m section with block (i, j) = a_{j-i}."""
    bw = d * m + (m - 1)
    nrows = (big_k + 1) * m
    ab = np.zeros((bw + 1, nrows), dtype=complex)
    for u in range(d + 1):
        block = a[d - u]  # a_{-u}
        n_cols = big_k + 1 - u
        for r in range(m):
            for c in range(m):
                off = u * m + r - c
                if off < 0:
                    continue
                cols = np.arange(n_cols) * m + c
                ab[off, cols] = block[r, c]
    return ab


def _read_last_block_row(cb: np.ndarray, d: int, m: int, big_k: int) -> np.ndarray:
    """Recover b_u = (L[K, K-u])* from the banded Cholesky factor."""
    bw = cb.shape[0] - 1
    b = np.zeros((d + 1, m, m), dtype=complex)
    for u in range(d + 1):
        blk = np.zeros((m, m), dtype=complex)
        for r in range(m):
            for c in range(m):
                off = u * m + r - c
                if 0 <= off <= bw:
                    blk[r, c] = cb[off, (big_k - u) * m + c]
        b[u] = blk.conj().T
    return b


def factor_matrix(
    F: BlockTrigPoly,
    tol: Tolerance = DEFAULT_TOL,
    max_iter: int = 12,
) -> FejerRieszFactor:
    """Bauer iteration for a matrix symbol F that is PSD-valued on the circle.

    Parameters
    ----------
    F : BlockTrigPoly
        Selfadjoint symbol, PSD on a dense circle grid.
    tol : Tolerance
        residual_tol is the convergence target for the convolution residual.
    max_iter : int
        Number of section doublings tried, starting from K = 16 * degree;
        boundary-singular symbols need the deeper sections (the residual falls
        roughly fourfold per doubling there instead of geometrically).

    Raises RuntimeError when the residual never reaches tolerance; the best
    residual seen is included in the message.
    """
    if not F.is_selfadjoint:
        raise ValueError("symbol must be selfadjoint")
    m = F.m
    norms = np.array([np.linalg.norm(F.coeffs[i], 2) for i in range(2 * F.d + 1)])
    d_eff = _effective_degree(norms, F.d)

    grid = circle_grid(max(64, 64 * d_eff))
    vals = F.eval(grid)
    eigs = np.linalg.eigvalsh((vals + vals.conj().transpose(0, 2, 1)) / 2.0)
    lam_min = float(np.min(eigs))
    norm_f = float(np.max(np.abs(eigs)))
    if lam_min < -tol.eig_tol:
        raise ValueError(f"symbol is not PSD-valued on the circle (min eig {lam_min:.3e})")

    a = np.array(F.coeffs[F.d - d_eff : F.d + d_eff + 1])

    regularization = 0.0
    if lam_min <= 1e-8 * max(norm_f, 1.0):
        regularization = REGULARIZATION_SCALE * max(norm_f, 1.0)
        a[d_eff] = a[d_eff] + regularization * np.eye(m)

    if d_eff == 0:
        c = (a[0] + a[0].conj().T) / 2.0
        try:
            h0 = scipy.linalg.cholesky(c, lower=False)
        except scipy.linalg.LinAlgError:
            w, v = np.linalg.eigh(c)
            h0 = np.diag(np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
        coeffs = h0[None, :, :]
        h = BlockTrigPoly(0, m, coeffs)
        return FejerRieszFactor(h, convolution_check(h, F), 1, regularization)

    reg_target = BlockTrigPoly(d_eff, m, a)
    best_res = np.inf
    best_b = None
    big_k = 16 * d_eff
    attempts = 0
    for attempts in range(1, max_iter + 1):
        ab = _banded_block_toeplitz(a, d_eff, m, big_k)
        try:
            cb = scipy.linalg.cholesky_banded(ab, lower=True)
        except scipy.linalg.LinAlgError:
            # boundary-singular section: nudge once with a stronger ridge
            bump = 100.0 * max(regularization, REGULARIZATION_SCALE * max(norm_f, 1.0))
            a[d_eff] = a[d_eff] + bump * np.eye(m)
            regularization += bump
            reg_target = BlockTrigPoly(d_eff, m, a)
            ab = _banded_block_toeplitz(a, d_eff, m, big_k)
            cb = scipy.linalg.cholesky_banded(ab, lower=True)
        b = _read_last_block_row(cb, d_eff, m, big_k)
        h = BlockTrigPoly(d_eff, m, np.concatenate([np.zeros((d_eff, m, m)), b]))
        res = convolution_check(h, reg_target)
        if res < best_res:
            best_res = res
            best_b = b
        if res < tol.residual_tol:
            return FejerRieszFactor(h, convolution_check(h, F), attempts, regularization)
        big_k *= 2

    if best_b is not None:
        h = BlockTrigPoly(d_eff, m, np.concatenate([np.zeros((d_eff, m, m)), best_b]))
        raise RuntimeError(
            f"Bauer iteration did not converge in {max_iter} doublings; "
            f"best residual {best_res:.3e}"
        )
    raise RuntimeError("Bauer iteration produced no factor")


def factorize(f, tol: Tolerance = DEFAULT_TOL, max_iter: int = 8) -> FejerRieszFactor:
    """Dispatch to the scalar or matrix factorization."""
    if isinstance(f, TrigPoly):
        return factor_scalar(f, tol)
    if isinstance(f, BlockTrigPoly):
        return factor_matrix(f, tol, max_iter)
    raise TypeError("expected TrigPoly or BlockTrigPoly")
