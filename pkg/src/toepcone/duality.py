"""Duality between Toeplitz matrices and trigonometric polynomials.

A Toeplitz matrix t of order n acts on polynomials of degree bound at most
n - 1 through pair(t, f) = sum_k tau_{-k} a_k; rank-one atoms act as point
evaluations, and PSD Toeplitz matrices decompose into finitely many atoms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .trig_core import (
    DEFAULT_TOL,
    ToeplitzMat,
    Tolerance,
    TrigPoly,
    circle_grid,
    is_psd,
    materialize_symbols,
    pure_atom,
)

KERNEL_ROOT_TOL = 1e-6
WEIGHT_FLOOR = -1e-12


def pair(t: ToeplitzMat, f: TrigPoly) -> complex:
    """The duality pairing sum_k tau_{-k} * a_k.

    For a rank-one atom at lambda this evaluates f(lambda); on the basis
    elements it reads off single Fourier coefficients, pair(r_k, f) = a_{-k}.
    """
    if f.d > t.n - 1:
        raise ValueError(f"polynomial degree bound {f.d} exceeds n - 1 = {t.n - 1}")
    ks = f.offsets
    taus = t.symbols[-ks + t.n - 1]
    return complex(np.dot(taus, f.coeffs))


@dataclass(frozen=True)
class DualFunctional:
    """The linear functional f -> pair(t, f) attached to a Toeplitz matrix."""

    matrix: ToeplitzMat

    def __call__(self, f: TrigPoly) -> complex:
        return pair(self.matrix, f)


def dual_basis_eval(k: int, f: TrigPoly) -> complex:
    """Coordinate functional: the k-th Fourier coefficient of f."""
    if abs(k) > f.d:
        raise ValueError(f"offset {k} outside degree bound {f.d}")
    return f.coeff(k)


def truncate_symbol(f: TrigPoly, n: int) -> ToeplitzMat:
    """Toeplitz matrix of order n with entries f_hat(i - j).

    Positivity of f on the circle transports to the matrix, but not
    conversely: the matrix can be PSD while f dips negative.
    """
    if f.d > n - 1:
        raise ValueError(f"degree bound {f.d} exceeds n - 1 = {n - 1}")
    s = np.zeros(2 * n - 1, dtype=complex)
    s[(n - 1) - f.d : (n - 1) + f.d + 1] = f.coeffs
    return ToeplitzMat(n, s)


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many circle atoms with nonnegative weights (scalar or PSD blocks).

    moment(k) = sum_j lambda_j**(-k) * w_j matches the symbol convention of
    pure_atom, so reassemble() returns sum_j w_j * Lambda(lambda_j).
    """

    lambdas: np.ndarray
    weights: np.ndarray
    m: int = 1

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=complex).reshape(-1)
        w = np.asarray(self.weights)
        if self.m == 1:
            w = np.asarray(w, dtype=float).reshape(-1)
            if w.shape != lam.shape:
                raise ValueError("weights and atoms disagree in length")
        else:
            w = np.asarray(w, dtype=complex)
            if w.shape != (lam.shape[0], self.m, self.m):
                raise ValueError("block weights must have shape (J, m, m)")
        lam_f = np.array(lam)
        lam_f.setflags(write=False)
        w_f = np.array(w)
        w_f.setflags(write=False)
        object.__setattr__(self, "lambdas", lam_f)
        object.__setattr__(self, "weights", w_f)

    @property
    def size(self) -> int:
        return int(self.lambdas.shape[0])

    def moment(self, k: int):
        powers = self.lambdas ** (-k)
        if self.m == 1:
            return complex(np.dot(powers, self.weights))
        return np.tensordot(powers, self.weights, axes=1)

    def moments(self, n: int) -> np.ndarray:
        ks = np.arange(-(n - 1), n)
        powers = self.lambdas[None, :] ** (-ks[:, None])
        if self.m == 1:
            return powers @ self.weights
        return np.tensordot(powers, self.weights, axes=([1], [0]))

    def reassemble(self, n: int) -> np.ndarray:
        """Materialize sum_j w_j Lambda(lambda_j) as an (n*m, n*m) matrix."""
        return materialize_symbols(self.moments(n), n)


def _kernel_atoms(mat: np.ndarray, tol: Tolerance) -> np.ndarray:
    """Atoms of a singular PSD Toeplitz matrix via its kernel polynomial.

    Works on the leading (r+1) x (r+1) section, whose kernel is exactly one
    dimensional when the matrix has rank r, so every root of the kernel
    polynomial is forced onto the unit circle.
    """
    n = mat.shape[0]
    eigs = np.linalg.eigvalsh(mat)
    scale = max(float(eigs[-1]), 0.0)
    thresh = max(tol.eig_tol, 1e-12 * scale)
    rank = int(np.sum(eigs > thresh))
    if rank == 0:
        return np.zeros(0, dtype=complex)
    if rank >= n:
        raise ValueError("matrix is not singular; split off a multiple of the identity first")
    section = mat[: rank + 1, : rank + 1]
    svals, svecs = np.linalg.eigh(section)
    kernel_vec = svecs[:, 0]
    roots = np.roots(kernel_vec[::-1])
    radii = np.abs(roots)
    off = np.max(np.abs(radii - 1.0)) if roots.size else 0.0
    if roots.size and off > KERNEL_ROOT_TOL:
        raise RuntimeError(
            f"kernel polynomial root left the circle by {off:.3e} (> {KERNEL_ROOT_TOL})"
        )
    return roots / radii


def _weights_from_moments(lambdas: np.ndarray, target_symbols: np.ndarray, n: int) -> np.ndarray:
    """Least squares weights for sum_j lambda_j**(-k) w_j = tau_k, stacked over real/imag."""
    ks = np.arange(-(n - 1), n)
    vand = lambdas[None, :] ** (-ks[:, None])
    a = np.vstack([vand.real, vand.imag])
    b = np.concatenate([target_symbols.real, target_symbols.imag])
    w, *_ = np.linalg.lstsq(a, b, rcond=None)
    return w


def caratheodory_decompose(t: ToeplitzMat, tol: Tolerance = DEFAULT_TOL) -> AtomicMeasure:
    """Decompose a PSD Toeplitz matrix into at most 2n - 1 rank-one circle atoms.

    Singular input: the kernel polynomial of the leading section pins the
    atoms, and a Vandermonde least squares fit recovers the weights.
    Nonsingular input: split off min_eig * identity, decompose the singular
    remainder, and spread the identity over the n-th roots of unity exactly.
    """
    if not t.is_selfadjoint:
        raise ValueError("input must be selfadjoint")
    n = t.n
    mat = t.materialize()
    rep = is_psd(mat, tol)
    if not rep:
        raise ValueError(f"matrix is not PSD (min eigenvalue {rep.min_eig:.3e})")

    sigma = max(rep.min_eig, 0.0)
    scale = float(np.max(np.abs(t.symbols)))
    singular = sigma <= max(tol.eig_tol, 1e-12 * max(scale, 1.0))

    if singular:
        remainder_symbols = np.array(t.symbols)
        identity_weight = 0.0
    else:
        remainder_symbols = np.array(t.symbols)
        remainder_symbols[n - 1] -= sigma
        identity_weight = sigma

    remainder = materialize_symbols(remainder_symbols, n)
    atoms = _kernel_atoms((remainder + remainder.conj().T) / 2.0, tol)
    if atoms.size:
        w = _weights_from_moments(atoms, remainder_symbols, n)
        if np.min(w) < WEIGHT_FLOOR:
            raise RuntimeError(
                f"negative atom weight {np.min(w):.3e} signals root misidentification"
            )
        w = np.clip(w, 0.0, None)
    else:
        w = np.zeros(0)

    if identity_weight > 0.0:
        grid = circle_grid(n)
        atoms = np.concatenate([atoms, grid])
        w = np.concatenate([w, np.full(n, identity_weight / n)])

    measure = AtomicMeasure(atoms, w, m=1)
    residual = float(np.linalg.norm(measure.reassemble(n) - mat))
    if residual > tol.residual_tol * (1.0 + np.linalg.norm(mat)):
        raise RuntimeError(f"atomic reassembly residual {residual:.3e} exceeds tolerance")
    return measure


def atom_functional(n: int, lam) -> DualFunctional:
    """Point-evaluation functional pair(Lambda(lambda), .) at a circle point."""
    return DualFunctional(pure_atom(n, lam))
