"""Finite sections of Toeplitz operators on Hardy space.

The N x N truncation of the multiplication operator by a selfadjoint symbol f
has entries f_hat(i - j); its minimum eigenvalue decreases with N (Cauchy
interlacing) toward the minimum of f on the circle, which this module also
certifies directly from a dense grid with a Lipschitz bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .trig_core import TrigPoly, materialize_symbols


@dataclass(frozen=True)
class TruncatedToeplitzOp:
    """The N x N finite section of multiplication by a trig polynomial symbol."""

    symbol: TrigPoly
    size: int
    matrix: np.ndarray

    def min_eigenvalue(self) -> float:
        herm = (self.matrix + self.matrix.conj().T) / 2.0
        return float(np.linalg.eigvalsh(herm)[0])


def truncation(f: TrigPoly, size: int) -> TruncatedToeplitzOp:
    """Finite section with entries f_hat(i - j); no degree restriction on f."""
    if size < 1:
        raise ValueError("size must be positive")
    s = np.zeros(2 * size - 1, dtype=complex)
    width = min(f.d, size - 1)
    s[size - 1 - width : size + width] = f.coeffs[f.d - width : f.d + width + 1]
    mat = materialize_symbols(s, size)
    mat.setflags(write=False)
    return TruncatedToeplitzOp(f, size, mat)


def spectral_floor_trend(f: TrigPoly, sizes) -> np.ndarray:
    """Minimum eigenvalue of the finite section at each size (in the order given)."""
    if not f.is_selfadjoint:
        raise ValueError("symbol must be selfadjoint")
    return np.array([truncation(f, int(n)).min_eigenvalue() for n in sizes])


@dataclass(frozen=True)
class CircleMinimum:
    """Certified minimum of a selfadjoint symbol on the circle.

    value is the refined minimum at angle theta; certified_lower_bound is
    grid_min - L * pi / grid with L the coefficient Lipschitz bound, so the
    true minimum lies in [certified_lower_bound, value].
    """

    value: float
    theta: float
    grid: int
    lipschitz: float
    certified_lower_bound: float


def circle_minimum(f: TrigPoly, grid: int = 2**14) -> CircleMinimum:
    """Dense-grid minimum with local refinement and a Lipschitz certificate."""
    if not f.is_selfadjoint:
        raise ValueError("symbol must be selfadjoint")
    thetas = 2.0 * np.pi * np.arange(grid) / grid
    vals = (f.eval(np.exp(1j * thetas))).real
    idx = int(np.argmin(vals))
    lips = float(np.sum(np.abs(f.offsets) * np.abs(f.coeffs)))

    def fun(theta: float) -> float:
        z = complex(np.cos(theta), np.sin(theta))
        return float(np.real(f.eval(z)))

    span = 2.0 * np.pi / grid
    res = scipy.optimize.minimize_scalar(
        fun,
        bounds=(thetas[idx] - span, thetas[idx] + span),
        method="bounded",
        options={"xatol": 1e-14},
    )
    value = min(float(vals[idx]), float(res.fun))
    theta = float(res.x) if float(res.fun) <= float(vals[idx]) else float(thetas[idx])
    lower = float(vals[idx]) - lips * np.pi / grid
    return CircleMinimum(value, theta, grid, lips, min(lower, value))


def hardy_trend_report(f: TrigPoly, sizes, grid: int = 2**14) -> dict:
    """Trend table of section floors next to the certified circle minimum."""
    sizes = [int(n) for n in sizes]
    floors = spectral_floor_trend(f, sizes)
    cmin = circle_minimum(f, grid)
    return {
        "sizes": sizes,
        "min_eigenvalues": [float(v) for v in floors],
        "circle_min": cmin.value,
        "circle_min_theta": cmin.theta,
        "circle_min_lower_bound": cmin.certified_lower_bound,
        "lipschitz": cmin.lipschitz,
        "grid": cmin.grid,
    }
