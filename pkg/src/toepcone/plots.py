"""Figure rendering for CLI reports (opt-in via --plot).

Each helper takes already-computed report data and writes a single PNG next
to the delimited/JSON output; nothing here feeds back into the reports.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_hardy_trend(report: dict, path: str) -> None:
    """Section floors against size with the certified circle minimum as an asymptote."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(report["sizes"], report["min_eigenvalues"], "o-", label="section floor")
    ax.axhline(report["circle_min"], color="tab:red", ls="--", label="circle minimum")
    ax.set_xlabel("section size N")
    ax.set_ylabel("minimum eigenvalue")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_obstruction_landscape(path: str, coarse: int = 201) -> None:
    """Heatmap of the averaged obstruction's minimum eigenvalue over [0, 3]^2."""
    from .block_cones import averaged_obstruction_matrix

    hs = np.linspace(0.0, 3.0, coarse)
    floor = np.array(
        [
            [np.linalg.eigvalsh(averaged_obstruction_matrix(h1, h2))[0] for h2 in hs]
            for h1 in hs
        ]
    )
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    im = ax.pcolormesh(hs, hs, floor.T, shading="auto", cmap="viridis")
    fig.colorbar(im, ax=ax, label="min eigenvalue")
    ax.set_xlabel("h11")
    ax.set_ylabel("h22")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_atoms(lambdas, magnitudes, path: str, ylabel: str = "weight") -> None:
    """Stem plot of atom magnitudes against their angles."""
    angles = np.angle(np.asarray(lambdas, dtype=complex))
    order = np.argsort(angles)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.stem(angles[order], np.asarray(magnitudes, dtype=float)[order])
    ax.set_xlabel("atom angle (rad)")
    ax.set_ylabel(ylabel)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
