"""Positivity of block Toeplitz matrices and two-level Toeplitz elements.

Covers the equivalence between matrix positivity and positivity of the
Schur-sum pairing against PSD-valued symbols, an explicit witness when the
matrix is not PSD, a grid-projected separable decomposition, torus-grid
min-positivity certificates with a Lipschitz margin, and the worked element
whose min and max positivity disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .trig_core import (
    DEFAULT_TOL,
    BlockToeplitz,
    BlockTrigPoly,
    PsdReport,
    ToeplitzMat,
    Tolerance,
    TrigPoly,
    circle_grid,
    is_psd,
    materialize_symbols,
    materialize_symbols_batch,
    schur_product,
)
from . import sampling
from .sampling import autocorrelation_block


def min_psd_block(t: BlockToeplitz, tol: Tolerance = DEFAULT_TOL) -> PsdReport:
    """PSD verdict for the materialized nm x nm matrix (the min cone membership test)."""
    return is_psd(t.materialize(), tol)


def schur_pairing_check(
    t: BlockToeplitz, f: BlockTrigPoly, tol: Tolerance = DEFAULT_TOL
) -> tuple[np.ndarray, PsdReport]:
    """Schur-sum pairing sum_k tau_{-k} o a_k against a PSD-valued symbol.

    Returns the m x m sum and its PSD report. A PSD block Toeplitz matrix
    passes for every PSD-valued f; failures certify non-positivity.
    """
    if f.m != t.m:
        raise ValueError("block size mismatch")
    if f.d > t.n - 1:
        raise ValueError(f"symbol degree {f.d} exceeds n - 1 = {t.n - 1}")
    grid = circle_grid(max(64, 32 * (f.d + 1)))
    vals = f.eval(grid)
    lam = float(np.min(np.linalg.eigvalsh((vals + vals.conj().transpose(0, 2, 1)) / 2.0)))
    if lam < -tol.eig_tol:
        raise ValueError(f"pairing symbol is not PSD-valued (min eig {lam:.3e})")
    acc = np.zeros((t.m, t.m), dtype=complex)
    for k in range(-f.d, f.d + 1):
        acc += schur_product(t.symbol(-k), f.coeff(k))
    return acc, is_psd(acc, tol)


def witness_for_nonpositivity(t: BlockToeplitz, tol: Tolerance = DEFAULT_TOL) -> BlockTrigPoly:
    """PSD-valued symbol refuting positivity of a non-PSD block Toeplitz matrix.

    From a most-negative eigenvector x (blocks x_i), take analytic
    coefficients b_i = e_1 x_i^T; then F = H* H is PSD-valued and the Schur
    sum satisfies <S 1, 1> = lambda_min < 0 for the all-ones vector.
    """
    mat = t.materialize()
    eigs, vecs = np.linalg.eigh((mat + mat.conj().T) / 2.0)
    if eigs[0] >= -tol.eig_tol:
        raise ValueError("matrix is PSD; no witness exists")
    x = vecs[:, 0]
    n, m = t.n, t.m
    b = np.zeros((n, m, m), dtype=complex)
    for i in range(n):
        b[i, 0, :] = x[i * m : (i + 1) * m]
    f = autocorrelation_block(b)
    if f.d > n - 1:
        raise AssertionError("witness degree exceeded n - 1")
    return f


@dataclass(frozen=True)
class TwoLevelToeplitz:
    """Two-level Toeplitz element with coefficients c_{k,j}, |k| < n, |j| < m.

    Coefficients are scalars (shape (2n-1, 2m-1)) or p x p matrices
    (shape (2n-1, 2m-1, p, p)). Realizations:

    * eval_torus(z, w): both circle factors evaluated, a p x p value;
    * eval_matrix(w): outer factor as n x n Toeplitz basis matrices, inner
      factor evaluated at w, an (n*p) x (n*p) matrix.
    """

    n: int
    m: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim == 2:
            expected = (2 * self.n - 1, 2 * self.m - 1)
        elif c.ndim == 4:
            expected = (2 * self.n - 1, 2 * self.m - 1, c.shape[2], c.shape[2])
        else:
            raise ValueError("coefficients must be a 2-d or 4-d array")
        if c.shape != expected:
            raise ValueError(f"expected coefficient shape {expected}, got {c.shape}")
        c = np.array(c)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, n: int, m: int, mapping: dict, p: int = 1) -> "TwoLevelToeplitz":
        shape = (2 * n - 1, 2 * m - 1) if p == 1 else (2 * n - 1, 2 * m - 1, p, p)
        c = np.zeros(shape, dtype=complex)
        for (k, j), v in mapping.items():
            c[int(k) + n - 1, int(j) + m - 1] = v
        return cls(n, m, c)

    @property
    def p(self) -> int:
        return 1 if self.coeffs.ndim == 2 else int(self.coeffs.shape[2])

    @property
    def outer_offsets(self) -> np.ndarray:
        return np.arange(-(self.n - 1), self.n)

    @property
    def inner_offsets(self) -> np.ndarray:
        return np.arange(-(self.m - 1), self.m)

    @property
    def is_selfadjoint(self) -> bool:
        flipped = self.coeffs[::-1, ::-1].conj()
        if self.coeffs.ndim == 4:
            flipped = flipped.transpose(0, 1, 3, 2)
        scale = max(1.0, float(np.max(np.abs(self.coeffs))))
        return bool(np.allclose(flipped, self.coeffs, atol=1e-13 * scale))

    def plus(self, other: "TwoLevelToeplitz") -> "TwoLevelToeplitz":
        if (self.n, self.m, self.p) != (other.n, other.m, other.p):
            raise ValueError("shape mismatch")
        return TwoLevelToeplitz(self.n, self.m, self.coeffs + other.coeffs)

    def scaled(self, a) -> "TwoLevelToeplitz":
        return TwoLevelToeplitz(self.n, self.m, self.coeffs * a)

    def coefficient_lipschitz(self) -> float:
        """L = sum (|k| + |j|) ||c_{k,j}||, a torus Lipschitz bound for eigenvalues."""
        ks = np.abs(self.outer_offsets)[:, None]
        js = np.abs(self.inner_offsets)[None, :]
        if self.coeffs.ndim == 2:
            mags = np.abs(self.coeffs)
        else:
            mags = np.linalg.norm(self.coeffs, ord=2, axis=(2, 3))
        return float(np.sum((ks + js) * mags))

    def eval_torus(self, z, w) -> np.ndarray:
        """Value at a torus point, as a (p, p) array (p = 1 gives a 1 x 1 array)."""
        zp = np.asarray(z, dtype=complex) ** self.outer_offsets
        wp = np.asarray(w, dtype=complex) ** self.inner_offsets
        c = self.coeffs if self.coeffs.ndim == 4 else self.coeffs[..., None, None]
        return np.einsum("k,j,kjab->ab", zp, wp, c)

    def eval_torus_grid(self, grid: int) -> np.ndarray:
        """Values on the full grid x grid torus lattice, shape (grid, grid, p, p)."""
        zs = circle_grid(grid)
        zp = zs[:, None] ** self.outer_offsets[None, :]
        wp = zs[:, None] ** self.inner_offsets[None, :]
        c = self.coeffs if self.coeffs.ndim == 4 else self.coeffs[..., None, None]
        return np.einsum("uk,vj,kjab->uvab", zp, wp, c)

    def inner_symbols_at(self, w) -> np.ndarray:
        """s_k(w) = sum_j c_{k,j} w^j for each outer offset k."""
        wp = np.asarray(w, dtype=complex) ** self.inner_offsets
        c = self.coeffs if self.coeffs.ndim == 4 else self.coeffs[..., None, None]
        return np.einsum("j,kjab->kab", wp, c)

    def eval_matrix(self, w) -> np.ndarray:
        """Outer-matrix realization at w: block (a, b) equals s_{a-b}(w)."""
        syms = self.inner_symbols_at(w)
        if self.p == 1:
            return materialize_symbols(syms[:, 0, 0], self.n)
        return materialize_symbols(syms, self.n)

    def eval_matrix_grid(self, grid: int) -> np.ndarray:
        ws = circle_grid(grid)
        wp = ws[:, None] ** self.inner_offsets[None, :]
        c = self.coeffs if self.coeffs.ndim == 4 else self.coeffs[..., None, None]
        syms = np.einsum("vj,kjab->vkab", wp, c)
        if self.p == 1:
            return materialize_symbols_batch(syms[:, :, 0, 0], self.n)
        return materialize_symbols_batch(syms, self.n)

    def as_block_toeplitz(self) -> BlockToeplitz:
        """Inner factor realized as m x m Toeplitz basis matrices (scalar coefficients only)."""
        if self.p != 1:
            raise ValueError("only scalar-coefficient elements embed this way")
        syms = np.zeros((2 * self.n - 1, self.m, self.m), dtype=complex)
        for ki, _ in enumerate(self.outer_offsets):
            syms[ki] = materialize_symbols(self.coeffs[ki], self.m)
        return BlockToeplitz(self.n, self.m, syms)


@dataclass(frozen=True)
class MinPositivityCertificate:
    """Grid floor of the pointwise minimum eigenvalue with a Lipschitz margin.

    certified_margin = floor - lipschitz * pi / grid lower-bounds the true
    minimum; certified means the margin is strictly positive.
    """

    grid: int
    floor: float
    lipschitz: float
    certified_margin: float
    certified: bool
    argmin: tuple[complex, complex]
    realization: str = "torus"


def certify_two_level_min_positive(
    x: TwoLevelToeplitz,
    grid: int = 256,
    tol: Tolerance = DEFAULT_TOL,
    outer_as_matrix: bool = False,
) -> MinPositivityCertificate:
    """Certify min(lambda_min) > 0 over the evaluation grid plus Lipschitz slack.

    The torus realization scans lambda_min(x(z, w)) over a grid x grid
    lattice; the outer-matrix realization scans lambda_min of the
    (n*p) x (n*p) matrices x(w) over one circle grid.
    """
    if grid < 4:
        raise ValueError("grid too small")
    if not x.is_selfadjoint:
        raise ValueError("element must be selfadjoint")
    lips = x.coefficient_lipschitz()
    zs = circle_grid(grid)
    if outer_as_matrix:
        mats = x.eval_matrix_grid(grid)
        eigs = np.linalg.eigvalsh((mats + mats.conj().transpose(0, 2, 1)) / 2.0)
        floors = eigs[:, 0]
        idx = int(np.argmin(floors))
        floor = float(floors[idx])
        argmin = (complex(zs[idx]), complex(zs[idx]))
        realization = "outer_matrix"
    else:
        vals = x.eval_torus_grid(grid)
        if x.p == 1:
            floors = vals[:, :, 0, 0].real
        else:
            herm = (vals + vals.conj().transpose(0, 1, 3, 2)) / 2.0
            floors = np.linalg.eigvalsh(herm)[:, :, 0]
        ui, vi = np.unravel_index(int(np.argmin(floors)), floors.shape)
        floor = float(floors[ui, vi])
        argmin = (complex(zs[ui]), complex(zs[vi]))
        realization = "torus"
    margin = floor - lips * np.pi / grid
    return MinPositivityCertificate(grid, floor, lips, float(margin), bool(margin > 0.0), argmin, realization)


@dataclass(frozen=True)
class SeparableDecomposition:
    """Grid-atom separable decomposition of T + eps * I.

    Atoms lambda_j with PSD weights g_j satisfy
    sum_j Lambda(lambda_j) (x) g_j = T + eps * I up to the reported residual.
    """

    lambdas: np.ndarray
    weights: np.ndarray
    epsilon: float
    residual: float
    iterations: int
    grid: int
    converged: bool
    history: dict = field(default_factory=dict, repr=False)

    @property
    def m(self) -> int:
        return int(self.weights.shape[1])

    def reassemble(self, n: int) -> np.ndarray:
        ks = np.arange(-(n - 1), n)
        powers = self.lambdas[None, :] ** (-ks[:, None])
        syms = np.tensordot(powers, self.weights, axes=([1], [0]))
        return materialize_symbols(syms, n)


def _moment_residual_norm(r: np.ndarray, n: int) -> float:
    """Frobenius norm of the materialized block Toeplitz error from symbol errors."""
    ks = np.arange(-(n - 1), n)
    mult = n - np.abs(ks)
    per = np.sum(np.abs(r) ** 2, axis=(1, 2))
    return float(np.sqrt(np.sum(mult * per)))


def separable_decompose(
    t: BlockToeplitz,
    eps: float,
    grid: int | None = None,
    tol: Tolerance = DEFAULT_TOL,
    max_iter: int = 100000,
    track_history: bool = False,
) -> SeparableDecomposition:
    """Dykstra-projected separable decomposition on a circle grid.

    Alternates between the product of PSD cones (one weight per grid atom,
    with Dykstra's correction) and the affine set of exact moment matches for
    T + eps * I, which needs no correction. The affine projection is
    closed-form because the uniform grid makes the moment map a scaled
    isometry. Stalls double the grid up to 16 * (2n - 1) atoms.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    rep = min_psd_block(t, tol)
    if not rep:
        raise ValueError(f"input is not PSD (min eig {rep.min_eig:.3e})")
    n, m = t.n, t.m
    target = np.array(t.symbols)
    target[n - 1] += eps * np.eye(m)

    grids = [grid if grid is not None else max(2 * n - 1, 8 * n)]
    if grids[0] < 2 * n - 1:
        raise ValueError(f"grid must be at least 2n - 1 = {2 * n - 1}")
    cap = 16 * (2 * n - 1)
    while grids[-1] < cap:
        grids.append(min(2 * grids[-1], cap))

    best = None
    for big_n in grids:
        result = _dykstra(target, eps, n, m, big_n, tol, max_iter, track_history)
        if best is None or result.residual < best.residual:
            best = result
        if result.converged:
            return result
    raise RuntimeError(
        f"separable decomposition stalled at grid {grids[-1]}; best residual {best.residual:.3e}"
    )


def _dykstra(
    target: np.ndarray,
    eps: float,
    n: int,
    m: int,
    big_n: int,
    tol: Tolerance,
    max_iter: int,
    track_history: bool,
) -> SeparableDecomposition:
    lams = circle_grid(big_n)
    ks = np.arange(-(n - 1), n)
    # moment map: mom_k = sum_j lams_j**(-k) g_j; MM* = big_n * Id on a uniform
    # grid with big_n >= 2n - 1, so the affine projection is a single correction
    p_fwd = lams[None, :] ** (-ks[:, None])
    p_adj = p_fwd.conj()

    def moments(g):
        return np.einsum("kj,jab->kab", p_fwd, g)

    def project_affine(g):
        return g + np.einsum("kj,kab->jab", p_adj, target - moments(g)) / big_n

    def negativity(g) -> float:
        gh = (g + g.conj().transpose(0, 2, 1)) / 2.0
        return float(max(0.0, -np.min(np.linalg.eigvalsh(gh))))

    # only the PSD cone carries a Dykstra correction; the affine set needs none
    x = project_affine(np.zeros((big_n, m, m), dtype=complex))
    corr = np.zeros_like(x)
    mom_hist: list[float] = []
    vio_hist: list[float] = []
    y = x
    converged = False
    iterations = 0
    residual = np.inf
    for iterations in range(1, max_iter + 1):
        if track_history:
            vio_hist.append(negativity(x))
        u = x + corr
        uh = (u + u.conj().transpose(0, 2, 1)) / 2.0
        eigs, vecs = np.linalg.eigh(uh)
        clipped = np.clip(eigs, 0.0, None)
        y = np.einsum("jab,jb,jcb->jac", vecs, clipped, vecs.conj())
        corr = u - y
        residual = _moment_residual_norm(target - moments(y), n)
        if track_history:
            mom_hist.append(residual)
        # y is PSD by construction, so feasibility of its moments is the whole test
        if residual < tol.residual_tol:
            converged = True
            break
        x = project_affine(y)
    history = {"psd_violation": vio_hist, "moment_residual": mom_hist} if track_history else {}
    return SeparableDecomposition(
        lams, y, eps, residual, iterations, big_n, converged, history
    )


def build_min_neq_max_element() -> TwoLevelToeplitz:
    """The order-2 element with 2 x 2 matrix coefficients separating min from max.

    x = chi_0 (x) b_0 + chi_1 (x) b_1 + chi_{-1} (x) b_1^* with b_0 = 3 * chi_0 * I
    and b_1 = [[chi_1, 0], [2 chi_{-1}, -chi_1]].
    """
    c = np.zeros((3, 3, 2, 2), dtype=complex)
    c[1, 1] = 3.0 * np.eye(2)  # (k, j) = (0, 0)
    c[2, 2] = np.diag([1.0, -1.0])  # (1, 1)
    c[2, 0] = np.array([[0.0, 0.0], [2.0, 0.0]])  # (1, -1)
    c[0, 0] = c[2, 2].conj().T  # (-1, -1)
    c[0, 2] = c[2, 0].conj().T  # (-1, 1)
    return TwoLevelToeplitz(2, 2, c)


def averaged_obstruction_matrix(h11: float, h22: float) -> np.ndarray:
    """Averaged 4 x 4 obstruction whose positivity any split of the demo element needs.

    A decomposition into positive parts would force this matrix PSD for some
    (h11, h22) in [0, 3]^2; its minimum eigenvalue stays negative throughout.
    """
    return np.array(
        [
            [h11, 0.0, 1.0, 0.0],
            [0.0, h22, 2.0, -1.0],
            [1.0, 2.0, 3.0 - h11, 0.0],
            [0.0, -1.0, 0.0, 3.0 - h22],
        ]
    )


def max_obstruction_min_eig(coarse: int = 201, refine_from: int = 5) -> dict:
    """Maximize lambda_min of the averaged obstruction over [0, 3]^2.

    Coarse grid scan followed by Nelder-Mead refinement from the best cells.
    """
    hs = np.linspace(0.0, 3.0, coarse)
    h1g, h2g = np.meshgrid(hs, hs, indexing="ij")
    mats = np.zeros((coarse, coarse, 4, 4))
    mats[..., 0, 0] = h1g
    mats[..., 1, 1] = h2g
    mats[..., 2, 2] = 3.0 - h1g
    mats[..., 3, 3] = 3.0 - h2g
    mats[..., 0, 2] = mats[..., 2, 0] = 1.0
    mats[..., 1, 2] = mats[..., 2, 1] = 2.0
    mats[..., 1, 3] = mats[..., 3, 1] = -1.0
    floors = np.linalg.eigvalsh(mats)[..., 0]

    def neg_min_eig(h):
        return -float(np.linalg.eigvalsh(averaged_obstruction_matrix(h[0], h[1]))[0])

    flat = np.argsort(floors, axis=None)[::-1][:refine_from]
    best_val = float(np.max(floors))
    ij = np.unravel_index(int(np.argmax(floors)), floors.shape)
    best_point = (float(hs[ij[0]]), float(hs[ij[1]]))
    for pos in flat:
        i, j = np.unravel_index(int(pos), floors.shape)
        res = scipy.optimize.minimize(
            neg_min_eig,
            x0=[hs[i], hs[j]],
            method="Nelder-Mead",
            bounds=[(0.0, 3.0), (0.0, 3.0)],
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 500},
        )
        if -res.fun > best_val:
            best_val = float(-res.fun)
            best_point = (float(res.x[0]), float(res.x[1]))
    return {
        "max_min_eig": best_val,
        "argmax": best_point,
        "coarse_grid": coarse,
        "grid_max": float(np.max(floors)),
    }


def min_neq_max_demo(grid: int = 512, coarse: int = 201, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Run both halves of the min/max separation on the worked element.

    (a) torus certificate: lambda_min(x(z, w)) is bounded below by a positive
    margin, so the element is min-positive; (b) the averaged obstruction that
    any positive decomposition would produce has negative minimum eigenvalue
    everywhere on [0, 3]^2, so the element is not max-positive.
    """
    x = build_min_neq_max_element()
    cert = certify_two_level_min_positive(x, grid=grid, tol=tol)
    obstruction = max_obstruction_min_eig(coarse=coarse)
    established = bool(cert.certified and obstruction["max_min_eig"] < 0.0)
    return {
        "floor": cert.floor,
        "lipschitz": cert.lipschitz,
        "certified_margin": cert.certified_margin,
        "min_positive_certified": cert.certified,
        "grid": cert.grid,
        "max_min_eig": obstruction["max_min_eig"],
        "obstruction_argmax": obstruction["argmax"],
        "coarse_grid": obstruction["coarse_grid"],
        "established": established,
    }


def equivalence_suite(
    rng: np.random.Generator,
    instances: int = 100,
    symbols_per_instance: int = 500,
    max_n: int = 4,
    max_m: int = 4,
    tol: Tolerance = DEFAULT_TOL,
) -> dict:
    """Cross-check matrix positivity against the Schur-pairing protocol.

    Half the instances are PSD (every random PSD-valued symbol must pass),
    half are not (their deterministic witness must refute). Returns a report
    with the disagreement count, which is always zero: the two verdicts
    characterize the same cone.
    """
    disagreements = 0
    records = []
    for idx in range(instances):
        n = int(rng.integers(2, max_n + 1))
        m = int(rng.integers(1, max_m + 1))
        make_psd = idx % 2 == 0
        if make_psd:
            t = sampling.random_psd_block_toeplitz(rng, n, m)
        else:
            t = sampling.random_nonpsd_block_toeplitz(rng, n, m)
        verdict_matrix = bool(min_psd_block(t, tol))
        if verdict_matrix:
            ok = True
            worst = np.inf
            for _ in range(symbols_per_instance):
                f = sampling.random_psd_valued_block(rng, int(rng.integers(0, n)), m)
                _, rep = schur_pairing_check(t, f, tol)
                worst = min(worst, rep.min_eig)
                if not rep:
                    ok = False
                    break
            verdict_protocol = ok
            detail = {"worst_pairing_eig": float(worst)}
        else:
            witness = witness_for_nonpositivity(t, tol)
            s, rep = schur_pairing_check(t, witness, tol)
            ones = np.ones(m)
            form = float(np.real(ones @ s @ ones))
            verdict_protocol = not (form < 0.0 or not rep)
            detail = {"witness_quadratic_form": form, "witness_min_eig": rep.min_eig}
        if verdict_matrix != verdict_protocol:
            disagreements += 1
        records.append(
            {
                "n": n,
                "m": m,
                "matrix_psd": verdict_matrix,
                "protocol_psd": verdict_protocol,
                **detail,
            }
        )
    return {
        "instances": instances,
        "symbols_per_instance": symbols_per_instance,
        "disagreements": disagreements,
        "records": records,
    }
