"""The maximally entangled Toeplitz element xi_n and its certificates.

xi_n has two-level coefficients c_{k,-k} = 1; its outer-matrix realization at
a circle point z is the rank-one matrix with entries z^(l-k), i.e. the pure
atom at z. Entanglement is certified from pointwise rank-one structure plus
nondiagonality; claimed separable decompositions are refuted either by a
reassembly mismatch or by a Fourier coefficient-shift contradiction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .block_cones import TwoLevelToeplitz
from .trig_core import (
    DEFAULT_TOL,
    ToeplitzMat,
    Tolerance,
    TrigPoly,
    circle_grid,
    is_psd,
    pure_atom,
    unit_circle_points,
)


@dataclass(frozen=True)
class XiMatrix:
    """The order-n maximally entangled element, evaluable as n x n matrices on the circle."""

    n: int
    two_level: TwoLevelToeplitz

    def eval(self, z) -> np.ndarray:
        """xi_n(z), entries z**(col - row); PSD, rank one, trace n."""
        return self.two_level.eval_matrix(z)

    def eval_many(self, zs) -> np.ndarray:
        zs = unit_circle_points(zs)
        idx = np.arange(self.n)
        expo = idx[None, :] - idx[:, None]
        return zs[:, None, None] ** expo[None, :, :]


def build_xi(n: int) -> XiMatrix:
    """Construct xi_n = sum_k r_k (x) chi_{-k} as a two-level element."""
    if n < 1:
        raise ValueError("order must be positive")
    c = np.zeros((2 * n - 1, 2 * n - 1), dtype=complex)
    for k in range(-(n - 1), n):
        c[k + n - 1, -k + n - 1] = 1.0
    return XiMatrix(n, TwoLevelToeplitz(n, n, c))


@dataclass(frozen=True)
class EntanglementCertificate:
    """Verdict plus the sampled evidence: rank profile and a nondiagonality witness."""

    verdict: str
    samples: int
    max_second_eigenvalue: float
    off_diagonal_witness: tuple[int, int, complex] | None
    tol: float


def certify_entangled(
    xi: XiMatrix, samples: int = 1024, tol: Tolerance = DEFAULT_TOL
) -> EntanglementCertificate:
    """Certify entanglement of xi_n for n >= 2 (n = 1 is separable).

    Hypotheses checked on a sample grid: xi_n(z) is PSD of rank one at every
    sample (second eigenvalue below tol * n) and has a nonvanishing
    off-diagonal entry. Together these rule out any separable positive
    decomposition.
    """
    n = xi.n
    if n == 1:
        return EntanglementCertificate("separable", 0, 0.0, None, tol.eig_tol)
    zs = circle_grid(samples)
    mats = xi.eval_many(zs)
    eigs = np.linalg.eigvalsh((mats + mats.conj().transpose(0, 2, 1)) / 2.0)
    max_second = float(np.max(eigs[:, -2]))
    min_eig = float(np.min(eigs[:, 0]))
    threshold = tol.eig_tol * n
    if max_second >= threshold or min_eig < -threshold:
        raise RuntimeError(
            f"rank-one hypothesis failed: second eigenvalue {max_second:.3e}, "
            f"min eigenvalue {min_eig:.3e}"
        )
    witness = None
    off = np.abs(mats[0])
    np.fill_diagonal(off, 0.0)
    k, ell = np.unravel_index(int(np.argmax(off)), off.shape)
    if off[k, ell] <= 0.5:
        raise RuntimeError("nondiagonality hypothesis failed")
    witness = (int(k), int(ell), complex(zs[0]))
    return EntanglementCertificate("entangled", samples, max_second, witness, threshold)


@dataclass(frozen=True)
class RefutationReport:
    """Which branch disposed of a claimed separable decomposition."""

    branch: str
    detail: dict


def refute_decomposition(
    xi: XiMatrix,
    claimed: list[tuple[ToeplitzMat, TrigPoly]],
    tol: float = 1e-8,
    samples: int | None = None,
) -> RefutationReport:
    """Refute a claimed pointwise decomposition xi_n(z) = sum_j f_j(z) t_j.

    Branch "reassembly_mismatch": some sample z has reassembly error > tol.
    Branch "fourier_contradiction": the reassembly matches, but some term has
    a nondiagonal t_j with nonnegligible f_j; validity would force the
    coefficient-shift relation tau_0 * f_hat(k) = tau_l * f_hat(k - l) for
    all k, which no nonzero finite-support f satisfies (witnessed at the top
    coefficient).
    """
    n = xi.n
    for t, f in claimed:
        if t.n != n:
            raise ValueError("decomposition term has wrong order")
        if not is_psd(t.materialize()):
            raise ValueError("claimed t_j is not PSD")
    num = samples if samples is not None else max(64, 8 * n)
    zs = circle_grid(num)
    for _, f in claimed:
        vals = f.eval(zs)
        if float(np.min(vals.real)) < -tol or float(np.max(np.abs(vals.imag))) > tol:
            raise ValueError("claimed f_j is not nonnegative on the circle")

    target = xi.eval_many(zs)
    acc = np.zeros_like(target)
    for t, f in claimed:
        acc += f.eval(zs)[:, None, None] * t.materialize()[None, :, :]
    errs = np.linalg.norm(acc - target, axis=(1, 2))
    worst = int(np.argmax(errs))
    if float(errs[worst]) > tol:
        return RefutationReport(
            "reassembly_mismatch",
            {"z": complex(zs[worst]), "error": float(errs[worst])},
        )

    for j, (t, f) in enumerate(claimed):
        offsets = np.arange(1, t.n)
        mags = np.abs([t.symbol(int(k)) for k in offsets])
        f_sup = float(np.max(np.abs(f.eval(zs))))
        if mags.size == 0 or float(np.max(mags)) <= tol or f_sup <= tol:
            continue
        ell = int(offsets[int(np.argmax(mags))])
        tau0 = t.symbol(0)
        tau_ell = t.symbol(ell)
        support = np.where(np.abs(f.coeffs) > tol * max(1.0, f_sup))[0]
        k_top = int(support[-1]) - f.d
        # the relation evaluated just above the top coefficient of f
        residual = abs(tau0 * f.coeff(k_top + ell) - tau_ell * f.coeff(k_top))
        return RefutationReport(
            "fourier_contradiction",
            {
                "term": j,
                "offset": ell,
                "top_coefficient": k_top,
                "relation_residual": float(residual),
                "f_norm": f_sup,
            },
        )
    raise RuntimeError(
        "claimed decomposition reassembles xi with only diagonal or negligible terms; "
        "this contradicts the nondiagonality of xi"
    )


@dataclass(frozen=True)
class PuritySplitResult:
    """Outcome of the proportionality check for a split xi = f + g."""

    proportional: bool
    lam: float
    deviation: float
    mismatch: float


def purity_split_check(
    f: TwoLevelToeplitz,
    g: TwoLevelToeplitz,
    n: int,
    tol: float = 1e-8,
    grid: int = 128,
) -> PuritySplitResult:
    """Check that a valid min-positive split of xi_n is proportional to it.

    alpha(z) = ||f(z)|| / ||xi_n(z)|| with ||xi_n(z)|| = n must be constant,
    and f must match that multiple of xi_n. Raises when f + g fails to equal
    xi_n or either summand is not min-positive on the grid.
    """
    xi = build_xi(n)
    total = f.plus(g)
    diff = float(np.max(np.abs(total.coeffs - xi.two_level.coeffs)))
    if diff > tol:
        raise ValueError(f"invalid split: f + g differs from xi by {diff:.3e}")
    fs = f.eval_matrix_grid(grid)
    gs = g.eval_matrix_grid(grid)
    for name, stack in (("f", fs), ("g", gs)):
        herm = (stack + stack.conj().transpose(0, 2, 1)) / 2.0
        lam_min = float(np.min(np.linalg.eigvalsh(herm)))
        if lam_min < -max(tol, 1e-9):
            raise ValueError(f"summand {name} is not min-positive (min eig {lam_min:.3e})")
    xis = xi.eval_many(circle_grid(grid))
    alphas = np.linalg.norm(fs, ord=2, axis=(1, 2)) / n
    lam = float(np.mean(alphas))
    deviation = float(np.max(np.abs(alphas - lam)))
    mismatch = float(np.max(np.linalg.norm(fs - lam * xis, ord=2, axis=(1, 2))))
    proportional = deviation <= tol and mismatch <= max(tol, 1e-6) * n
    return PuritySplitResult(proportional, lam, deviation, mismatch)


CHOI_MASK = np.array(
    [
        [2.0, -1.0, -1.0],
        [-1.0, 2.0, -1.0],
        [-1.0, -1.0, 2.0],
    ]
)


def choi_map(x: np.ndarray) -> np.ndarray:
    """The positive (not completely positive) map on M_3.

    psi(x) has diagonal (x11 + x33, x22 + x11, x33 + x22) and negated
    off-diagonal entries. On Toeplitz inputs it coincides with the Schur
    product against CHOI_MASK.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape != (3, 3):
        raise ValueError("the map acts on 3 x 3 matrices")
    out = -np.array(x)
    out[0, 0] = x[0, 0] + x[2, 2]
    out[1, 1] = x[1, 1] + x[0, 0]
    out[2, 2] = x[2, 2] + x[1, 1]
    return out


def choi_map_demo(t: ToeplitzMat, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Evaluate the map on an order-3 Toeplitz matrix and audit its structure.

    Checks that psi(t) equals the Schur product t o mask exactly, reports the
    mask eigenvalues (0, 3, 3) and the Gershgorin lower bound 0, and when t
    is PSD also reports positivity of psi(t).
    """
    if t.n != 3:
        raise ValueError("demo is specific to order 3")
    mat = t.materialize()
    psi = choi_map(mat)
    hadamard = mat * CHOI_MASK
    agreement = float(np.max(np.abs(psi - hadamard)))
    mask_eigs = np.linalg.eigvalsh(CHOI_MASK)
    gershgorin = float(
        np.min(np.diag(CHOI_MASK) - (np.sum(np.abs(CHOI_MASK), axis=1) - np.abs(np.diag(CHOI_MASK))))
    )
    report = {
        "agreement": agreement,
        "mask_eigenvalues": [float(v) for v in mask_eigs],
        "gershgorin_lower_bound": gershgorin,
        "mask_psd": bool(mask_eigs[0] >= -tol.eig_tol),
    }
    if t.is_selfadjoint:
        input_rep = is_psd(mat, tol)
        report["input_min_eig"] = input_rep.min_eig
        report["input_psd"] = input_rep.is_psd
        if input_rep.is_psd:
            out_rep = is_psd(psi, tol)
            report["output_min_eig"] = out_rep.min_eig
            report["output_psd"] = out_rep.is_psd
    return report


def purity_perturbation_search(
    n: int,
    rng: np.random.Generator,
    directions: int = 1000,
    grid: int = 64,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Max proportionality deviation over random feasible perturbed splits of xi_n.

    For random selfadjoint directions supported like xi_n, bisect for the
    largest step keeping both summands min-positive on the grid, then measure
    the proportionality deviation of the resulting split. Purity forces the
    result toward zero.
    """
    xi = build_xi(n)
    half = xi.two_level.scaled(0.5)
    ws = circle_grid(grid)
    worst = 0.0
    for _ in range(directions):
        e = rng.standard_normal(2 * n - 1) + 1j * rng.standard_normal(2 * n - 1)
        e[: n - 1] = e[2 * n - 2 : n - 1 : -1].conj()
        e[n - 1] = e[n - 1].real
        c = np.zeros((2 * n - 1, 2 * n - 1), dtype=complex)
        for k in range(-(n - 1), n):
            c[k + n - 1, -k + n - 1] = e[k + n - 1]
        c /= np.linalg.norm(c)
        eta = TwoLevelToeplitz(n, n, c)

        def feasible(s: float) -> bool:
            for sign in (1.0, -1.0):
                part = half.plus(eta.scaled(sign * s))
                mats = part.eval_matrix_grid(grid)
                herm = (mats + mats.conj().transpose(0, 2, 1)) / 2.0
                if float(np.min(np.linalg.eigvalsh(herm))) < -tol.eig_tol:
                    return False
            return True

        lo, hi = 0.0, 1.0
        while feasible(hi) and hi < 64.0:
            lo, hi = hi, hi * 2.0
        for _ in range(40):
            mid = (lo + hi) / 2.0
            if feasible(mid):
                lo = mid
            else:
                hi = mid
        s_max = lo
        f = half.plus(eta.scaled(s_max))
        g = half.plus(eta.scaled(-s_max))
        result = purity_split_check(f, g, n, tol=1e-6, grid=grid)
        worst = max(worst, result.deviation)
    return worst
