"""Core value types: trigonometric polynomials and (block) Toeplitz matrices.

Conventions used throughout the package:

* a Toeplitz matrix of order n is stored by its symbol sequence
  tau_{-(n-1)}, ..., tau_{n-1} and materializes as M[i, j] = tau_{i-j},
  so positive offsets sit below the diagonal;
* a trigonometric (Laurent) polynomial of degree bound d is stored as the
  coefficient sequence a_{-d}, ..., a_d of f(z) = sum_k a_k z^k on |z| = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNIT_MODULUS_TOL = 1e-9
SELFADJOINT_RTOL = 1e-8


@dataclass(frozen=True)
class Tolerance:
    """Numerical slack: eig_tol for eigenvalue sign checks, residual_tol for reassembly errors."""

    eig_tol: float = 1e-10
    residual_tol: float = 1e-8

    def __post_init__(self):
        if self.eig_tol < 0 or self.residual_tol < 0:
            raise ValueError("tolerances must be nonnegative")


DEFAULT_TOL = Tolerance()


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


def unit_circle_point(z) -> complex:
    """Validate |z| = 1 within tolerance and return the renormalized point."""
    z = complex(z)
    r = abs(z)
    if abs(r - 1.0) > UNIT_MODULUS_TOL:
        raise ValueError(f"point {z} is off the unit circle (|z| = {r})")
    return z / r


def unit_circle_points(z) -> np.ndarray:
    """Array version of unit_circle_point."""
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    if np.any(np.abs(r - 1.0) > UNIT_MODULUS_TOL):
        raise ValueError("input contains points off the unit circle")
    return z / r


def circle_grid(num: int) -> np.ndarray:
    """num equispaced points exp(2*pi*1j*t/num), t = 0..num-1."""
    return np.exp(2j * np.pi * np.arange(num) / num)


def _offset_index(n: int) -> np.ndarray:
    # index matrix picking symbols[i - j + n - 1]
    return np.arange(n)[:, None] - np.arange(n)[None, :] + (n - 1)


def materialize_symbols(symbols: np.ndarray, n: int) -> np.ndarray:
    """Build the dense matrix from a symbol sequence of length 2n-1.

    Scalar symbols give an (n, n) matrix; (2n-1, m, m) block symbols give
    the (n*m, n*m) block Toeplitz matrix.
    """
    symbols = np.asarray(symbols)
    blocks = symbols[_offset_index(n)]
    if blocks.ndim == 2:
        return blocks
    m = blocks.shape[-1]
    return np.ascontiguousarray(blocks.transpose(0, 2, 1, 3)).reshape(n * m, n * m)


def materialize_symbols_batch(symbols: np.ndarray, n: int) -> np.ndarray:
    """Like materialize_symbols for a leading batch axis on the symbols."""
    symbols = np.asarray(symbols)
    blocks = symbols[:, _offset_index(n)]
    if blocks.ndim == 3:
        return blocks
    m = blocks.shape[-1]
    out = blocks.transpose(0, 1, 3, 2, 4).reshape(blocks.shape[0], n * m, n * m)
    return out


@dataclass(frozen=True)
class TrigPoly:
    """Trigonometric polynomial f(z) = sum_{|k| <= d} a_k z^k.

    coeffs[k + d] stores a_k; degree bound d may exceed the support.
    """

    d: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("degree bound must be nonnegative")
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (2 * self.d + 1,):
            raise ValueError(f"expected {2 * self.d + 1} coefficients, got shape {c.shape}")
        object.__setattr__(self, "coeffs", _freeze(c))

    @classmethod
    def from_coeffs(cls, mapping: dict) -> "TrigPoly":
        """Build from a {offset: coefficient} mapping."""
        if not mapping:
            return cls(0, np.zeros(1))
        d = max(abs(int(k)) for k in mapping)
        c = np.zeros(2 * d + 1, dtype=complex)
        for k, v in mapping.items():
            c[int(k) + d] = v
        return cls(d, c)

    @classmethod
    def chi(cls, k: int) -> "TrigPoly":
        """The monomial z^k."""
        return cls.from_coeffs({k: 1.0})

    def coeff(self, k: int) -> complex:
        if abs(k) > self.d:
            return 0.0 + 0.0j
        return complex(self.coeffs[k + self.d])

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(-self.d, self.d + 1)

    @property
    def is_selfadjoint(self) -> bool:
        return bool(np.allclose(self.coeffs[::-1].conj(), self.coeffs, atol=1e-13 * max(1.0, float(np.max(np.abs(self.coeffs))))))

    def adjoint(self) -> "TrigPoly":
        return TrigPoly(self.d, self.coeffs[::-1].conj())

    def shifted(self, ell: int) -> "TrigPoly":
        """Multiply by z^ell."""
        d = self.d + abs(ell)
        c = np.zeros(2 * d + 1, dtype=complex)
        c[ell + abs(ell) : ell + abs(ell) + 2 * self.d + 1] = self.coeffs
        return TrigPoly(d, c)

    def scaled(self, a) -> "TrigPoly":
        return TrigPoly(self.d, self.coeffs * a)

    def plus(self, other: "TrigPoly") -> "TrigPoly":
        d = max(self.d, other.d)
        c = np.zeros(2 * d + 1, dtype=complex)
        c[d - self.d : d + self.d + 1] += self.coeffs
        c[d - other.d : d + other.d + 1] += other.coeffs
        return TrigPoly(d, c)

    def eval(self, z):
        """Evaluate on the unit circle (scalar or array input)."""
        if np.isscalar(z) or isinstance(z, complex):
            zz = unit_circle_point(z)
            return complex(np.polyval(self.coeffs[::-1], zz) * zz ** (-self.d))
        zz = unit_circle_points(z)
        powers = zz[:, None] ** self.offsets[None, :]
        return powers @ self.coeffs


@dataclass(frozen=True)
class BlockTrigPoly:
    """Matrix-valued trigonometric polynomial F(z) = sum_{|k| <= d} a_k z^k, a_k in M_m."""

    d: int
    m: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.d < 0 or self.m < 1:
            raise ValueError("need d >= 0 and m >= 1")
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (2 * self.d + 1, self.m, self.m):
            raise ValueError(f"expected shape {(2 * self.d + 1, self.m, self.m)}, got {c.shape}")
        object.__setattr__(self, "coeffs", _freeze(c))

    @classmethod
    def from_coeffs(cls, mapping: dict, m: int) -> "BlockTrigPoly":
        d = max((abs(int(k)) for k in mapping), default=0)
        c = np.zeros((2 * d + 1, m, m), dtype=complex)
        for k, v in mapping.items():
            c[int(k) + d] = np.asarray(v, dtype=complex)
        return cls(d, m, c)

    def coeff(self, k: int) -> np.ndarray:
        if abs(k) > self.d:
            return np.zeros((self.m, self.m), dtype=complex)
        return np.array(self.coeffs[k + self.d])

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(-self.d, self.d + 1)

    @property
    def is_selfadjoint(self) -> bool:
        adj = self.coeffs[::-1].conj().transpose(0, 2, 1)
        scale = max(1.0, float(np.max(np.abs(self.coeffs))))
        return bool(np.allclose(adj, self.coeffs, atol=1e-13 * scale))

    def adjoint(self) -> "BlockTrigPoly":
        return BlockTrigPoly(self.d, self.m, self.coeffs[::-1].conj().transpose(0, 2, 1))

    def eval(self, z):
        """Evaluate on the unit circle; array input returns a (len, m, m) stack."""
        if np.isscalar(z) or isinstance(z, complex):
            zz = unit_circle_point(z)
            powers = zz ** self.offsets
            return np.tensordot(powers, self.coeffs, axes=1)
        zz = unit_circle_points(z)
        powers = zz[:, None] ** self.offsets[None, :]
        return np.tensordot(powers, self.coeffs, axes=1)


@dataclass(frozen=True)
class ToeplitzMat:
    """Toeplitz matrix of order n held by its symbols tau_{-(n-1)}, ..., tau_{n-1}."""

    n: int
    symbols: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be positive")
        s = np.asarray(self.symbols, dtype=complex)
        if s.shape != (2 * self.n - 1,):
            raise ValueError(f"expected {2 * self.n - 1} symbols, got shape {s.shape}")
        object.__setattr__(self, "symbols", _freeze(s))

    @classmethod
    def from_symbols(cls, n: int, mapping: dict) -> "ToeplitzMat":
        s = np.zeros(2 * n - 1, dtype=complex)
        for k, v in mapping.items():
            if abs(int(k)) > n - 1:
                raise ValueError(f"offset {k} out of range for order {n}")
            s[int(k) + n - 1] = v
        return cls(n, s)

    def symbol(self, k: int) -> complex:
        if abs(k) > self.n - 1:
            raise ValueError(f"offset {k} out of range for order {self.n}")
        return complex(self.symbols[k + self.n - 1])

    def materialize(self) -> np.ndarray:
        return materialize_symbols(self.symbols, self.n)

    @property
    def is_selfadjoint(self) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.symbols))))
        return bool(np.allclose(self.symbols[::-1].conj(), self.symbols, atol=1e-13 * scale))


@dataclass(frozen=True)
class BlockToeplitz:
    """Block Toeplitz matrix: n x n of m x m blocks, block (i, j) = symbols[i - j]."""

    n: int
    m: int
    symbols: np.ndarray

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("need n >= 1 and m >= 1")
        s = np.asarray(self.symbols, dtype=complex)
        if s.shape != (2 * self.n - 1, self.m, self.m):
            raise ValueError(f"expected shape {(2 * self.n - 1, self.m, self.m)}, got {s.shape}")
        object.__setattr__(self, "symbols", _freeze(s))

    @classmethod
    def from_symbols(cls, n: int, m: int, mapping: dict) -> "BlockToeplitz":
        s = np.zeros((2 * n - 1, m, m), dtype=complex)
        for k, v in mapping.items():
            if abs(int(k)) > n - 1:
                raise ValueError(f"offset {k} out of range for order {n}")
            s[int(k) + n - 1] = np.asarray(v, dtype=complex)
        return cls(n, m, s)

    def symbol(self, k: int) -> np.ndarray:
        if abs(k) > self.n - 1:
            raise ValueError(f"offset {k} out of range for order {self.n}")
        return np.array(self.symbols[k + self.n - 1])

    def materialize(self) -> np.ndarray:
        return materialize_symbols(self.symbols, self.n)

    @property
    def is_selfadjoint(self) -> bool:
        adj = self.symbols[::-1].conj().transpose(0, 2, 1)
        scale = max(1.0, float(np.max(np.abs(self.symbols))))
        return bool(np.allclose(adj, self.symbols, atol=1e-13 * scale))


@dataclass(frozen=True)
class PsdReport:
    """Verdict of a positive semidefiniteness test plus the minimum eigenvalue found."""

    is_psd: bool
    min_eig: float

    def __bool__(self) -> bool:
        return self.is_psd


def basis_r(n: int, k: int) -> ToeplitzMat:
    """Basis element r_k: the k-th power of the lower shift (adjoint power for k < 0).

    Materializes with n - |k| unit entries on the offset-k diagonal.
    """
    if abs(k) > n - 1:
        raise ValueError(f"|k| = {abs(k)} exceeds n - 1 = {n - 1}")
    return ToeplitzMat.from_symbols(n, {k: 1.0})


def shift_unitaries(n: int) -> tuple[ToeplitzMat, ToeplitzMat]:
    """Two Toeplitz unitaries u, w averaging to the lower shift: s = (u + w) / 2.

    u has a +1 in the top-right corner, w a -1; both carry the subdiagonal of ones.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    u = ToeplitzMat.from_symbols(n, {1: 1.0, -(n - 1): 1.0})
    w = ToeplitzMat.from_symbols(n, {1: 1.0, -(n - 1): -1.0})
    return u, w


def pure_atom(n: int, lam) -> ToeplitzMat:
    """Rank-one Toeplitz atom at a circle point: symbols tau_j = lam**(-j).

    Materializes as c* c with row vector c = (1, lam, ..., lam^(n-1)); it is
    PSD with trace n and squares to n times itself.
    """
    lam = unit_circle_point(lam)
    ks = np.arange(-(n - 1), n)
    return ToeplitzMat(n, lam ** (-ks))


def is_psd(mat: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> PsdReport:
    """PSD check by eigvalsh after symmetrizing (M + M*)/2.

    Rejects inputs whose antihermitian part exceeds the relative tolerance.
    """
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("expected a square matrix")
    dev = np.linalg.norm(mat - mat.conj().T)
    scale = np.linalg.norm(mat)
    if dev > SELFADJOINT_RTOL * max(scale, 1e-300):
        raise ValueError(f"matrix is not selfadjoint (deviation {dev:.3e} vs scale {scale:.3e})")
    herm = (mat + mat.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(herm)
    min_eig = float(eigs[0])
    return PsdReport(min_eig >= -tol.eig_tol, min_eig)


def schur_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise (Schur-Hadamard) product of two equal-shape square matrices."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected two square matrices of equal shape")
    return a * b


def schur_isometry(d: int) -> np.ndarray:
    """The isometry V: e_k -> e_k (x) e_k realizing A o B = V* (A (x) B) V."""
    v = np.zeros((d * d, d), dtype=complex)
    for k in range(d):
        v[k * d + k, k] = 1.0
    return v


def transpose_similarity(x: ToeplitzMat) -> tuple[np.ndarray, float]:
    """Anti-diagonal permutation u with x^T = u* x u for Toeplitz x.

    Returns (u, residual); the residual is an exact entry comparison, so it is
    0.0 whenever x really is Toeplitz.
    """
    n = x.n
    u = np.zeros((n, n), dtype=complex)
    for i in range(n):
        u[i, n - 1 - i] = 1.0
    mat = x.materialize()
    residual = float(np.max(np.abs(mat.T - u.conj().T @ mat @ u))) if n > 0 else 0.0
    return u, residual


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def fourier_coeff_via_roots(f: TrigPoly, p: int) -> complex:
    """Mean coefficient via prime roots of unity: f_hat(0) = (1/p) sum_k f(zeta^k).

    Exact (up to roundoff) whenever p is prime and at least f.d + 1, because the
    nonzero offsets of f cannot vanish modulo p.
    """
    m = f.d + 1
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p < m:
        raise ValueError(f"need p >= degree bound + 1 = {m}, got {p}")
    zeta = np.exp(2j * np.pi * np.arange(1, p + 1) / p)
    return complex(np.mean(f.eval(zeta)))


def eval_on_circle(f, z):
    """Evaluate a TrigPoly or BlockTrigPoly at a circle point (renormalized)."""
    return f.eval(z)
