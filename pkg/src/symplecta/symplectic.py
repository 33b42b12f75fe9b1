"""Symplectic linear algebra in 2n-dimensional phase space.

Coordinates are ordered (x_1..x_n, p_1..p_n) and the symplectic form is
sigma(z, z') = Jz.z' with

    J = [[ 0, I],
         [-I, 0]].

A matrix S is symplectic when S^T J S = J.  The factorization helpers use the
generator families

    scaling(L) = [[L^-1, 0 ], [0, L^T]]          (det L != 0)
    shear(P)   = [[I,    0 ], [P, I  ]]          (P symmetric)

together with J itself, which generate the whole group.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, schur

from ._linalg import (DEFAULT_TOL, as_square, asymmetry, max_abs, require_spd,
                      spd_inv_sqrt, symmetrize)
from .errors import (DimensionError, InternalConsistencyError,
                     NotSymplecticError)


def symplectic_form(n):
    """The standard form matrix J on R^2n."""
    if n < 1:
        raise DimensionError(f"n must be >= 1, got {n}")
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def scaling(L):
    """Block generator [[L^-1, 0], [0, L^T]] for invertible L."""
    L = as_square(L, "L")
    n = L.shape[0]
    if abs(np.linalg.det(L)) < 1e-300:
        raise DimensionError("scaling generator needs an invertible L")
    S = np.zeros((2 * n, 2 * n))
    S[:n, :n] = np.linalg.inv(L)
    S[n:, n:] = L.T
    return S


def shear(P):
    """Block generator [[I, 0], [P, I]] for symmetric P."""
    P = as_square(P, "P")
    if asymmetry(P) > 1e-9 * max(1.0, max_abs(P)):
        raise DimensionError("shear generator needs a symmetric P")
    n = P.shape[0]
    S = np.eye(2 * n)
    S[n:, :n] = symmetrize(P)
    return S


def _half_dim(S, name="matrix"):
    S = as_square(S, name)
    if S.shape[0] % 2 != 0:
        raise DimensionError(f"{name} must be 2n x 2n, got {S.shape}")
    return S.shape[0] // 2


@dataclass(frozen=True)
class MatrixCheck:
    """Boolean verdict together with the measured residual."""

    ok: bool
    residual: float

    def __bool__(self):
        return self.ok


def symplectic_residual(S):
    """max-norm of S^T J S - J."""
    n = _half_dim(S, "S")
    J = symplectic_form(n)
    return max_abs(S.T @ J @ S - J)


def is_symplectic(S, tol=DEFAULT_TOL):
    r = symplectic_residual(S)
    return MatrixCheck(ok=r <= tol, residual=r)


def require_symplectic(S, tol=DEFAULT_TOL, name="matrix"):
    S = np.asarray(S, dtype=float)
    check = is_symplectic(S, tol)
    if not check.ok:
        raise NotSymplecticError(
            f"{name} is not symplectic (residual {check.residual:.3e} > {tol:.1e})",
            residual=check.residual)
    return S


def symplectic_inverse(S, tol=DEFAULT_TOL):
    """Inverse of a symplectic matrix from its block structure.

    For S = [[A, B], [C, D]] the inverse is [[D^T, -B^T], [-C^T, A^T]];
    cheaper and better conditioned than a general solve.
    """
    S = require_symplectic(S, tol, "S")
    n = S.shape[0] // 2
    A, B = S[:n, :n], S[:n, n:]
    C, D = S[n:, :n], S[n:, n:]
    out = np.zeros_like(S)
    out[:n, :n] = D.T
    out[:n, n:] = -B.T
    out[n:, :n] = -C.T
    out[n:, n:] = A.T
    return out


@dataclass(frozen=True)
class PreIwasawaFactors:
    """Factors of S = shear(P) @ scaling(L) @ R with R a symplectic rotation.

    P is symmetric, L symmetric positive definite, and R orthogonal symplectic
    of the block form [[E, F], [-F, E]].  `asymmetry` records how far the raw
    P was from symmetric before symmetrization.
    """

    P: np.ndarray
    L: np.ndarray
    R: np.ndarray
    asymmetry: float

    def reconstruct(self):
        return shear(self.P) @ scaling(self.L) @ self.R


def pre_iwasawa(S, tol=DEFAULT_TOL):
    """Unique factorization S = shear(P) scaling(L) R, L symmetric positive definite."""
    S = require_symplectic(S, tol, "S")
    n = S.shape[0] // 2
    A, B = S[:n, :n], S[:n, n:]
    C, D = S[n:, :n], S[n:, n:]
    U = A @ A.T + B @ B.T
    L = spd_inv_sqrt(U, "A A^T + B B^T")
    P_raw = (C @ A.T + D @ B.T) @ np.linalg.inv(U)
    skew = asymmetry(P_raw)
    if skew > 1e-9 * max(1.0, max_abs(P_raw)):
        raise InternalConsistencyError(
            f"pre-Iwasawa shear came out non-symmetric (asymmetry {skew:.3e})")
    P = symmetrize(P_raw)
    E = L @ A
    F = L @ B
    R = np.zeros_like(S)
    R[:n, :n] = E
    R[:n, n:] = F
    R[n:, :n] = -F
    R[n:, n:] = E
    return PreIwasawaFactors(P=P, L=L, R=R, asymmetry=float(skew))


def symplectic_eigenvalues(M, pair_tol=1e-9):
    """Symplectic spectrum of a symmetric positive definite 2n x 2n matrix.

    Returns the positive numbers lambda_1 >= ... >= lambda_n such that JM has
    eigenvalues +-i lambda_j.  Computed from the skew-symmetric matrix
    M^(1/2) J M^(1/2), whose Hermitian companion i*K has the real spectrum
    {+-lambda_j}; the +- pairing is verified to `pair_tol`.
    """
    n = _half_dim(M, "M")
    require_spd(M, "M")
    w, V = np.linalg.eigh(symmetrize(np.asarray(M, dtype=float)))
    root = (V * np.sqrt(w)) @ V.T
    K = root @ symplectic_form(n) @ root
    K = 0.5 * (K - K.T)
    ev = np.linalg.eigvalsh(1j * K)  # ascending, real
    scale = max(1.0, float(ev[-1]))
    mismatch = max_abs(ev + ev[::-1])
    if mismatch > pair_tol * scale:
        raise InternalConsistencyError(
            f"symplectic spectrum did not pair up (+- mismatch {mismatch:.3e})")
    return ev[n:][::-1].copy()


@dataclass(frozen=True)
class WilliamsonForm:
    """Symplectic congruence S^T M S = diag(spectrum, spectrum)."""

    S: np.ndarray
    spectrum: np.ndarray

    @property
    def diagonal(self):
        return np.diag(np.concatenate([self.spectrum, self.spectrum]))


def williamson(M):
    """Williamson normal form of a symmetric positive definite matrix.

    Finds symplectic S with S^T M S = diag(Lambda, Lambda), Lambda the
    symplectic spectrum in decreasing order.  Uses the real Schur form of the
    skew-symmetric M^(-1/2) J M^(-1/2), which is robust for degenerate
    spectra.
    """
    n = _half_dim(M, "M")
    Ms = require_spd(M, "M")
    Mi = spd_inv_sqrt(Ms, "M")
    K = Mi @ symplectic_form(n) @ Mi
    K = 0.5 * (K - K.T)
    T, Q = schur(K, output="real")
    u_cols, v_cols, mus = [], [], []
    for j in range(n):
        b = T[2 * j, 2 * j + 1]
        u, v = Q[:, 2 * j], Q[:, 2 * j + 1]
        if b < 0:
            b, u, v = -b, v, u
        mus.append(b)
        u_cols.append(u)
        v_cols.append(v)
    lam = 1.0 / np.array(mus)
    order = np.argsort(-lam)
    lam = lam[order]
    O = np.column_stack([u_cols[k] for k in order] + [v_cols[k] for k in order])
    S = Mi @ O @ np.diag(np.sqrt(np.concatenate([lam, lam])))
    return WilliamsonForm(S=S, spectrum=lam)


def random_symplectic(seed, n, spread=1.0, rounds=3):
    """Seeded random symplectic matrix as a product of generator triples.

    Each round multiplies shear(P) @ scaling(L) @ J where P is a random
    symmetric matrix with entries scaled by `spread` and L = expm of a
    random matrix scaled the same way (always invertible).  The draw
    magnitudes shrink with n and rounds so the product stays moderately
    conditioned at spread = 1; spread = 0 gives P = 0, L = I exactly, and
    the product degenerates to J**rounds.
    """
    if n < 1:
        raise DimensionError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    J = symplectic_form(n)
    S = np.eye(2 * n)
    scale = spread * 0.5 / (np.sqrt(n) * rounds)
    for _ in range(rounds):
        P = symmetrize(rng.normal(size=(n, n))) * 2.0 * scale
        L = expm(scale * rng.normal(size=(n, n)))
        S = S @ shear(P) @ scaling(L) @ J
    return S


def random_symplectic_rotation(seed, n):
    """Seeded random element of Sp(n) intersected with the orthogonal group.

    Built from a Haar-ish random unitary U = E + iF via the block embedding
    [[E, F], [-F, E]].
    """
    rng = np.random.default_rng(seed)
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(Z)
    U = Q * (np.diagonal(R) / np.abs(np.diagonal(R)))
    out = np.zeros((2 * n, 2 * n))
    out[:n, :n] = U.real
    out[:n, n:] = U.imag
    out[n:, :n] = -U.imag
    out[n:, n:] = U.real
    return out
