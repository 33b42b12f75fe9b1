"""Small shared linear-algebra helpers (symmetric eigendecompositions, SPD powers)."""

import numpy as np

from .errors import DimensionError, NotPositiveDefiniteError

DEFAULT_TOL = 1e-10


def as_square(M, name="matrix"):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {M.shape}")
    return M


def symmetrize(M):
    return 0.5 * (M + M.T)


def max_abs(M):
    M = np.asarray(M)
    return float(np.max(np.abs(M))) if M.size else 0.0


def asymmetry(M):
    return max_abs(M - M.T)


def require_spd(M, name="matrix", tol=1e-12):
    """Validate symmetric positive definiteness; return the symmetrized matrix."""
    M = as_square(M, name)
    if asymmetry(M) > tol * max(1.0, max_abs(M)):
        raise NotPositiveDefiniteError(
            f"{name} is not symmetric (asymmetry {asymmetry(M):.3e})")
    Ms = symmetrize(M)
    w = np.linalg.eigvalsh(Ms)
    if w[0] <= 0.0:
        raise NotPositiveDefiniteError(
            f"{name} is not positive definite (min eigenvalue {w[0]:.3e})",
            min_eigenvalue=float(w[0]))
    return Ms


def is_spd(M, tol=1e-12):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    if asymmetry(M) > tol * max(1.0, max_abs(M)):
        return False
    return bool(np.linalg.eigvalsh(symmetrize(M))[0] > 0.0)


def spd_power(M, t, name="matrix"):
    """M**t for symmetric positive definite M via eigendecomposition."""
    Ms = require_spd(M, name)
    w, V = np.linalg.eigh(Ms)
    return (V * w**t) @ V.T


def spd_sqrt(M, name="matrix"):
    return spd_power(M, 0.5, name)


def spd_inv_sqrt(M, name="matrix"):
    return spd_power(M, -0.5, name)


def require_symmetric(M, name="matrix", tol=1e-9):
    M = as_square(M, name)
    if asymmetry(M) > tol * max(1.0, max_abs(M)):
        raise NotPositiveDefiniteError(
            f"{name} must be symmetric (asymmetry {asymmetry(M):.3e})")
    return symmetrize(M)
