"""Centered Gaussian wavefunctions, their Wigner ellipsoids and covariances.

A state is parameterized by W symmetric positive definite and Y symmetric:

    psi_{W,Y}(x) = (det W / (pi hbar)^n)^(1/4) exp(-(W + iY)x.x / 2 hbar)

Its Wigner distribution is the Gaussian exp(-Gz.z/hbar) up to normalization,
with the symplectic positive definite matrix

    G = [[W + Y W^-1 Y, Y W^-1], [W^-1 Y, W^-1]],

and the covariance matrix is Sigma = (hbar/2) G^-1.
"""

from dataclasses import dataclass

import numpy as np

from . import capacities
from ._linalg import require_spd, require_symmetric, symmetrize
from .errors import DimensionError, DomainError, InternalConsistencyError
from .bodies import EllipsoidBody
from .symplectic import (require_symplectic, scaling, shear,
                         symplectic_eigenvalues, symplectic_form, williamson)


@dataclass(frozen=True)
class GaussianState:
    """Parameters (W, Y, hbar) of a centered Gaussian wavefunction."""

    W: np.ndarray
    Y: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        W = require_spd(np.atleast_2d(np.asarray(self.W, dtype=float)), "W")
        Y = require_symmetric(np.atleast_2d(np.asarray(self.Y, dtype=float)), "Y")
        if W.shape != Y.shape:
            raise DimensionError(f"W is {W.shape} but Y is {Y.shape}")
        if self.hbar <= 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self):
        return self.W.shape[0]


def standard_state(n, hbar=1.0):
    """The fiducial state W = I, Y = 0 (ground Gaussian)."""
    return GaussianState(W=np.eye(n), Y=np.zeros((n, n)), hbar=hbar)


def wigner_matrix(state, tol=1e-9):
    """The symplectic positive definite matrix G of the Wigner Gaussian."""
    W, Y, n = state.W, state.Y, state.n
    Wi = np.linalg.inv(W)
    G = np.zeros((2 * n, 2 * n))
    G[:n, :n] = W + Y @ Wi @ Y
    G[:n, n:] = Y @ Wi
    G[n:, :n] = Wi @ Y
    G[n:, n:] = Wi
    G = symmetrize(G)
    scale = max(1.0, float(np.max(np.abs(G))) ** 2)
    require_symplectic(G, tol * scale, "Wigner matrix")
    return G


@dataclass(frozen=True)
class CovarianceMatrix:
    """A 2n x 2n covariance matrix travelling with its hbar."""

    sigma: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        sigma = require_symmetric(np.asarray(self.sigma, dtype=float), "sigma")
        if sigma.shape[0] % 2 != 0:
            raise DimensionError(f"sigma must be 2n x 2n, got {sigma.shape}")
        if self.hbar <= 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        object.__setattr__(self, "sigma", sigma)

    @property
    def n(self):
        return self.sigma.shape[0] // 2

    @property
    def xx(self):
        return self.sigma[:self.n, :self.n]

    @property
    def xp(self):
        return self.sigma[:self.n, self.n:]

    @property
    def pp(self):
        return self.sigma[self.n:, self.n:]


def covariance(state):
    """Sigma = (hbar/2) G^-1, inverted numerically from the Wigner matrix."""
    G = wigner_matrix(state)
    sigma = 0.5 * state.hbar * np.linalg.inv(G)
    return CovarianceMatrix(sigma=symmetrize(sigma), hbar=state.hbar)


def covariance_ellipsoid(cov):
    """The phase-space ellipsoid {(1/2) Sigma^-1 z.z <= 1} as a body.

    In the {Mz.z <= hbar} normalization this is M = (hbar/2) Sigma^-1.
    """
    M = 0.5 * cov.hbar * np.linalg.inv(require_spd(cov.sigma, "sigma"))
    return EllipsoidBody(Q=symmetrize(M), hbar=cov.hbar, space="z")


def robertson_schrodinger_check(cov):
    """Per-degree margins sxx_j spp_j - sxp_j^2 - hbar^2/4 (>= 0 when quantum)."""
    n = cov.n
    xx = np.diagonal(cov.xx)
    pp = np.diagonal(cov.pp)
    xp = np.diagonal(cov.xp)
    return xx * pp - xp**2 - cov.hbar**2 / 4.0


@dataclass(frozen=True)
class QuantumVerdict:
    """Outcome of the uncertainty test on a covariance matrix.

    passes is min symplectic eigenvalue >= hbar/2, equivalently the symplectic
    capacity of the covariance ellipsoid is >= pi hbar (both are computed and
    cross-checked).  When the test passes, `inscribed_blob` is a quantum blob
    inside the covariance ellipsoid built from the Williamson frame;
    `blob_unique` flags the boundary case capacity = pi hbar where that blob
    is the only one.  For a covariance that is not positive definite, passes
    is False and the spectral fields are NaN with `min_eigenvalue` as the
    diagnostic.
    """

    passes: bool
    min_symplectic_eigenvalue: float
    capacity_of_cov_ellipsoid: float
    rs_margins: np.ndarray
    min_eigenvalue: float
    inscribed_blob: object = None
    blob_unique: bool = False


def quantum_condition_check(cov, tol=1e-9):
    """Test Sigma + (i hbar/2) J >= 0 via the symplectic spectrum of Sigma."""
    from .blobs import QuantumBlob  # deferred: blobs imports this module

    hbar = cov.hbar
    rs = robertson_schrodinger_check(cov)
    w = np.linalg.eigvalsh(cov.sigma)
    if w[0] <= 0.0:
        return QuantumVerdict(passes=False, min_symplectic_eigenvalue=np.nan,
                              capacity_of_cov_ellipsoid=np.nan, rs_margins=rs,
                              min_eigenvalue=float(w[0]))
    lam = symplectic_eigenvalues(cov.sigma)
    lam_min = float(lam[-1])
    passes_spec = lam_min >= hbar / 2.0 - tol
    cap = capacities.ellipsoid_capacity(covariance_ellipsoid(cov)).value
    passes_cap = cap >= np.pi * hbar - tol * 2.0 * np.pi
    if passes_spec != passes_cap:
        raise InternalConsistencyError(
            f"spectral test ({lam_min:.12g} vs {hbar / 2}) and capacity test "
            f"({cap:.12g} vs {np.pi * hbar:.12g}) disagree")
    blob = None
    unique = False
    if passes_spec:
        M = 0.5 * hbar * np.linalg.inv(cov.sigma)
        frame = williamson(symmetrize(M))
        S = frame.S
        G = np.linalg.inv(S @ S.T)
        blob = QuantumBlob(G=symmetrize(G), hbar=hbar)
        unique = bool(abs(cap - np.pi * hbar) <= tol * np.pi * hbar)
    return QuantumVerdict(passes=passes_spec,
                          min_symplectic_eigenvalue=lam_min,
                          capacity_of_cov_ellipsoid=float(cap),
                          rs_margins=rs,
                          min_eigenvalue=float(w[0]),
                          inscribed_blob=blob,
                          blob_unique=unique)


@dataclass(frozen=True)
class Marginal:
    """A centered normal marginal density with covariance `cov`."""

    cov: np.ndarray

    def density(self, points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.cov.shape[0]:
            pts = pts.T
        n = self.cov.shape[0]
        Ci = np.linalg.inv(self.cov)
        norm = 1.0 / np.sqrt((2.0 * np.pi) ** n * np.linalg.det(self.cov))
        quad = np.einsum("mi,ij,mj->m", pts, Ci, pts)
        out = norm * np.exp(-0.5 * quad)
        return out if out.size > 1 else float(out[0])


def marginals(state):
    """Position and momentum densities of |psi|^2; both centered normals."""
    cov = covariance(state)
    return Marginal(cov=cov.xx.copy()), Marginal(cov=cov.pp.copy())


def pauli_partners(sigma_xx, sigma_pp, hbar=1.0, tol=1e-12):
    """Pure-state covariances (n = 1) with the prescribed variances.

    Recovers the covariance(s) of Gaussian wavefunctions from the marginal
    variances alone: sigma_xp = +-sqrt(sigma_xx sigma_pp - hbar^2/4).  Below
    the Heisenberg floor there is no solution; at the floor the two partners
    coincide and a single covariance is returned.
    """
    sxx = float(sigma_xx)
    spp = float(sigma_pp)
    if sxx <= 0 or spp <= 0:
        raise DomainError("variances must be positive")
    disc = sxx * spp - hbar**2 / 4.0
    scale = max(1.0, sxx * spp)
    if disc < -tol * scale:
        raise DomainError(
            f"no pure Gaussian has sxx*spp = {sxx * spp:.12g} < hbar^2/4",
            discriminant=float(disc))
    disc = max(disc, 0.0)
    s = np.sqrt(disc)
    out = []
    for sign in (1.0, -1.0):
        sigma = np.array([[sxx, sign * s], [sign * s, spp]])
        out.append(CovarianceMatrix(sigma=sigma, hbar=hbar))
        if s <= tol * np.sqrt(scale):
            break  # the two partners coincide
    return out


def hermite_product_covariance(m, n, hbar=1.0):
    """Covariance of the n-fold product of Hermite eigenfunctions of order m."""
    if m < 0 or n < 1:
        raise DomainError("need m >= 0 and n >= 1")
    return CovarianceMatrix(sigma=hbar * (m + 0.5) * np.eye(2 * n), hbar=hbar)


@dataclass(frozen=True)
class Generator:
    """One metaplectic generator: Fourier, scaling by L, or quadratic phase P."""

    kind: str
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("fourier", "scaling", "quadratic_phase"):
            raise DomainError(f"unknown generator kind {self.kind!r}")
        if self.kind == "fourier":
            if self.matrix is not None:
                raise DomainError("the Fourier generator takes no matrix")
        else:
            if self.matrix is None:
                raise DomainError(f"generator {self.kind!r} needs a matrix")
            object.__setattr__(self, "matrix",
                               np.atleast_2d(np.asarray(self.matrix, dtype=float)))


def fourier_generator():
    return Generator(kind="fourier")


def scaling_generator(L):
    return Generator(kind="scaling", matrix=L)


def quadratic_phase_generator(P):
    return Generator(kind="quadratic_phase", matrix=P)


def generator_matrix(gen, n):
    """The symplectic matrix covered by the generator's metaplectic operator."""
    if gen.kind == "fourier":
        return symplectic_form(n)
    if gen.matrix.shape != (n, n):
        raise DimensionError(
            f"generator matrix is {gen.matrix.shape}, state needs ({n}, {n})")
    if gen.kind == "scaling":
        return scaling(gen.matrix)
    # multiplication by exp(-iPx.x/2hbar) covers [[I, 0], [-P, I]]
    return shear(-require_symmetric(gen.matrix, "P"))


def metaplectic_apply(state, gen):
    """Apply a metaplectic generator to a Gaussian state, dropping the phase.

    quadratic_phase(P) sends Y to Y + P; scaling(L) maps (W, Y) to
    (L^T W L, L^T Y L); fourier inverts the complex matrix W + iY.  The new
    covariance always equals S Sigma S^T for the covered symplectic S.
    """
    W, Y, hbar = state.W, state.Y, state.hbar
    if gen.kind == "quadratic_phase":
        P = require_symmetric(gen.matrix, "P")
        if P.shape != W.shape:
            raise DimensionError("P must match the state dimension")
        return GaussianState(W=W, Y=Y + P, hbar=hbar)
    if gen.kind == "scaling":
        L = gen.matrix
        if L.shape != W.shape:
            raise DimensionError("L must match the state dimension")
        if abs(np.linalg.det(L)) < 1e-300:
            raise DomainError("scaling generator needs an invertible L")
        return GaussianState(W=L.T @ W @ L, Y=L.T @ Y @ L, hbar=hbar)
    Minv = np.linalg.inv(W + 1j * Y)
    return GaussianState(W=symmetrize(Minv.real), Y=symmetrize(Minv.imag),
                         hbar=hbar)
