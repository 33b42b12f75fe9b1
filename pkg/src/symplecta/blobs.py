"""Quantum blobs: symplectic images of the phase-space ball B^2n(sqrt(hbar)).

A blob is stored through the symmetric positive definite symplectic matrix G
with blob = {z : Gz.z <= hbar}; for the image of the ball under a symplectic
S one has G = (S S^T)^-1.  Every blob has det G = 1, all symplectic
eigenvalues equal to 1, and volume (1/n!) (h/2)^n with h = 2 pi hbar.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import (max_abs, require_spd, spd_inv_sqrt, spd_power,
                      symmetrize)
from .errors import (DimensionError, DomainError, NotQuantumPairError,
                     NotSymplecticError)
from .bodies import (EllipsoidBody, InclusionResult, PolytopeBody, contains,
                     ellipsoid, quantum_pair_check)
from .states import GaussianState, wigner_matrix
from .symplectic import (is_symplectic, pre_iwasawa, require_symplectic,
                         scaling, shear)
from ._john import max_volume_inscribed_ellipsoid


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


@dataclass(frozen=True)
class QuantumBlob:
    """The set {z : Gz.z <= hbar} for a symplectic positive definite G."""

    G: np.ndarray
    hbar: float = 1.0
    generator: np.ndarray | None = None

    def __post_init__(self):
        G = require_spd(self.G, "G")
        if self.hbar <= 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        # the residual of G^T J G - J grows like ||G||^2 in floating point
        scale = max(1.0, float(np.max(np.abs(G))) ** 2)
        check = is_symplectic(G, tol=1e-9 * scale)
        if not check:
            raise NotSymplecticError(
                f"G is not symplectic (residual {check.residual:.3e})",
                residual=check.residual)
        object.__setattr__(self, "G", G)

    @property
    def n(self):
        return self.G.shape[0] // 2

    def as_ellipsoid(self):
        return EllipsoidBody(Q=self.G, hbar=self.hbar, space="z")

    def volume(self):
        n = self.n
        det = np.linalg.det(self.G)
        return float(np.pi**n * self.hbar**n / (_factorial(n) * np.sqrt(det)))


def blob_from_symplectic(S, hbar=1.0, tol=1e-9):
    """The blob S(B^2n(sqrt(hbar))), i.e. G = (S S^T)^-1."""
    S = require_symplectic(S, tol, "S")
    G = np.linalg.inv(S @ S.T)
    return QuantumBlob(G=symmetrize(G), hbar=hbar, generator=S.copy())


def blob_generator(blob):
    """A symplectic S with S(B^2n) equal to the blob; G^-1/2 is the canonical one."""
    if blob.generator is not None:
        return blob.generator
    return spd_power(blob.G, -0.5, "G")


def blob_normal_form(blob):
    """The unique (P, L) with blob = shear(P) scaling(L) (B^2n(sqrt(hbar))).

    Independent of which generator produced the blob: the rotation factor of
    the pre-Iwasawa factorization acts trivially on the ball.
    """
    factors = pre_iwasawa(blob_generator(blob))
    return factors.P, factors.L


@dataclass(frozen=True)
class BlobProjections:
    """Orthogonal projections of a blob onto position and momentum space."""

    X: EllipsoidBody
    P: EllipsoidBody
    saturated: bool


def project_blob(blob, tol=1e-9):
    """Project a blob onto the x- and p-coordinate planes.

    The projections are the ellipsoids given by the Schur complements
    G/G_PP (an x-body) and G/G_XX (a p-body).  `saturated` means the
    off-diagonal block vanishes, which happens exactly when the projections
    form a saturated quantum pair (X^h equals P).
    """
    n = blob.n
    G = blob.G
    Gxx, Gxp = G[:n, :n], G[:n, n:]
    Gpx, Gpp = G[n:, :n], G[n:, n:]
    MX = symmetrize(Gxx - Gxp @ np.linalg.inv(Gpp) @ Gpx)
    MP = symmetrize(Gpp - Gpx @ np.linalg.inv(Gxx) @ Gxp)
    X = EllipsoidBody(Q=MX, hbar=blob.hbar, space="x")
    P = EllipsoidBody(Q=MP, hbar=blob.hbar, space="p")
    scale = max(1.0, max_abs(G))
    saturated = bool(max_abs(Gxp) <= tol * scale)
    return BlobProjections(X=X, P=P, saturated=saturated)


@dataclass(frozen=True)
class JohnEllipsoidResult:
    """Largest-volume inscribed ellipsoid of a phase-space product body."""

    ellipsoid: EllipsoidBody
    is_blob: bool
    symplectic_residual: float


def john_of_pair(A, B, hbar=1.0):
    """John ellipsoid of the product {Ax.x <= hbar} x {Bp.p <= hbar}.

    Equals {z : diag(A, B) z.z <= hbar}; it is a quantum blob exactly when
    AB = I, i.e. when the block matrix is symplectic.
    """
    A = require_spd(A, "A")
    B = require_spd(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"A is {A.shape} but B is {B.shape}")
    n = A.shape[0]
    M = np.zeros((2 * n, 2 * n))
    M[:n, :n] = A
    M[n:, n:] = B
    check = is_symplectic(M, tol=1e-9)
    return JohnEllipsoidResult(
        ellipsoid=EllipsoidBody(Q=M, hbar=hbar, space="z"),
        is_blob=bool(check),
        symplectic_residual=check.residual)


def john_of_polytope_product(X, P, tol=1e-8):
    """John ellipsoid of a product of symmetric polytopes (n <= 2 each).

    Solves the maximal-volume centered inscribed ellipsoid problem on the
    stacked facet constraints of X x P by determinant maximization.
    """
    if not isinstance(X, PolytopeBody) or not isinstance(P, PolytopeBody):
        raise DomainError("both factors must be polytopes")
    if X.space != "x" or P.space != "p":
        raise DomainError(
            f"expected spaces ('x', 'p'), got ({X.space!r}, {P.space!r})")
    if X.dim != P.dim:
        raise DimensionError(f"dimension mismatch: {X.dim} vs {P.dim}")
    if X.dim > 2:
        raise DomainError("polytope products are supported for n <= 2")
    if abs(X.hbar - P.hbar) > 1e-12 * max(X.hbar, P.hbar):
        raise DomainError(f"hbar mismatch: {X.hbar} vs {P.hbar}")
    n = X.dim
    left = np.hstack([X.normals, np.zeros_like(X.normals)])
    right = np.hstack([np.zeros_like(P.normals), P.normals])
    normals = np.vstack([left, right])
    M = max_volume_inscribed_ellipsoid(normals, X.hbar, tol=tol)
    return EllipsoidBody(Q=M, hbar=X.hbar, space="z")


@dataclass(frozen=True)
class RescaledBlobResult:
    """A member of the rescaled-blob family with its containment certificate."""

    blob: QuantumBlob
    contained: InclusionResult


def rescaled_blob_family(A, B, lam, hbar=1.0, tol=1e-9):
    """Blobs between John(X x X^h) and John(X x P) for a quantum pair.

    For 1 <= lam <= lambda_max the diagonal rescaling diag(I/lam, lam I) of
    the blob John(X x X^h) stays a quantum blob contained in John(X x P).
    lam = "AB" selects the scaling(A^-1/2 B^-1/2) variant instead.  Values
    outside [1, lambda_max] raise a domain error carrying lambda_max.
    """
    A = require_spd(A, "A")
    B = require_spd(B, "B")
    X = ellipsoid(A, hbar, "x")
    Pb = ellipsoid(B, hbar, "p")
    report = quantum_pair_check(X, Pb, tol=tol)
    if not report.holds:
        raise NotQuantumPairError(
            "(X, P) is not a quantum pair", lambda_max=report.lambda_max)
    n = A.shape[0]
    root_inv = spd_inv_sqrt(A, "A")
    S_base = scaling(root_inv)  # blob John(X x X^h)
    if isinstance(lam, str):
        if lam != "AB":
            raise DomainError(f"lam must be a number or 'AB', got {lam!r}")
        T = scaling(root_inv @ spd_inv_sqrt(B, "B"))
    else:
        lam = float(lam)
        if lam < 1.0 - tol or lam > report.lambda_max + tol:
            raise DomainError(
                f"lam must lie in [1, {report.lambda_max:.12g}]",
                lambda_max=report.lambda_max)
        T = scaling(lam * np.eye(n))  # = diag(I/lam, lam I)
    blob = blob_from_symplectic(T @ S_base, hbar)
    outer = john_of_pair(A, B, hbar).ellipsoid
    inc = contains(outer, blob.as_ellipsoid(), tol=tol)
    return RescaledBlobResult(blob=blob, contained=inc)


def blob_to_gaussian(blob):
    """The Gaussian state whose Wigner ellipsoid is the blob.

    From the normal form (P, L): W = L^2 and Y = -P.
    """
    P, L = blob_normal_form(blob)
    return GaussianState(W=L @ L, Y=-P, hbar=blob.hbar)


def gaussian_to_blob(state):
    """The Wigner ellipsoid of a Gaussian state as a quantum blob."""
    G = wigner_matrix(state)
    S = shear(-state.Y) @ scaling(spd_power(state.W, 0.5, "W"))
    return QuantumBlob(G=G, hbar=state.hbar, generator=S)
