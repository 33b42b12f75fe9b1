"""Symplectic capacities of phase-space ellipsoids and planar bodies.

For an ellipsoid {z : Mz.z <= hbar} the Gromov width / Hofer-Zehnder
capacity is pi hbar / lambda_max(M) with lambda_max the largest symplectic
eigenvalue; for any planar convex body (n = 1) every symplectic capacity
equals the area.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (DimensionError, DomainError, InternalConsistencyError,
                     NotQuantumPairError)
from .bodies import (EllipsoidBody, polytope_from_vertices,
                     quantum_pair_check, support_function)
from .symplectic import require_symplectic, symplectic_eigenvalues


@dataclass(frozen=True)
class CapacityValue:
    """A capacity together with the formula that produced it."""

    value: float
    method: str
    hbar: float


def ellipsoid_capacity(E):
    """Capacity pi hbar / lambda_max^sigma of a phase-space ellipsoid."""
    if not isinstance(E, EllipsoidBody):
        raise DomainError("ellipsoid_capacity expects an ellipsoid body")
    if E.dim % 2 != 0:
        raise DimensionError(f"phase-space ellipsoid must have even dimension, "
                             f"got {E.dim}")
    lam = symplectic_eigenvalues(E.Q)
    return CapacityValue(value=float(np.pi * E.hbar / lam[0]),
                         method="ellipsoid_formula", hbar=E.hbar)


def _polygon_area(vertices):
    """Shoelace area of the convex hull ordering of planar points."""
    pts = np.asarray(vertices, dtype=float)
    order = np.argsort(np.arctan2(pts[:, 1], pts[:, 0]))
    pts = pts[order]
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))


def hz_planar(body):
    """Capacity of a planar (n = 1) convex body: its area."""
    if body.dim != 2:
        raise DimensionError(f"planar capacity needs dimension 2, got {body.dim}")
    if isinstance(body, EllipsoidBody):
        area = np.pi * body.hbar / np.sqrt(np.linalg.det(body.Q))
    else:
        area = _polygon_area(body.vertices)
    return CapacityValue(value=float(area), method="planar_area", hbar=body.hbar)


def hz_product_pair(X, P, tol=1e-9):
    """Capacity 4 lambda_max hbar of the product X x P of a quantum pair.

    Raises a domain error when (X, P) is not a quantum pair.  In the
    saturated case the value is exactly 4 hbar.  For n = 1 the formula is
    cross-checked against the planar area of the actual product rectangle.
    """
    report = quantum_pair_check(X, P, tol=tol)
    if not report.holds:
        raise NotQuantumPairError("(X, P) is not a quantum pair",
                                  lambda_max=report.lambda_max,
                                  witness=None if report.witness is None
                                  else report.witness.tolist())
    hbar = X.hbar
    value = 4.0 * hbar if report.saturated else 4.0 * report.lambda_max * hbar
    if X.dim == 1:
        a = support_function(X, np.array([1.0]))
        b = support_function(P, np.array([1.0]))
        rect = polytope_from_vertices(
            [[a, b], [-a, b], [-a, -b], [a, -b]], hbar=hbar, space="z")
        area = hz_planar(rect).value
        if abs(area - 4.0 * report.lambda_max * hbar) > 1e-9 * max(1.0, area):
            raise InternalConsistencyError(
                f"product formula {4.0 * report.lambda_max * hbar:.12g} and planar "
                f"area {area:.12g} disagree")
    return CapacityValue(value=float(value), method="product_formula", hbar=hbar)


@dataclass(frozen=True)
class ProjectionAreaReport:
    """Area of one symplectic-plane shadow of a transformed ball."""

    area: float
    lower_bound: float
    passes: bool
    plane: int


def projection_area_check(S, radius, j, tol=1e-9):
    """Shadow area of S(B^2n(radius)) on the plane of (x_j, p_j), 1-based j.

    The projection is an ellipse of area pi radius^2 sqrt(det T) where T is
    the 2 x 2 submatrix of S S^T picked out by coordinates j and n + j; the
    non-squeezing bound states area >= pi radius^2, with equality reached by
    block-diagonal S.
    """
    S = require_symplectic(S, name="S")
    n = S.shape[0] // 2
    if not 1 <= j <= n:
        raise DimensionError(f"plane index must satisfy 1 <= j <= {n}, got {j}")
    if radius <= 0:
        raise DomainError("radius must be positive")
    idx = [j - 1, n + j - 1]
    T = (S @ S.T)[np.ix_(idx, idx)]
    area = float(np.pi * radius**2 * np.sqrt(np.linalg.det(T)))
    bound = float(np.pi * radius**2)
    return ProjectionAreaReport(area=area, lower_bound=bound,
                                passes=bool(area >= bound - tol * bound),
                                plane=int(j))
