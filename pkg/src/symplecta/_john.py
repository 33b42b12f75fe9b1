"""Maximal-volume centered inscribed ellipsoid by determinant maximization."""

import numpy as np
import cvxpy as cp

from ._linalg import symmetrize
from .errors import ConvergenceError


def max_volume_inscribed_ellipsoid(normals, hbar, tol=1e-8):
    """Shape matrix M of the largest ellipsoid {z.Mz <= hbar} in {a_i.z <= 1}.

    Maximizes log det of Z = hbar M^-1 subject to the support conditions
    a_i.Z a_i <= 1 (linear in Z), a determinant-maximization problem solved
    by an interior-point conic solver.  Deterministic for fixed input.
    """
    normals = np.atleast_2d(np.asarray(normals, dtype=float))
    d = normals.shape[1]
    Z = cp.Variable((d, d), PSD=True)
    constraints = [cp.sum(cp.multiply(Z, np.outer(a, a))) <= 1.0
                   for a in normals]
    problem = cp.Problem(cp.Maximize(cp.log_det(Z)), constraints)
    try:
        problem.solve(solver=cp.CLARABEL)
    except cp.error.SolverError as exc:
        raise ConvergenceError(f"inscribed-ellipsoid solve failed: {exc}") from exc
    if problem.status not in ("optimal", "optimal_inaccurate"):
        raise ConvergenceError(
            f"inscribed-ellipsoid solve ended with status {problem.status!r}")
    Zv = symmetrize(np.asarray(Z.value, dtype=float))
    # feasibility residual check against the requested tolerance
    worst = max(float(a @ Zv @ a) for a in normals) - 1.0
    if worst > 10.0 * tol:
        raise ConvergenceError(
            f"inscribed ellipsoid violates a facet by {worst:.3e}")
    return symmetrize(hbar * np.linalg.inv(Zv))
