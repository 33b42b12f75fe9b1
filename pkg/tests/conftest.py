import numpy as np


def rand_spd(rng, n, lo=0.4, hi=2.5):
    """Random SPD matrix with eigenvalues drawn from [lo, hi]."""
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eigs = rng.uniform(lo, hi, size=n)
    return (Q * eigs) @ Q.T


def rand_symmetric_points(rng, k, n, radius=2.0):
    """2k points symmetric about the origin, spread over a sphere shell."""
    pts = rng.standard_normal((k, n))
    pts *= (radius * rng.uniform(0.5, 1.0, size=(k, 1))
            / np.linalg.norm(pts, axis=1, keepdims=True))
    return np.vstack([pts, -pts])


def gauge_by_linprog(vertices, u):
    """Minkowski gauge of conv(vertices) at u via a small LP.

    Solves max s subject to s*u in conv(vertices); the gauge is 1/s.
    Serves as an implementation-independent oracle for polytope duals.
    """
    from scipy.optimize import linprog

    m, n = vertices.shape
    # variables: (lambda_1..lambda_m, s); maximize s
    c = np.zeros(m + 1)
    c[-1] = -1.0
    A_eq = np.zeros((n + 1, m + 1))
    A_eq[:n, :m] = vertices.T
    A_eq[:n, -1] = -np.asarray(u, dtype=float)
    A_eq[n, :m] = 1.0
    b_eq = np.zeros(n + 1)
    b_eq[n] = 1.0
    bounds = [(0, None)] * m + [(None, None)]
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
    assert res.status == 0, res.message
    return 1.0 / res.x[-1]
