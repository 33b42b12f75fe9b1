"""Centered convex bodies and hbar-scaled polar duality.

Bodies live in position space (tag "x"), momentum space (tag "p"), or full
phase space (tag "z").  Two concrete families are supported:

* ellipsoids {u : Qu.u <= hbar} with Q symmetric positive definite;
* symmetric polytopes carrying both a vertex list and a halfspace list
  a_i.u <= 1 describing the same set.

The hbar-polar dual of X is X^h = {p : p.x <= hbar for all x in X}; for an
ellipsoid this swaps Q for Q^-1, for a polytope it swaps vertices with
(scaled) facet normals.
"""

import logging
from dataclasses import dataclass
from math import gamma

import numpy as np
from scipy.spatial import ConvexHull

from ._linalg import require_spd, spd_inv_sqrt, spd_power, symmetrize
from .errors import (DegenerateBodyError, DimensionError, DomainError,
                     InternalConsistencyError)

logger = logging.getLogger(__name__)

_DUAL_SPACE = {"x": "p", "p": "x"}


def _check_space(space):
    if space not in ("x", "p", "z"):
        raise DomainError(f"unknown space tag {space!r}, expected 'x', 'p' or 'z'")
    return space


@dataclass(frozen=True)
class EllipsoidBody:
    """Centered ellipsoid {u : Qu.u <= hbar}."""

    Q: np.ndarray
    hbar: float
    space: str = "x"

    def __post_init__(self):
        object.__setattr__(self, "Q", require_spd(self.Q, "Q"))
        if self.hbar <= 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        _check_space(self.space)

    @property
    def dim(self):
        return self.Q.shape[0]

    @property
    def kind(self):
        return "ellipsoid"


@dataclass(frozen=True)
class PolytopeBody:
    """Centered symmetric polytope with matching V- and H-representations.

    `vertices` is (m, n); `normals` is (k, n) and encodes a_i.u <= 1.  Both
    describe the same set: every vertex satisfies every halfspace, and every
    halfspace is tight at some vertex (validated at construction).
    """

    vertices: np.ndarray
    normals: np.ndarray
    hbar: float
    space: str = "x"

    def __post_init__(self):
        V = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        N = np.atleast_2d(np.asarray(self.normals, dtype=float))
        if V.shape[1] != N.shape[1]:
            raise DimensionError("vertex and normal dimensions disagree")
        if self.hbar <= 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        _check_space(self.space)
        object.__setattr__(self, "vertices", V)
        object.__setattr__(self, "normals", N)
        self._validate()

    def _validate(self, tol=1e-9):
        prods = self.vertices @ self.normals.T  # (m, k)
        worst = float(prods.max())
        if worst > 1.0 + tol:
            raise DegenerateBodyError(
                f"a vertex violates a halfspace by {worst - 1.0:.3e}")
        slack = 1.0 - prods.max(axis=0)
        if float(slack.max()) > tol:
            raise DegenerateBodyError(
                f"a halfspace is not supported by any vertex (gap {slack.max():.3e})")
        # central symmetry of the vertex set
        for v in self.vertices:
            d = np.min(np.linalg.norm(self.vertices + v, axis=1))
            if d > tol * max(1.0, float(np.linalg.norm(v))):
                raise DegenerateBodyError("vertex set is not symmetric about 0")

    @property
    def dim(self):
        return self.vertices.shape[1]

    @property
    def kind(self):
        return "polytope"


def ellipsoid(Q, hbar=1.0, space="x"):
    return EllipsoidBody(Q=np.asarray(Q, dtype=float), hbar=hbar, space=space)


def ball(n, hbar=1.0, space="x"):
    """The ball B^n(sqrt(hbar)) = {|u|^2 <= hbar}."""
    return ellipsoid(np.eye(n), hbar=hbar, space=space)


def _hull_reps(points):
    """Extreme points and offset-1 halfspaces of conv(points) via qhull."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n = points.shape[1]
    if n == 1:
        a = float(np.max(np.abs(points)))
        if a <= 0:
            raise DegenerateBodyError("interval has zero length")
        return np.array([[-a], [a]]), np.array([[1.0 / a], [-1.0 / a]])
    try:
        hull = ConvexHull(points, qhull_options="Qt")
    except Exception as exc:  # qhull raises on flat input
        raise DegenerateBodyError(f"vertex set is degenerate: {exc}") from exc
    verts = points[hull.vertices]
    # hull.equations rows are [a, d] with a.u + d <= 0; origin interior => d < 0
    eqs = hull.equations
    offsets = -eqs[:, -1]
    if np.any(offsets <= 1e-12):
        raise DegenerateBodyError("origin is not interior to the polytope")
    normals = eqs[:, :-1] / offsets[:, None]
    # drop duplicated facets (qhull triangulation repeats hyperplanes)
    keep = []
    for i, a in enumerate(normals):
        if all(np.linalg.norm(a - normals[j]) > 1e-12 for j in keep):
            keep.append(i)
    return verts, normals[keep]


def polytope_from_vertices(vertices, hbar=1.0, space="x"):
    """Symmetric polytope conv(vertices); the halfspace list is derived."""
    V, N = _hull_reps(vertices)
    return PolytopeBody(vertices=V, normals=N, hbar=hbar, space=space)


def interval(half_width, hbar=1.0, space="x"):
    """The 1-dimensional body [-half_width, half_width]."""
    if half_width <= 0:
        raise DomainError("half_width must be positive")
    return polytope_from_vertices([[-half_width], [half_width]], hbar, space)


def box(half_widths, hbar=1.0, space="x"):
    """Axis-aligned box with the given (n,) half widths."""
    w = np.atleast_1d(np.asarray(half_widths, dtype=float))
    n = w.size
    if np.any(w <= 0):
        raise DomainError("half widths must be positive")
    corners = np.array(np.meshgrid(*[[-1.0, 1.0]] * n)).reshape(n, -1).T * w
    return polytope_from_vertices(corners, hbar, space)


def support_function(body, direction):
    """h_K(d) = max {d.u : u in K}."""
    d = np.asarray(direction, dtype=float).reshape(-1)
    if d.size != body.dim:
        raise DimensionError(
            f"direction has dimension {d.size}, body has {body.dim}")
    if isinstance(body, EllipsoidBody):
        Qi = np.linalg.inv(body.Q)
        return float(np.sqrt(body.hbar * d @ Qi @ d))
    return float(np.max(body.vertices @ d))


def volume(body):
    """Exact volume: closed form for ellipsoids, origin-fan sum for polytopes."""
    n = body.dim
    if isinstance(body, EllipsoidBody):
        unit = np.pi ** (n / 2) / gamma(n / 2 + 1)
        return float(unit * body.hbar ** (n / 2) / np.sqrt(np.linalg.det(body.Q)))
    if n == 1:
        return float(body.vertices.max() - body.vertices.min())
    if n > 4:
        raise DomainError(f"exact polytope volume supported for n <= 4, got {n}")
    hull = ConvexHull(body.vertices, qhull_options="Qt")
    total = 0.0
    pts = hull.points
    for simplex in hull.simplices:
        total += abs(np.linalg.det(pts[simplex]))
    return float(total / _factorial(n))


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def polar_dual(body):
    """hbar-polar dual X^h = {p : p.x <= hbar on X}; flips the space tag."""
    if body.space == "z":
        raise DomainError("polar duality is defined between 'x' and 'p' spaces")
    new_space = _DUAL_SPACE[body.space]
    if isinstance(body, EllipsoidBody):
        return EllipsoidBody(Q=np.linalg.inv(body.Q), hbar=body.hbar,
                             space=new_space)
    # vertices <- hbar * facet normals, halfspaces <- vertices / hbar
    return PolytopeBody(vertices=body.hbar * body.normals,
                        normals=body.vertices / body.hbar,
                        hbar=body.hbar, space=new_space)


def linear_image(body, L):
    """The body L(K) for invertible L; halfspaces map by the inverse transpose."""
    L = np.asarray(L, dtype=float)
    if L.shape != (body.dim, body.dim):
        raise DimensionError(f"L must be {body.dim} x {body.dim}")
    Li = np.linalg.inv(L)
    if isinstance(body, EllipsoidBody):
        return EllipsoidBody(Q=symmetrize(Li.T @ body.Q @ Li), hbar=body.hbar,
                             space=body.space)
    return PolytopeBody(vertices=body.vertices @ L.T,
                        normals=body.normals @ Li,
                        hbar=body.hbar, space=body.space)


def scale_body(body, lam):
    """The dilate lam * K."""
    if lam <= 0:
        raise DomainError("scale factor must be positive")
    if isinstance(body, EllipsoidBody):
        return EllipsoidBody(Q=body.Q / lam**2, hbar=body.hbar, space=body.space)
    return PolytopeBody(vertices=lam * body.vertices,
                        normals=body.normals / lam,
                        hbar=body.hbar, space=body.space)


@dataclass(frozen=True)
class InclusionResult:
    """Containment verdict with the worst relative margin and a witness.

    `margin` is min over tested directions of (h_outer - h_inner)/h_outer; a
    negative margin beyond tolerance means the inner body pokes out, and
    `witness` is then a unit direction along which it does.
    """

    ok: bool
    margin: float
    witness: np.ndarray | None

    def __bool__(self):
        return self.ok


def _unit(v):
    nrm = np.linalg.norm(v)
    return v / nrm if nrm > 0 else v


def contains(outer, inner, tol=1e-9):
    """Whether outer contains inner (same space tag and dimension)."""
    if outer.dim != inner.dim:
        raise DimensionError(
            f"dimension mismatch: outer {outer.dim}, inner {inner.dim}")
    if outer.space != inner.space:
        raise DomainError(
            f"space mismatch: outer {outer.space!r}, inner {inner.space!r}")
    if isinstance(outer, EllipsoidBody) and isinstance(inner, EllipsoidBody):
        if abs(outer.hbar - inner.hbar) > 1e-12 * max(outer.hbar, inner.hbar):
            # rescale inner's Q to outer's hbar so the Loewner test applies
            inner = EllipsoidBody(Q=inner.Q * (outer.hbar / inner.hbar),
                                  hbar=outer.hbar, space=inner.space)
        Wo = spd_inv_sqrt(outer.Q, "outer Q")
        Wh = symmetrize(Wo @ inner.Q @ Wo)
        w, V = np.linalg.eigh(Wh)
        margin = float(w[0] - 1.0)
        ok = margin >= -tol
        witness = None if ok else _unit(Wo @ V[:, 0])
        return InclusionResult(ok=ok, margin=margin, witness=witness)
    if isinstance(inner, PolytopeBody):
        # convexity: vertex membership suffices
        if isinstance(outer, EllipsoidBody):
            quad = np.einsum("mi,ij,mj->m", inner.vertices, outer.Q,
                             inner.vertices) / outer.hbar
            reach = np.sqrt(np.maximum(quad, 0.0))  # support-scale overshoot
        else:
            reach = (inner.vertices @ outer.normals.T).max(axis=1)
        worst = int(np.argmax(reach))
        margin = float(1.0 - reach[worst])
        ok = margin >= -tol
        witness = None if ok else _unit(inner.vertices[worst])
        return InclusionResult(ok=ok, margin=margin, witness=witness)
    # ellipsoid inside polytope: support test at each facet
    Qi = np.linalg.inv(inner.Q)
    sup = np.sqrt(inner.hbar * np.einsum("ki,ij,kj->k", outer.normals, Qi,
                                         outer.normals))
    worst = int(np.argmax(sup))
    margin = float(1.0 - sup[worst])
    ok = margin >= -tol
    if ok:
        return InclusionResult(ok=True, margin=margin, witness=None)
    a = outer.normals[worst]
    touch = inner.hbar * (Qi @ a) / sup[worst]  # extreme point of inner along a
    return InclusionResult(ok=False, margin=margin, witness=_unit(touch))


@dataclass(frozen=True)
class QuantumPairReport:
    """Result of the quantum-pair test X^h subset P."""

    holds: bool
    lambda_max: float
    saturated: bool
    witness: np.ndarray | None


def _lambda_max_bisect(dual, P, tol=1e-10):
    lo, hi = 0.0, 1.0
    for _ in range(200):
        if not contains(P, scale_body(dual, hi), tol=1e-12):
            break
        lo, hi = hi, hi * 2.0
    else:
        raise DomainError("lambda search did not bracket; P looks unbounded")
    while hi - lo > tol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if contains(P, scale_body(dual, mid), tol=1e-12):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _lambda_max_exact(dual, P):
    """Largest factor keeping `lam * dual` inside P, in closed form.

    Ellipsoid against ellipsoid reduces to a top eigenvalue, polytopes
    contribute linear functionals over finitely many vertices or facets,
    so every kind combination is exact.
    """
    hbar = P.hbar
    if isinstance(dual, EllipsoidBody) and isinstance(P, EllipsoidBody):
        root = spd_power(dual.Q, -0.5, "dual.Q")
        top = float(np.linalg.eigvalsh(symmetrize(root @ P.Q @ root))[-1])
        return 1.0 / np.sqrt(top)
    if isinstance(dual, PolytopeBody) and isinstance(P, PolytopeBody):
        gram = P.normals @ dual.vertices.T
        return 1.0 / float(np.max(gram))
    if isinstance(dual, EllipsoidBody):
        Dinv = np.linalg.inv(dual.Q)
        reach = np.einsum("ij,jk,ik->i", P.normals, Dinv, P.normals)
        return 1.0 / float(np.sqrt(hbar * np.max(reach)))
    quad = np.einsum("ij,jk,ik->i", dual.vertices, P.Q, dual.vertices)
    return float(np.sqrt(hbar / np.max(quad)))


def quantum_pair_check(X, P, tol=1e-9):
    """Check whether (X, P) is a quantum pair and how far it can be rescaled.

    X must carry tag "x" and P tag "p", with equal hbar and dimension.  The
    pair holds when X^h is contained in P; lambda_max is the largest factor
    with lambda * X^h still inside P (exact for every combination of
    ellipsoids and polytopes); saturated means X^h = P within tolerance.
    When the pair fails, `witness` is a unit direction along which X^h
    leaves P.
    """
    if X.space != "x" or P.space != "p":
        raise DomainError(
            f"expected spaces ('x', 'p'), got ({X.space!r}, {P.space!r})")
    if X.dim != P.dim:
        raise DimensionError(f"dimension mismatch: {X.dim} vs {P.dim}")
    if abs(X.hbar - P.hbar) > 1e-12 * max(X.hbar, P.hbar):
        raise DomainError(f"hbar mismatch: {X.hbar} vs {P.hbar}")
    dual = polar_dual(X)
    lam = _lambda_max_exact(dual, P)
    inc = contains(P, dual, tol=tol)
    holds = lam >= 1.0 - tol
    if holds != inc.ok:
        # the two routes can only split inside the tolerance band
        holds = inc.ok
    saturated = bool(inc and contains(dual, P, tol=tol))
    return QuantumPairReport(holds=holds, lambda_max=float(lam),
                             saturated=saturated, witness=inc.witness)


@dataclass(frozen=True)
class MahlerReport:
    """Volume product record for a body and its hbar-polar dual."""

    vol_body: float
    vol_dual: float
    mahler: float
    santalo_bound: float
    mahler_bound: float


def mahler_volume(X, tol=1e-8):
    """Mahler volume v(X) = Vol(X) Vol(X^h) with its two classical bounds.

    The upper (Blaschke-Santalo) bound (pi hbar)^n / Gamma(n/2+1)^2 is
    asserted for every input; the lower bound (4 hbar)^n / n! is asserted
    only for n <= 2, where it is proven, and logged otherwise.
    """
    vol_body = volume(X)
    vol_dual = volume(polar_dual(X))
    mahler = vol_body * vol_dual
    n = X.dim
    santalo = (np.pi * X.hbar) ** n / gamma(n / 2 + 1) ** 2
    lower = (4.0 * X.hbar) ** n / _factorial(n)
    if mahler > santalo * (1.0 + tol):
        raise InternalConsistencyError(
            f"volume product {mahler:.12g} exceeds the Santalo bound {santalo:.12g}")
    if mahler < lower * (1.0 - tol):
        if n <= 2:
            raise InternalConsistencyError(
                f"volume product {mahler:.12g} under the n<=2 lower bound {lower:.12g}")
        logger.warning("volume product %.12g below the conjectured bound %.12g (n=%d)",
                       mahler, lower, n)
    return MahlerReport(vol_body=float(vol_body), vol_dual=float(vol_dual),
                        mahler=float(mahler), santalo_bound=float(santalo),
                        mahler_bound=float(lower))
