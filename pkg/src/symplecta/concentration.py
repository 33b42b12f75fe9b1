"""hbar-scaled Fourier analysis and concentration/uncertainty checks (n = 1 grids).

The transform convention is

    (F psi)(p) = (2 pi hbar)^(-1/2) integral exp(-ipx/hbar) psi(x) dx,

under which the hbar-scaled Hermite functions are eigenfunctions with
eigenvalues (-i)^m.  Sampled functions live on uniform grids over [-L, L];
the transform is evaluated on the same grid by a chirp z-transform, which
computes the quadrature sum exactly.
"""

from dataclasses import dataclass
from math import factorial

import numpy as np
from scipy.signal import czt
from scipy.special import eval_hermite

from ._linalg import require_spd, symmetrize
from .errors import (DimensionError, DomainError, GridError,
                     InternalConsistencyError)
from .bodies import ellipsoid, quantum_pair_check

_BOUNDARY_CEILING = 1e-8


@dataclass(frozen=True)
class SampledFunction1D:
    """Complex samples on a uniform grid over [-half_width, half_width]."""

    values: np.ndarray
    half_width: float
    hbar: float = 1.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or v.size < 16:
            raise GridError("need a 1-d sample array with at least 16 points")
        if self.half_width <= 0 or self.hbar <= 0:
            raise DomainError("half_width and hbar must be positive")
        object.__setattr__(self, "values", v)

    @property
    def grid(self):
        return np.linspace(-self.half_width, self.half_width, self.values.size)

    @property
    def dx(self):
        return 2.0 * self.half_width / (self.values.size - 1)

    def l2_norm(self):
        return float(np.sqrt(np.trapezoid(np.abs(self.values) ** 2, dx=self.dx)))


def sampled_function(values, half_width, hbar=1.0, normalize=True):
    """Wrap raw samples; by default rescale to unit L2 norm."""
    f = SampledFunction1D(values=np.asarray(values, dtype=complex),
                          half_width=float(half_width), hbar=float(hbar))
    if normalize:
        nrm = f.l2_norm()
        if nrm <= 0:
            raise DomainError("cannot normalize the zero function")
        f = SampledFunction1D(values=f.values / nrm, half_width=f.half_width,
                              hbar=f.hbar)
    return f


def gaussian_function(w, y=0.0, hbar=1.0, half_width=None, num=4096):
    """Sampled psi_{w,y} for scalar w > 0, y real (n = 1).

    The default grid half width is 12 times the larger of the position and
    momentum scales of the state, so both the function and its transform
    decay below the boundary ceiling.
    """
    w = float(np.squeeze(np.asarray(w, dtype=float)))
    y = float(np.squeeze(np.asarray(y, dtype=float)))
    if w <= 0:
        raise DomainError("w must be positive")
    if hbar <= 0:
        raise DomainError(f"hbar must be positive, got {hbar}")
    if half_width is None:
        scale_x = np.sqrt(hbar / w)
        scale_p = np.sqrt(hbar * (w**2 + y**2) / w)
        half_width = 12.0 * max(scale_x, scale_p, np.sqrt(hbar))
    x = np.linspace(-half_width, half_width, num)
    vals = (w / (np.pi * hbar)) ** 0.25 * np.exp(-(w + 1j * y) * x**2
                                                 / (2.0 * hbar))
    return sampled_function(vals, half_width, hbar, normalize=True)


def hermite_function(m, hbar=1.0, half_width=None, num=4096):
    """The m-th hbar-scaled Hermite function, unit L2 norm."""
    if m < 0:
        raise DomainError("m must be >= 0")
    if hbar <= 0:
        raise DomainError(f"hbar must be positive, got {hbar}")
    if half_width is None:
        half_width = 12.0 * np.sqrt(hbar * (m + 1.0))
    x = np.linspace(-half_width, half_width, num)
    vals = ((np.pi * hbar) ** -0.25 / np.sqrt(2.0**m * factorial(m))
            * eval_hermite(m, x / np.sqrt(hbar)) * np.exp(-x**2 / (2.0 * hbar)))
    return sampled_function(vals, half_width, hbar, normalize=True)


def _boundary_guard(f, what):
    edge = max(abs(f.values[0]), abs(f.values[-1]))
    if edge > _BOUNDARY_CEILING:
        raise GridError(
            f"{what}: samples do not decay at the grid boundary "
            f"(edge magnitude {edge:.3e}); enlarge the grid")


def hbar_fourier(f):
    """hbar-scaled Fourier transform, sampled on the same grid.

    Evaluates the trapezoid quadrature of the transform integral at every
    output frequency exactly, via a chirp z-transform (the output grid is
    not commensurate with FFT frequencies).
    """
    _boundary_guard(f, "hbar_fourier")
    N = f.values.size
    dx = f.dx
    x0 = -f.half_width
    p0 = x0
    dp = dx
    hbar = f.hbar
    k = np.arange(N)
    w = np.exp(-1j * dp * dx / hbar)
    phi = f.values * np.exp(-1j * p0 * dx * k / hbar)
    X = czt(phi, m=N, w=w, a=1.0 + 0.0j)
    pref = (dx / np.sqrt(2.0 * np.pi * hbar)
            * np.exp(-1j * p0 * x0 / hbar)
            * np.exp(-1j * k * dp * x0 / hbar))
    vals = pref * X
    # trapezoid endpoints carry half weight; the guard makes this negligible
    return SampledFunction1D(values=vals, half_width=f.half_width, hbar=hbar)


def _interval_integral(x, g, a):
    """integral of sampled g over [-a, a] by corrected trapezoid.

    Trapezoid over the interior grid points with the Euler-Maclaurin
    first-derivative end correction, plus cubic-interpolated partial cells
    at the interval ends; O(dx^4) accurate for smooth g.
    """
    dx = x[1] - x[0]
    x0 = x[0]
    k0 = int(np.ceil((-a - x0) / dx - 1e-12))
    k1 = int(np.floor((a - x0) / dx + 1e-12))
    k0 = max(k0, 2)
    k1 = min(k1, x.size - 3)
    if k1 <= k0:
        # interval narrower than a few cells: integrate a local cubic
        mid = (x.size - 1) // 2
        c = np.polyfit(x[mid - 2:mid + 3] - x[mid], g[mid - 2:mid + 3], 3)
        Pint = np.polyint(c)
        return float(np.polyval(Pint, a - x[mid]) - np.polyval(Pint, -a - x[mid]))
    core = float(np.trapezoid(g[k0:k1 + 1], dx=dx))

    def deriv(k):
        return (g[k - 2] - 8.0 * g[k - 1] + 8.0 * g[k + 1] - g[k + 2]) / (12.0 * dx)

    core -= dx**2 / 12.0 * (deriv(k1) - deriv(k0))

    def partial(k, lo, hi):
        # integrate the local cubic through k-1..k+2; stay on its support
        lo = max(lo, x[k - 1])
        hi = min(hi, x[k + 2])
        if hi <= lo:
            return 0.0
        xs = x[k - 1:k + 3] - x[k]
        c = np.polyfit(xs, g[k - 1:k + 3], 3)
        Pint = np.polyint(c)
        return float(np.polyval(Pint, hi - x[k]) - np.polyval(Pint, lo - x[k]))

    return partial(k0, -a, x[k0]) + core + partial(k1, x[k1], a)


def concentration(f, half_width):
    """eps with ||psi restricted outside [-a, a]|| = eps, a = half_width.

    Defined through eps^2 = 1 - integral_{-a}^{a} |psi|^2; the result is
    clamped to [0, 1].  The interval must sit inside the sample grid.
    """
    a = float(half_width)
    if a < 0:
        raise DomainError("half_width must be >= 0")
    if a == 0.0:
        return 1.0
    if a > f.half_width + 1e-12:
        raise GridError(
            f"interval half width {a} exceeds the grid half width {f.half_width}")
    a = min(a, f.half_width)
    g = np.abs(f.values) ** 2
    inside = _interval_integral(f.grid, g, a)
    return float(np.sqrt(np.clip(1.0 - inside, 0.0, 1.0)))


@dataclass(frozen=True)
class DonohoStarkReport:
    """Volume test Vol(C_X x C_P) >= (2 pi hbar)^n (1 - eps_x - eps_p)^2."""

    eps_x: float
    eps_p: float
    lhs: float
    rhs: float
    consistent: bool
    vacuous: bool


def donoho_stark_check(eps_x, eps_p, cx_half_widths, cp_half_widths,
                       hbar=1.0, tol=1e-9):
    """Check the concentration volume bound for boxes C_X, C_P.

    The boxes are products of centered intervals given by their half widths.
    When eps_x + eps_p >= 1 the bound carries no information and `vacuous`
    is set (with `consistent` trivially true).
    """
    wx = np.atleast_1d(np.asarray(cx_half_widths, dtype=float))
    wp = np.atleast_1d(np.asarray(cp_half_widths, dtype=float))
    if wx.size != wp.size:
        raise DimensionError("C_X and C_P must have the same dimension")
    if np.any(wx <= 0) or np.any(wp <= 0):
        raise DomainError("box half widths must be positive")
    if not (0 <= eps_x <= 1 and 0 <= eps_p <= 1):
        raise DomainError("eps values must lie in [0, 1]")
    n = wx.size
    lhs = float(np.prod(2.0 * wx) * np.prod(2.0 * wp))
    defect = 1.0 - eps_x - eps_p
    vacuous = defect <= 0
    rhs = float((2.0 * np.pi * hbar) ** n * max(defect, 0.0) ** 2)
    consistent = bool(vacuous or lhs >= rhs - tol * max(1.0, rhs))
    return DonohoStarkReport(eps_x=float(eps_x), eps_p=float(eps_p), lhs=lhs,
                             rhs=rhs, consistent=consistent, vacuous=vacuous)


@dataclass(frozen=True)
class ConcentrationReport:
    """Measured concentration of a function/transform pair on given boxes."""

    eps_x: float
    eps_p: float
    cx_half_width: float
    cp_half_width: float
    ds: DonohoStarkReport


def concentration_report(f, cx_half_width, cp_half_width):
    """Measure eps_x, eps_p of f and its transform, then run the volume test."""
    eps_x = concentration(f, cx_half_width)
    eps_p = concentration(hbar_fourier(f), cp_half_width)
    ds = donoho_stark_check(eps_x, eps_p, [cx_half_width], [cp_half_width],
                            hbar=f.hbar)
    return ConcentrationReport(eps_x=eps_x, eps_p=eps_p,
                               cx_half_width=float(cx_half_width),
                               cp_half_width=float(cp_half_width), ds=ds)


@dataclass(frozen=True)
class PolarBoundReport:
    """The duality ceiling on the Donoho-Stark volume bound.

    lhs = (2 pi hbar)^n (1 - eps_x - eps_p)^2 can never exceed
    rhs = (pi hbar)^n / Gamma(n/2 + 1)^2 when the concentration bodies form a
    quantum pair; `eps_floor` is the implied least possible eps_x + eps_p and
    `stirling_envelope` the large-n asymptote (1/(pi n)) (2 e pi hbar / n)^n.
    """

    lhs: float
    rhs: float
    consistent: bool
    eps_floor: float
    stirling_envelope: float


def _ball_volume_squared(n, hbar):
    """(pi hbar)^n / Gamma(n/2 + 1)^2 with half-integer gammas kept exact.

    For odd n the pi from Gamma(n/2 + 1)^2 = pi (n!!)^2 / 2^(n+1) cancels a
    power of pi in the numerator, so n = 1, hbar = 1 yields exactly 4.0.
    """
    if n % 2 == 0:
        return float((np.pi * hbar) ** n) / factorial(n // 2) ** 2
    dfact = 1
    for k in range(n, 0, -2):
        dfact *= k
    return float(np.pi ** (n - 1) * hbar**n) * 2 ** (n + 1) / dfact**2


def polar_concentration_bound(n, hbar, eps_x, eps_p, tol=1e-9):
    if n < 1:
        raise DimensionError(f"n must be >= 1, got {n}")
    if not (0 <= eps_x <= 1 and 0 <= eps_p <= 1):
        raise DomainError("eps values must lie in [0, 1]")
    defect = max(1.0 - eps_x - eps_p, 0.0)
    lhs = float((2.0 * np.pi * hbar) ** n * defect**2)
    rhs = _ball_volume_squared(n, hbar)
    ratio = rhs / (2.0 * np.pi * hbar) ** n
    eps_floor = float(max(1.0 - np.sqrt(ratio), 0.0))
    stirling = float((2.0 * np.e * np.pi * hbar / n) ** n / (np.pi * n))
    consistent = bool(lhs <= rhs + tol * max(1.0, rhs))
    return PolarBoundReport(lhs=lhs, rhs=rhs, consistent=consistent,
                            eps_floor=eps_floor, stirling_envelope=stirling)


@dataclass(frozen=True)
class HardyReport:
    """Gaussian-decay admissibility of the pair exp(-Ax.x/2hbar), exp(-Bp.p/2hbar).

    regime is "fail" when some eigenvalue of A^(1/2) B A^(1/2) exceeds 1,
    "gaussian_unique" when all equal 1, and "hermite_family" otherwise; the
    non-fail regimes coincide with (X_A, P_B) being a quantum pair, which is
    asserted against the polar-duality route.
    """

    eigenvalues: np.ndarray
    regime: str
    polar_equivalent: bool


def hardy_check(A, B, hbar=1.0, tol=1e-9):
    A = require_spd(np.atleast_2d(np.asarray(A, dtype=float)), "A")
    B = require_spd(np.atleast_2d(np.asarray(B, dtype=float)), "B")
    if A.shape != B.shape:
        raise DimensionError(f"A is {A.shape} but B is {B.shape}")
    w, V = np.linalg.eigh(A)
    root = (V * np.sqrt(w)) @ V.T
    eigs = np.linalg.eigvalsh(symmetrize(root @ B @ root))
    if eigs[-1] > 1.0 + tol:
        regime = "fail"
    elif np.all(np.abs(eigs - 1.0) <= tol):
        regime = "gaussian_unique"
    else:
        regime = "hermite_family"
    pair = quantum_pair_check(ellipsoid(A, hbar, "x"), ellipsoid(B, hbar, "p"),
                              tol=tol)
    if pair.holds != (regime != "fail"):
        raise InternalConsistencyError(
            f"decay regime {regime!r} disagrees with the polar route "
            f"(lambda_max {pair.lambda_max:.12g})")
    return HardyReport(eigenvalues=eigs, regime=regime,
                       polar_equivalent=bool(pair.holds))
