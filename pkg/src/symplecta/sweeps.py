"""Seeded property sweeps over the library's structural invariants.

Each suite maps a seed to a handful of measured quantities with their bounds;
rows carry (suite, property, seed, measured, bound, margin, pass) and render
to CSV or JSON for the command line `sweep` subcommand.
"""

import csv
import io
from dataclasses import asdict, dataclass

import numpy as np

from . import bodies, capacities, states
from ._linalg import max_abs, symmetrize
from .blobs import blob_from_symplectic, blob_to_gaussian, gaussian_to_blob, project_blob
from .symplectic import random_symplectic, symplectic_eigenvalues

CSV_COLUMNS = ("suite", "property", "seed", "measured", "bound", "margin", "pass")


@dataclass(frozen=True)
class SweepRow:
    suite: str
    property: str
    seed: int
    measured: float
    bound: float
    margin: float
    passed: bool


def _row(suite, prop, seed, measured, bound, upper=True):
    """A row where measured must stay <= bound (upper) or >= bound."""
    margin = bound - measured if upper else measured - bound
    return SweepRow(suite=suite, property=prop, seed=int(seed),
                    measured=float(measured), bound=float(bound),
                    margin=float(margin), passed=bool(margin >= 0.0))


def _random_spd(rng, n, lo=0.4, hi=2.5):
    Q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    return symmetrize(Q @ np.diag(rng.uniform(lo, hi, size=n)) @ Q.T)


def _support_gap(A, B, rng, samples=64):
    n = A.dim
    dirs = rng.normal(size=(samples, n))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    return max(abs(bodies.support_function(A, d) - bodies.support_function(B, d))
               for d in dirs)


def suite_polar(seed, hbar=1.0, tol=1e-9):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    X = bodies.ellipsoid(_random_spd(rng, n), hbar, "x")
    rows = []
    bidual = bodies.polar_dual(bodies.polar_dual(X))
    rows.append(_row("polar", "biduality_support_gap", seed,
                     _support_gap(X, bidual, rng), tol))
    Y = bodies.ellipsoid(X.Q - 0.2 * np.eye(n) * np.linalg.eigvalsh(X.Q)[0],
                         hbar, "x")  # X subset Y
    inc = bodies.contains(bodies.polar_dual(X), bodies.polar_dual(Y))
    rows.append(_row("polar", "antimonotonicity_margin", seed,
                     inc.margin, -tol, upper=False))
    L = rng.normal(size=(n, n)) + n * np.eye(n)
    lhs = bodies.polar_dual(bodies.linear_image(X, L))
    rhs = bodies.linear_image(bodies.polar_dual(X), np.linalg.inv(L).T)
    rows.append(_row("polar", "linear_image_support_gap", seed,
                     _support_gap(lhs, rhs, rng), 1e-8))
    return rows


def suite_capacities(seed, hbar=1.0, tol=1e-9):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    M = _random_spd(rng, 2 * n)
    E = bodies.ellipsoid(M, hbar, "z")
    c = capacities.ellipsoid_capacity(E).value
    rows = []
    lam = 2.0
    scaled = bodies.scale_body(E, lam)
    rows.append(_row("capacities", "conformality_gap", seed,
                     abs(capacities.ellipsoid_capacity(scaled).value - lam**2 * c),
                     tol * max(1.0, c)))
    S = random_symplectic(seed + 1, n, spread=0.6)
    moved = bodies.linear_image(E, S)
    rows.append(_row("capacities", "symplectic_invariance_gap", seed,
                     abs(capacities.ellipsoid_capacity(moved).value - c),
                     1e-8 * max(1.0, c)))
    if n == 1:
        rows.append(_row("capacities", "planar_area_gap", seed,
                         abs(capacities.hz_planar(E).value - c), tol))
    return rows


def suite_pairs(seed, hbar=1.0, tol=1e-9):
    rng = np.random.default_rng(seed)
    a = float(rng.uniform(0.3, 3.0))
    lam_true = float(rng.uniform(1.0, 4.0))
    b = lam_true * hbar / a
    X = bodies.interval(a, hbar, "x")
    P = bodies.interval(b, hbar, "p")
    cap = capacities.hz_product_pair(X, P).value
    rect = bodies.polytope_from_vertices(
        [[a, b], [-a, b], [-a, -b], [a, -b]], hbar, "z")
    area = capacities.hz_planar(rect).value
    return [
        _row("pairs", "product_formula_gap", seed,
             abs(cap - 4.0 * lam_true * hbar), 1e-9 * max(1.0, cap)),
        _row("pairs", "planar_cross_check_gap", seed,
             abs(cap - area), 1e-9 * max(1.0, cap)),
    ]


def suite_rs(seed, hbar=1.0, tol=1e-9):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    sigma = _random_spd(rng, 2 * n)
    lmin = symplectic_eigenvalues(sigma)[-1]
    factor = (hbar / 2.0) * (1.0 + rng.uniform(0.05, 1.0)) / lmin
    cov = states.CovarianceMatrix(sigma=sigma * factor, hbar=hbar)
    verdict = states.quantum_condition_check(cov)
    rows = [
        _row("rs", "margins_nonnegative", seed,
             float(np.min(verdict.rs_margins)), -1e-9, upper=False),
        _row("rs", "passes_quantum_condition", seed,
             1.0 if verdict.passes else 0.0, 1.0, upper=False),
    ]
    return rows


def suite_blobs(seed, hbar=1.0, tol=1e-9):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    S = random_symplectic(seed, n, spread=0.7)
    blob = blob_from_symplectic(S, hbar)
    proj = project_blob(blob)
    pair = bodies.quantum_pair_check(proj.X, proj.P)
    rows = [
        _row("blobs", "projection_pair_lambda", seed, pair.lambda_max,
             1.0 - 1e-9, upper=False),
        _row("blobs", "volume_identity_gap", seed,
             abs(blob.volume() - np.pi**n * hbar**n / float(np.prod(
                 np.arange(1, n + 1)))), 1e-9),
    ]
    st = blob_to_gaussian(blob)
    back = gaussian_to_blob(st)
    rows.append(_row("blobs", "gamma_round_trip_gap", seed,
                     max_abs(back.G - blob.G), 1e-9 * max(1.0, max_abs(blob.G))))
    return rows


def suite_gromov(seed, hbar=1.0, tol=1e-9):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 4))
    S = random_symplectic(seed, n, spread=0.8)
    R = float(rng.uniform(0.5, 2.0))
    worst = min(capacities.projection_area_check(S, R, j).area
                for j in range(1, n + 1))
    return [_row("gromov", "projection_area_floor", seed, worst,
                 np.pi * R**2 - 1e-9, upper=False)]


def suite_metaplectic(seed, hbar=1.0, tol=1e-9):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    W = _random_spd(rng, n)
    Y = symmetrize(rng.normal(size=(n, n)))
    st = states.GaussianState(W=W, Y=Y, hbar=hbar)
    kind = ("fourier", "scaling", "quadratic_phase")[int(rng.integers(0, 3))]
    if kind == "fourier":
        gen = states.fourier_generator()
    elif kind == "scaling":
        gen = states.scaling_generator(rng.normal(size=(n, n)) + n * np.eye(n))
    else:
        gen = states.quadratic_phase_generator(symmetrize(rng.normal(size=(n, n))))
    out = states.metaplectic_apply(st, gen)
    Sg = states.generator_matrix(gen, n)
    sigma = states.covariance(st).sigma
    transported = Sg @ sigma @ Sg.T
    gap = max_abs(states.covariance(out).sigma - transported)
    return [_row("metaplectic", "covariance_transport_gap", seed, gap,
                 1e-9 * max(1.0, max_abs(transported)))]


SUITES = {
    "polar": suite_polar,
    "capacities": suite_capacities,
    "pairs": suite_pairs,
    "rs": suite_rs,
    "blobs": suite_blobs,
    "gromov": suite_gromov,
    "metaplectic": suite_metaplectic,
}


def run_suite(name, seeds, hbar=1.0, tol=1e-9):
    if name == "all":
        rows = []
        for key in SUITES:
            for seed in seeds:
                rows.extend(SUITES[key](seed, hbar=hbar, tol=tol))
        return rows
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from "
                       f"{sorted(SUITES) + ['all']}")
    rows = []
    for seed in seeds:
        rows.extend(SUITES[name](seed, hbar=hbar, tol=tol))
    return rows


def rows_to_dicts(rows):
    out = []
    for r in rows:
        d = asdict(r)
        d["pass"] = d.pop("passed")
        out.append({k: d[k] for k in CSV_COLUMNS})
    return out


def render_csv(rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for d in rows_to_dicts(rows):
        d["pass"] = "true" if d["pass"] else "false"
        writer.writerow(d)
    return buf.getvalue()
