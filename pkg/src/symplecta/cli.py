"""Command line interface.

One subcommand per construct; payloads are the JSON formats of
:mod:`symplecta.jsonio`.  Exit codes: 0 on success, 1 on malformed input
(bad flags, unreadable or schema-violating JSON), 2 on domain errors
(mathematical preconditions that fail, including a failing pair check).
Output is deterministic: identical invocations produce identical bytes.

The default tolerance may be overridden by the SYMPLECTA_TOL environment
variable; an explicit --tol flag wins over both.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import jsonio, sweeps
from .errors import SymplectaError
from .jsonio import PayloadError
from .bodies import mahler_volume, polar_dual, quantum_pair_check
from .blobs import (blob_from_symplectic, blob_normal_form, blob_to_gaussian,
                    gaussian_to_blob, john_of_pair, john_of_polytope_product,
                    project_blob, rescaled_blob_family)
from .capacities import (ellipsoid_capacity, hz_planar, hz_product_pair,
                         projection_area_check)
from .concentration import (concentration, donoho_stark_check, hardy_check,
                            hbar_fourier, polar_concentration_bound)
from .states import (covariance, marginals, pauli_partners,
                     quantum_condition_check, robertson_schrodinger_check)
from .symplectic import random_symplectic
from .bodies import EllipsoidBody

DEFAULT_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    """argparse that reports malformed command lines as payload errors."""

    def error(self, message):
        raise PayloadError(message)


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise PayloadError(f"cannot read JSON from {path!r}: {exc}") from exc


def _nxn_matrix(obj, key="rows"):
    M = np.array(obj.get(key, obj) if isinstance(obj, dict) else obj,
                 dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise PayloadError("expected a square matrix payload")
    return M


def _rows(M):
    return [[float(v) for v in row] for row in np.atleast_2d(M)]


def _tol(args):
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get("SYMPLECTA_TOL")
    if env:
        try:
            return float(env)
        except ValueError as exc:
            raise PayloadError(f"SYMPLECTA_TOL={env!r} is not a number") from exc
    return DEFAULT_TOL


def _emit(payload, args):
    fmt = getattr(args, "format", "json") or "json"
    if fmt == "csv":
        text = _flat_csv(payload)
    else:
        text = jsonio.dumps(payload) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flat_csv(payload):
    """Key,value rows for flat-ish records (lists join with ';')."""
    lines = ["key,value"]

    def walk(obj, key):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(obj[k], f"{key}.{k}" if key else k)
        else:
            if isinstance(obj, list):
                val = ";".join(str(v) for v in obj)
            else:
                val = str(obj)
            lines.append(f"{key},{val}")

    walk(payload, "")
    return "\n".join(lines) + "\n"


def _inclusion_json(inc):
    return {"ok": bool(inc.ok), "margin": float(inc.margin),
            "witness": None if inc.witness is None else
            [float(v) for v in inc.witness]}


def _pair_report_json(report):
    return {"holds": bool(report.holds),
            "lambda_max": float(report.lambda_max),
            "saturated": bool(report.saturated),
            "witness": None if report.witness is None else
            [float(v) for v in report.witness]}


# ---------------------------------------------------------------- handlers


def _cmd_dual(args):
    body = jsonio.body_from_json(_load(args.body))
    _emit(jsonio.body_to_json(polar_dual(body)), args)
    return 0


def _cmd_pair_check(args):
    X = jsonio.body_from_json(_load(args.x))
    P = jsonio.body_from_json(_load(args.p))
    report = quantum_pair_check(X, P, tol=_tol(args))
    payload = _pair_report_json(report)
    if not report.holds:
        _emit({"error": {"type": "NotQuantumPairError",
                         "message": "(X, P) is not a quantum pair",
                         **payload}}, args)
        return 2
    _emit(payload, args)
    return 0


def _cmd_mahler(args):
    body = jsonio.body_from_json(_load(args.body))
    rep = mahler_volume(body)
    _emit({"vol_body": rep.vol_body, "vol_dual": rep.vol_dual,
           "mahler": rep.mahler, "santalo_bound": rep.santalo_bound,
           "mahler_bound": rep.mahler_bound}, args)
    return 0


def _cmd_blob(args):
    if args.blob:
        blob = jsonio.blob_from_json(_load(args.blob))
    elif args.symplectic:
        S = jsonio.matrix_from_json(_load(args.symplectic))
        blob = blob_from_symplectic(S, hbar=args.hbar)
    elif args.seed is not None:
        S = random_symplectic(args.seed, args.n, spread=args.spread)
        blob = blob_from_symplectic(S, hbar=args.hbar)
    else:
        raise PayloadError("blob needs --blob, --symplectic or --seed")
    P, L = blob_normal_form(blob)
    _emit({"blob": jsonio.blob_to_json(blob),
           "normal_form": {"P": _rows(P), "L": _rows(L)},
           "volume": blob.volume()}, args)
    return 0


def _cmd_blob_project(args):
    blob = jsonio.blob_from_json(_load(args.blob))
    proj = project_blob(blob, tol=_tol(args))
    _emit({"X": jsonio.body_to_json(proj.X), "P": jsonio.body_to_json(proj.P),
           "saturated": bool(proj.saturated)}, args)
    return 0


def _cmd_john(args):
    if args.a and args.b:
        A = _nxn_matrix(_load(args.a))
        B = _nxn_matrix(_load(args.b))
        if args.rescale is not None:
            lam = args.rescale if args.rescale == "AB" else float(args.rescale)
            res = rescaled_blob_family(A, B, lam, hbar=args.hbar)
            _emit({"blob": jsonio.blob_to_json(res.blob),
                   "contained": _inclusion_json(res.contained)}, args)
            return 0
        res = john_of_pair(A, B, hbar=args.hbar)
        _emit({"ellipsoid": jsonio.body_to_json(res.ellipsoid),
               "is_blob": bool(res.is_blob),
               "symplectic_residual": float(res.symplectic_residual)}, args)
        return 0
    if args.x and args.p:
        X = jsonio.body_from_json(_load(args.x))
        P = jsonio.body_from_json(_load(args.p))
        E = john_of_polytope_product(X, P)
        _emit({"ellipsoid": jsonio.body_to_json(E)}, args)
        return 0
    raise PayloadError("john needs --a/--b (ellipsoid pair) or --x/--p "
                       "(polytope bodies)")


def _cmd_gamma(args):
    if args.blob:
        blob = jsonio.blob_from_json(_load(args.blob))
        _emit(jsonio.state_to_json(blob_to_gaussian(blob)), args)
        return 0
    if args.state:
        state = jsonio.state_from_json(_load(args.state))
        _emit(jsonio.blob_to_json(gaussian_to_blob(state)), args)
        return 0
    raise PayloadError("gamma needs --blob or --state")


def _verdict_json(v):
    out = {"passes": bool(v.passes),
           "min_symplectic_eigenvalue": _nan_none(v.min_symplectic_eigenvalue),
           "capacity_of_cov_ellipsoid": _nan_none(v.capacity_of_cov_ellipsoid),
           "rs_margins": [float(m) for m in v.rs_margins],
           "min_eigenvalue": float(v.min_eigenvalue),
           "blob_unique": bool(v.blob_unique)}
    if v.inscribed_blob is not None:
        out["inscribed_blob"] = jsonio.blob_to_json(v.inscribed_blob)
    return out


def _nan_none(x):
    x = float(x)
    return None if np.isnan(x) else x


def _cmd_state_check(args):
    if args.state:
        state = jsonio.state_from_json(_load(args.state))
        cov = covariance(state)
        verdict = quantum_condition_check(cov, tol=_tol(args))
        pos, mom = marginals(state)
        payload = _verdict_json(verdict)
        payload["covariance"] = jsonio.covariance_to_json(cov)
        payload["marginals"] = {"position_cov": _rows(pos.cov),
                                "momentum_cov": _rows(mom.cov)}
    elif args.covariance:
        cov = jsonio.covariance_from_json(_load(args.covariance))
        verdict = quantum_condition_check(cov, tol=_tol(args))
        payload = _verdict_json(verdict)
    else:
        raise PayloadError("state-check needs --state or --covariance")
    _emit(payload, args)
    return 0


def _cmd_rs_check(args):
    cov = jsonio.covariance_from_json(_load(args.covariance))
    margins = robertson_schrodinger_check(cov)
    _emit({"margins": [float(m) for m in margins],
           "all_nonnegative": bool(np.all(margins >= -_tol(args)))}, args)
    return 0


def _cmd_pauli(args):
    partners = pauli_partners(args.sxx, args.spp, hbar=args.hbar)
    _emit({"partners": [jsonio.covariance_to_json(c) for c in partners]}, args)
    return 0


def _cmd_capacity(args):
    body = jsonio.body_from_json(_load(args.body))
    if isinstance(body, EllipsoidBody):
        cap = ellipsoid_capacity(body)
    else:
        cap = hz_planar(body)
    _emit(jsonio.capacity_to_json(cap), args)
    return 0


def _cmd_hz_pair(args):
    X = jsonio.body_from_json(_load(args.x))
    P = jsonio.body_from_json(_load(args.p))
    cap = hz_product_pair(X, P, tol=_tol(args))
    _emit(jsonio.capacity_to_json(cap), args)
    return 0


def _cmd_gromov_check(args):
    S = jsonio.matrix_from_json(_load(args.symplectic))
    n = S.shape[0] // 2
    planes = range(1, n + 1) if args.plane == 0 else [args.plane]
    reports = [projection_area_check(S, args.radius, j, tol=_tol(args))
               for j in planes]
    payload = {"planes": [{"plane": r.plane, "area": r.area,
                           "lower_bound": r.lower_bound,
                           "passes": bool(r.passes)} for r in reports],
               "all_pass": bool(all(r.passes for r in reports))}
    _emit(payload, args)
    return 0


def _parse_widths(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise PayloadError(f"bad box spec {text!r}") from exc


def _cmd_ds_check(args):
    cx = _parse_widths(args.cx)
    cp = _parse_widths(args.cp)
    if args.function:
        if len(cx) != 1 or len(cp) != 1:
            raise PayloadError("measured ds-check supports n = 1 boxes")
        f = jsonio.function_from_json(_load(args.function))
        eps_x = concentration(f, cx[0])
        eps_p = concentration(hbar_fourier(f), cp[0])
        hbar = f.hbar
    else:
        if args.eps_x is None or args.eps_p is None:
            raise PayloadError("ds-check needs --function or --eps-x/--eps-p")
        eps_x, eps_p = args.eps_x, args.eps_p
        hbar = args.hbar
    ds = donoho_stark_check(eps_x, eps_p, cx, cp, hbar=hbar, tol=_tol(args))
    polar = polar_concentration_bound(len(cx), hbar, eps_x, eps_p,
                                      tol=_tol(args))
    _emit({"donoho_stark": {"eps_x": ds.eps_x, "eps_p": ds.eps_p,
                            "lhs": ds.lhs, "rhs": ds.rhs,
                            "consistent": bool(ds.consistent),
                            "vacuous": bool(ds.vacuous)},
           "polar_bound": {"lhs": polar.lhs, "rhs": polar.rhs,
                           "consistent": bool(polar.consistent),
                           "eps_floor": polar.eps_floor,
                           "stirling_envelope": polar.stirling_envelope}},
          args)
    return 0


def _cmd_hardy_check(args):
    A = _nxn_matrix(_load(args.a))
    B = _nxn_matrix(_load(args.b))
    rep = hardy_check(A, B, hbar=args.hbar, tol=_tol(args))
    _emit({"eigenvalues": [float(v) for v in rep.eigenvalues],
           "regime": rep.regime,
           "polar_equivalent": bool(rep.polar_equivalent)}, args)
    return 0


def _parse_seeds(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError as exc:
            raise PayloadError(f"bad seed range {text!r}") from exc
    try:
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise PayloadError(f"bad seed list {text!r}") from exc


def _cmd_sweep(args):
    seeds = _parse_seeds(args.seeds)
    try:
        rows = sweeps.run_suite(args.suite, seeds, hbar=args.hbar,
                                tol=_tol(args))
    except KeyError as exc:
        raise PayloadError(str(exc)) from exc
    fmt = args.format or "csv"
    if fmt == "csv":
        text = sweeps.render_csv(rows)
    else:
        text = jsonio.dumps(sweeps.rows_to_dicts(rows)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.passed for r in rows) else 2


# ---------------------------------------------------------------- parser


def _build_parser():
    parser = _Parser(prog="symplecta",
                     description="phase-space geometry of quantum indeterminacy")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, handler, **flags):
        p = sub.add_parser(name)
        p.set_defaults(handler=handler)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("json", "csv"), default=None)
        p.add_argument("--hbar", type=float, default=1.0)
        for flag, kwargs in flags.items():
            p.add_argument(flag, **kwargs)
        return p

    add("dual", _cmd_dual, **{"--body": dict(required=True)})
    add("pair-check", _cmd_pair_check, **{"--x": dict(required=True),
                                          "--p": dict(required=True)})
    add("mahler", _cmd_mahler, **{"--body": dict(required=True)})
    add("blob", _cmd_blob, **{"--blob": dict(default=None),
                              "--symplectic": dict(default=None),
                              "--seed": dict(type=int, default=None),
                              "--n": dict(type=int, default=1),
                              "--spread": dict(type=float, default=1.0)})
    add("blob-project", _cmd_blob_project, **{"--blob": dict(required=True)})
    add("john", _cmd_john, **{"--a": dict(default=None),
                              "--b": dict(default=None),
                              "--x": dict(default=None),
                              "--p": dict(default=None),
                              "--rescale": dict(default=None)})
    add("gamma", _cmd_gamma, **{"--blob": dict(default=None),
                                "--state": dict(default=None)})
    add("state-check", _cmd_state_check, **{"--state": dict(default=None),
                                            "--covariance": dict(default=None)})
    add("rs-check", _cmd_rs_check, **{"--covariance": dict(required=True)})
    add("pauli", _cmd_pauli, **{"--sxx": dict(type=float, required=True),
                                "--spp": dict(type=float, required=True)})
    add("capacity", _cmd_capacity, **{"--body": dict(required=True)})
    add("hz-pair", _cmd_hz_pair, **{"--x": dict(required=True),
                                    "--p": dict(required=True)})
    add("gromov-check", _cmd_gromov_check,
        **{"--symplectic": dict(required=True),
           "--radius": dict(type=float, default=1.0),
           "--plane": dict(type=int, default=0)})
    add("ds-check", _cmd_ds_check, **{"--eps-x": dict(type=float, default=None),
                                      "--eps-p": dict(type=float, default=None),
                                      "--cx": dict(required=True),
                                      "--cp": dict(required=True),
                                      "--function": dict(default=None)})
    add("hardy-check", _cmd_hardy_check, **{"--a": dict(required=True),
                                            "--b": dict(required=True)})
    add("sweep", _cmd_sweep, **{"--suite": dict(required=True),
                                "--seeds": dict(default="0..19")})
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "handler", None):
            raise PayloadError("a subcommand is required (see --help)")
        return args.handler(args)
    except PayloadError as exc:
        sys.stdout.write(jsonio.dumps(
            {"error": {"type": "PayloadError", "message": str(exc)}}) + "\n")
        return 1
    except SymplectaError as exc:
        info = {"type": type(exc).__name__, "message": str(exc)}
        payload = getattr(exc, "payload", None)
        if payload:
            info.update({k: (v if not isinstance(v, float) or np.isfinite(v)
                             else None) for k, v in payload.items()})
        residual = getattr(exc, "residual", None)
        if residual is not None:
            info["residual"] = float(residual)
        sys.stdout.write(jsonio.dumps({"error": info}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
