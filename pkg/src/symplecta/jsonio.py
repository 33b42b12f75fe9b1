"""JSON wire formats for bodies, blobs, states, covariances and functions.

All payloads are plain JSON objects:

* matrix:     {"n": int, "rows": [[...], ...]}        (2n x 2n, row-major)
* body:       {"kind": "ellipsoid", "space": "x"|"p"|"z", "hbar": r, "Q": rows}
              {"kind": "polytope", "space": ..., "hbar": r, "vertices": rows}
* blob:       {"n": int, "hbar": r, "G": rows}
* state:      {"n": int, "hbar": r, "W": rows, "Y": rows}
* covariance: {"n": int, "hbar": r, "Sigma": rows}
* capacity:   {"value": r, "method": str, "hbar": r}
* function:   {"hbar": r, "L": r, "samples_re": [...], "samples_im": [...]}

Serialization is deterministic: keys are sorted and floats use repr.
"""

import json

import numpy as np

from .errors import DimensionError
from .bodies import EllipsoidBody, ellipsoid, polytope_from_vertices
from .blobs import QuantumBlob
from .capacities import CapacityValue
from .concentration import SampledFunction1D
from .states import CovarianceMatrix, GaussianState


class PayloadError(ValueError):
    """Malformed JSON payload (missing key, wrong shape, bad kind)."""


def _rows(M):
    return [[float(v) for v in row] for row in np.atleast_2d(np.asarray(M))]


def _matrix(obj, key, square=True):
    try:
        rows = obj[key]
    except (KeyError, TypeError) as exc:
        raise PayloadError(f"missing field {key!r}") from exc
    try:
        M = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise PayloadError(f"field {key!r} is not a numeric matrix") from exc
    if M.ndim != 2 or (square and M.shape[0] != M.shape[1]):
        raise PayloadError(f"field {key!r} has shape {M.shape}")
    return M


def _real(obj, key, default=None):
    if key not in obj:
        if default is not None:
            return default
        raise PayloadError(f"missing field {key!r}")
    v = obj[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise PayloadError(f"field {key!r} must be a number")
    return float(v)


def dumps(payload):
    """Deterministic JSON text (sorted keys, stable float repr)."""
    return json.dumps(payload, sort_keys=True, indent=2)


def matrix_to_json(M):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2 != 0:
        raise DimensionError(f"expected a 2n x 2n matrix, got {M.shape}")
    return {"n": M.shape[0] // 2, "rows": _rows(M)}


def matrix_from_json(obj):
    M = _matrix(obj, "rows")
    n = obj.get("n")
    if n is not None and M.shape[0] != 2 * int(n):
        raise PayloadError(f"declared n={n} but rows are {M.shape[0]}-dimensional")
    return M


def body_to_json(body):
    base = {"kind": body.kind, "space": body.space, "hbar": float(body.hbar)}
    if isinstance(body, EllipsoidBody):
        base["Q"] = _rows(body.Q)
    else:
        base["vertices"] = _rows(body.vertices)
    return base


def body_from_json(obj):
    kind = obj.get("kind")
    space = obj.get("space", "x")
    hbar = _real(obj, "hbar", 1.0)
    if kind == "ellipsoid":
        return ellipsoid(_matrix(obj, "Q"), hbar=hbar, space=space)
    if kind == "polytope":
        V = _matrix(obj, "vertices", square=False)
        return polytope_from_vertices(V, hbar=hbar, space=space)
    raise PayloadError(f"unknown body kind {kind!r}")


def blob_to_json(blob):
    return {"n": blob.n, "hbar": float(blob.hbar), "G": _rows(blob.G)}


def blob_from_json(obj):
    G = _matrix(obj, "G")
    n = obj.get("n")
    if n is not None and G.shape[0] != 2 * int(n):
        raise PayloadError(f"declared n={n} but G is {G.shape[0]}-dimensional")
    return QuantumBlob(G=G, hbar=_real(obj, "hbar", 1.0))


def state_to_json(state):
    return {"n": state.n, "hbar": float(state.hbar),
            "W": _rows(state.W), "Y": _rows(state.Y)}


def state_from_json(obj):
    W = _matrix(obj, "W")
    Y = _matrix(obj, "Y")
    n = obj.get("n")
    if n is not None and W.shape[0] != int(n):
        raise PayloadError(f"declared n={n} but W is {W.shape[0]}-dimensional")
    return GaussianState(W=W, Y=Y, hbar=_real(obj, "hbar", 1.0))


def covariance_to_json(cov):
    return {"n": cov.n, "hbar": float(cov.hbar), "Sigma": _rows(cov.sigma)}


def covariance_from_json(obj):
    S = _matrix(obj, "Sigma")
    n = obj.get("n")
    if n is not None and S.shape[0] != 2 * int(n):
        raise PayloadError(f"declared n={n} but Sigma is {S.shape[0]}-dimensional")
    return CovarianceMatrix(sigma=S, hbar=_real(obj, "hbar", 1.0))


def capacity_to_json(cap):
    return {"value": float(cap.value), "method": cap.method,
            "hbar": float(cap.hbar)}


def capacity_from_json(obj):
    return CapacityValue(value=_real(obj, "value"),
                         method=str(obj.get("method", "")),
                         hbar=_real(obj, "hbar", 1.0))


def function_to_json(f):
    return {"hbar": float(f.hbar), "L": float(f.half_width),
            "samples_re": [float(v) for v in f.values.real],
            "samples_im": [float(v) for v in f.values.imag]}


def function_from_json(obj):
    re = obj.get("samples_re")
    im = obj.get("samples_im")
    if re is None or im is None:
        raise PayloadError("function payload needs samples_re and samples_im")
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    if re.shape != im.shape or re.ndim != 1:
        raise PayloadError("samples_re and samples_im must be equal-length lists")
    return SampledFunction1D(values=re + 1j * im,
                             half_width=_real(obj, "L"),
                             hbar=_real(obj, "hbar", 1.0))
