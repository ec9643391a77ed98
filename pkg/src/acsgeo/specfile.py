"""JSON manifold spec files: ingestion and export.

A spec file declares the chart (dimension, coordinate names, sampling box,
grid count) and all structure fields as expression strings.  The metric may
be given by its lower triangle; exactly one of a difference-tensor table or
a full connection table must be present.  Sparse tensor tables use keys of
comma-separated coordinate names, e.g. ``"z,z,z": "1"``.
"""

from __future__ import annotations

import json

from .manifold import ChartManifold
from .metric import MetricField
from .statistical import (ConnectionDifferenceTensor, ExplicitDifferenceTensor,
                          difference_from_connection)


class SpecFormatError(ValueError):
    pass


def _require(cond, message):
    if not cond:
        raise SpecFormatError(message)


def _sparse_tensor3(table, coords):
    dim = len(coords)
    index = {c: i for i, c in enumerate(coords)}
    out = [[["0"] * dim for _ in range(dim)] for _ in range(dim)]
    for key, expr in table.items():
        parts = [s.strip() for s in key.split(",")]
        _require(len(parts) == 3, f"tensor key {key!r} must have three indices")
        for s in parts:
            _require(s in index, f"tensor key {key!r} uses unknown coordinate {s!r}")
        i, j, k = (index[s] for s in parts)
        out[i][j][k] = str(expr)
    return out


def manifold_from_dict(data: dict) -> ChartManifold:
    _require(isinstance(data, dict), "spec must be a JSON object")
    for key in ("coordinates", "metric_lower", "phi", "xi"):
        _require(key in data, f"spec is missing required field {key!r}")

    coords = list(data["coordinates"])
    dim = len(coords)
    _require(dim % 2 == 1 and dim >= 3,
             f"dimension must be odd and >= 3, got {dim}")
    if "dimension" in data:
        _require(int(data["dimension"]) == dim,
                 "declared dimension disagrees with the coordinate list")
    _require(len(set(coords)) == dim, "coordinate names must be distinct")

    box = data.get("box", [[-1.0, 1.0]] * dim)
    _require(len(box) == dim, "box must have one [lo, hi] interval per coordinate")
    grid = int(data.get("grid", 3))

    metric = MetricField.from_lower_triangle(data["metric_lower"], coords)

    has_k = "K" in data and data["K"] is not None
    has_conn = "connection" in data and data["connection"] is not None
    _require(has_k != has_conn,
             "exactly one of 'K' and 'connection' must be present")
    if has_k:
        diff = ExplicitDifferenceTensor(_sparse_tensor3(data["K"], coords), coords)
    else:
        diff = difference_from_connection(
            _sparse_tensor3(data["connection"], coords), metric,
            coord_names=coords)

    return ChartManifold(coords, metric, data["phi"], data["xi"], diff,
                         eta=data.get("eta"), box=box, grid=grid,
                         name=str(data.get("name", "")))


def load_spec(path) -> ChartManifold:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"invalid JSON in {path}: {exc}") from exc
    return manifold_from_dict(data)


# ---------------------------------------------------------------------------
# export

_ZERO_STRINGS = {"0", "0.0", "-0.0"}


def _dense_to_sparse(fields, coords):
    out = {}
    dim = len(coords)
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                s = fields[i][j][k].to_string()
                if s not in _ZERO_STRINGS:
                    out[f"{coords[i]},{coords[j]},{coords[k]}"] = s
    return out


def manifold_to_dict(m: ChartManifold) -> dict:
    coords = list(m.coords)
    data = {
        "name": m.name,
        "dimension": m.dim,
        "coordinates": coords,
        "box": [list(iv) for iv in m.box],
        "grid": m.grid,
        "metric_lower": [[m.metric.components[i][j].to_string()
                          for j in range(i + 1)] for i in range(m.dim)],
        "phi": [[f.to_string() for f in row] for row in m.phi],
        "xi": [f.to_string() for f in m.xi],
    }
    if m.eta is not None:
        data["eta"] = [f.to_string() for f in m.eta]
    diff = m.difference
    if isinstance(diff, ExplicitDifferenceTensor):
        data["K"] = _dense_to_sparse(diff.fields, coords)
    elif isinstance(diff, ConnectionDifferenceTensor):
        data["connection"] = _dense_to_sparse(diff.gamma_fields, coords)
    else:
        raise SpecFormatError(f"cannot export difference tensor {type(diff).__name__}")
    return data


def dump_spec(m: ChartManifold, path):
    with open(path, "w") as fh:
        json.dump(manifold_to_dict(m), fh, indent=2)
        fh.write("\n")
