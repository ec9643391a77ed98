"""Coordinate-chart manifolds carrying an almost contact metric structure
and a difference tensor, plus pointwise evaluation frames."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .expressions import ScalarField, parse_expression
from .metric import MetricField, christoffel, inv_generic


def _as_fields(entries, coord_names):
    """Recursively convert a nested array of strings/numbers to ScalarFields."""
    if isinstance(entries, ScalarField):
        return entries
    if isinstance(entries, str):
        return parse_expression(entries, coord_names)
    if isinstance(entries, (int, float)):
        return parse_expression(repr(float(entries)), coord_names)
    return [_as_fields(e, coord_names) for e in entries]


@dataclass(frozen=True)
class PointFrame:
    """All structure tensors evaluated at one chart point."""

    point: np.ndarray
    g: np.ndarray        # metric, (dim, dim)
    g_inv: np.ndarray
    phi: np.ndarray      # phi^i_j
    xi: np.ndarray       # xi^i
    eta: np.ndarray      # eta_i
    gamma0: np.ndarray   # Levi-Civita Gamma^i_jk
    K: np.ndarray        # difference tensor K^i_jk

    @property
    def dim(self):
        return len(self.point)

    def inner(self, x, y) -> float:
        return float(np.asarray(x) @ self.g @ np.asarray(y))

    def norm(self, x) -> float:
        return float(np.sqrt(max(self.inner(x, x), 0.0)))

    def eta_of(self, x) -> float:
        return float(self.eta @ np.asarray(x))

    def apply_k(self, x, y) -> np.ndarray:
        return (self.K @ np.asarray(y)) @ np.asarray(x)


class ChartManifold:
    """An odd-dimensional chart with fields (g, phi, xi, eta, K) attached.

    ``difference`` must expose ``components(coords)`` (generic scalars) and
    ``array_at(point)``; see :mod:`acsgeo.statistical`.
    """

    def __init__(self, coord_names: Sequence[str], metric: MetricField,
                 phi, xi, difference, eta=None, box=None, grid: int = 3,
                 name: str = ""):
        self.coords = tuple(coord_names)
        dim = len(self.coords)
        if dim % 2 == 0 or dim < 3:
            raise ValueError(f"chart dimension must be odd and >= 3, got {dim}")
        if metric.dim != dim:
            raise ValueError("metric dimension mismatch")
        self.metric = metric
        self.phi = _as_fields(phi, self.coords)
        self.xi = _as_fields(xi, self.coords)
        self.eta = _as_fields(eta, self.coords) if eta is not None else None
        self.difference = difference
        self.box = [(float(lo), float(hi)) for lo, hi in box] if box is not None \
            else [(-1.0, 1.0)] * dim
        if len(self.box) != dim:
            raise ValueError("sampling box must have one interval per coordinate")
        self.grid = int(grid)
        self.name = name
        self._frame_cache = {}

    @property
    def dim(self):
        return len(self.coords)

    @property
    def n(self):
        return (self.dim - 1) // 2

    def grid_points(self, per_axis: Optional[int] = None, cap: int = 243):
        """Uniform sample grid over the box, capped in total size."""
        k = per_axis or self.grid
        axes = [np.linspace(lo, hi, k) for lo, hi in self.box]
        pts = [np.array(p) for p in itertools.product(*axes)]
        return pts[:cap]

    def eta_array_at(self, point, g=None) -> np.ndarray:
        p = [float(x) for x in point]
        if self.eta is not None:
            return np.array([f.eval_scalar(p) for f in self.eta], dtype=float)
        if g is None:
            g = self.metric.array_at(p)
        xi = np.array([f.eval_scalar(p) for f in self.xi], dtype=float)
        return g @ xi

    def frame_at(self, point) -> PointFrame:
        key = tuple(float(x) for x in point)
        cached = self._frame_cache.get(key)
        if cached is not None:
            return cached
        p = np.array(key)
        g = self.metric.array_at(p)
        g_inv = np.array(inv_generic(g.tolist()), dtype=float)
        phi = np.array([[f.eval_scalar(list(p)) for f in row] for row in self.phi],
                       dtype=float)
        xi = np.array([f.eval_scalar(list(p)) for f in self.xi], dtype=float)
        eta = self.eta_array_at(p, g)
        gamma0 = christoffel(self.metric, p)
        k = self.difference.array_at(p)
        fr = PointFrame(point=p, g=g, g_inv=g_inv, phi=phi, xi=xi, eta=eta,
                        gamma0=gamma0, K=k)
        if len(self._frame_cache) < 4096:
            self._frame_cache[key] = fr
        return fr

    # connection coefficient fields, generic in the scalar type ------------

    def gamma_statistical(self, coords):
        """Gamma of nabla = nabla^0 + K."""
        from .metric import christoffel_values
        g0 = christoffel_values(self.metric, coords)
        k = self.difference.components(coords)
        d = self.dim
        return [[[g0[i][j][kk] + k[i][j][kk] for kk in range(d)]
                 for j in range(d)] for i in range(d)]

    def gamma_conjugate(self, coords):
        """Gamma of the conjugate connection nabla-bar = nabla^0 - K."""
        from .metric import christoffel_values
        g0 = christoffel_values(self.metric, coords)
        k = self.difference.components(coords)
        d = self.dim
        return [[[g0[i][j][kk] - k[i][j][kk] for kk in range(d)]
                 for j in range(d)] for i in range(d)]
