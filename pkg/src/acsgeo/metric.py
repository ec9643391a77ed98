"""Riemannian machinery on a coordinate chart.

Levi-Civita connection, Riemann curvature, covariant derivatives and
sectional curvature, all evaluated pointwise with exact dual-number
derivatives of the metric components.  Every function here is generic in
the scalar type where it needs to be: Christoffel symbols can be evaluated
with Dual coordinates, which is how curvature obtains the exact
first derivatives of the symbols (nested seeding).
"""

from __future__ import annotations

import numpy as np

from .expressions import Dual, ScalarField, parse_expression, primal, tangent


class GeometryError(Exception):
    pass


class SingularMetricError(GeometryError):
    pass


class NotPositiveDefiniteError(GeometryError):
    pass


class DegeneratePlaneError(GeometryError):
    pass


# ---------------------------------------------------------------------------
# generic linear algebra (works on floats and Duals)


def inv_generic(mat):
    """Inverse of a small square matrix by Gauss-Jordan elimination.

    Entries may be floats or (nested) Duals; pivoting is on the magnitude of
    the primal part.  Raises SingularMetricError when the primal determinant
    magnitude falls below 1e-12.
    """
    n = len(mat)
    a = [list(row) for row in mat]
    inv = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    det = 1.0
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(primal(a[r][col])))
        if abs(primal(a[piv][col])) < 1e-300:
            raise SingularMetricError("matrix is numerically singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            det = -det
        pivot = a[col][col]
        det *= primal(pivot)
        for j in range(n):
            a[col][j] = a[col][j] / pivot
            inv[col][j] = inv[col][j] / pivot
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if primal(f) == 0.0 and not isinstance(f, Dual):
                continue
            for j in range(n):
                a[r][j] = a[r][j] - f * a[col][j]
                inv[r][j] = inv[r][j] - f * inv[col][j]
    if abs(det) < 1e-12:
        raise SingularMetricError(f"metric determinant {det} below threshold")
    return inv


# ---------------------------------------------------------------------------
# metric fields


class MetricField:
    """Symmetric dim x dim array of ScalarFields g_ij."""

    def __init__(self, components):
        dim = len(components)
        for row in components:
            if len(row) != dim:
                raise ValueError("metric component array must be square")
        self.components = [list(row) for row in components]
        self.dim = dim
        # constant metrics short-circuit every derivative evaluation
        from .expressions import Num
        self.is_constant = all(isinstance(f.body, Num)
                               for row in self.components for f in row)

    @classmethod
    def from_lower_triangle(cls, entries, coord_names):
        """Build from rows of expression strings giving the lower triangle
        (row i has i+1 entries); the upper triangle is mirrored, so symmetry
        holds exactly by construction."""
        dim = len(entries)
        comp = [[None] * dim for _ in range(dim)]
        for i, row in enumerate(entries):
            if len(row) < i + 1:
                raise ValueError(f"row {i} of lower triangle needs {i + 1} entries")
            for j in range(i + 1):
                f = row[j]
                if isinstance(f, str):
                    f = parse_expression(f, coord_names)
                comp[i][j] = f
                comp[j][i] = f
        return cls(comp)

    def matrix_at(self, coords):
        """Evaluate g as a nested list; generic in the scalar type."""
        return [[f.eval_scalar(coords) for f in row] for row in self.components]

    def array_at(self, point) -> np.ndarray:
        return np.array(self.matrix_at([float(x) for x in point]), dtype=float)

    def check_point(self, point, sym_tol=1e-12, minor_floor=1e-10):
        """Symmetry and positive definiteness at one point; raises on failure."""
        g = self.array_at(point)
        asym = float(np.max(np.abs(g - g.T)))
        if asym > sym_tol:
            raise GeometryError(f"metric asymmetry {asym} at {list(point)}")
        for k in range(1, self.dim + 1):
            minor = float(np.linalg.det(g[:k, :k]))
            if minor <= minor_floor:
                raise NotPositiveDefiniteError(
                    f"leading principal minor {k} is {minor} at {list(point)}")
        return g


# ---------------------------------------------------------------------------
# Christoffel symbols and curvature


def metric_first_derivatives(g: MetricField, coords):
    """dg[j][l][k] = d_j g_lk, by one extra dual level on top of coords."""
    dim = g.dim
    if g.is_constant:
        return [[[0.0] * dim for _ in range(dim)] for _ in range(dim)]
    out = []
    for j in range(dim):
        env = [Dual(coords[n], 1.0 if n == j else 0.0) for n in range(dim)]
        out.append([[tangent(g.components[l][k].eval_scalar(env))
                     for k in range(dim)] for l in range(dim)])
    return out


def christoffel_values(g: MetricField, coords):
    """Levi-Civita symbols Gamma^i_jk at generic coordinates.

    Gamma^i_jk = 1/2 g^il (d_j g_lk + d_k g_jl - d_l g_jk).
    """
    dim = g.dim
    if g.is_constant:
        return [[[0.0] * dim for _ in range(dim)] for _ in range(dim)]
    dg = metric_first_derivatives(g, coords)
    ginv = inv_generic(g.matrix_at(coords))
    gamma = [[[None] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            for k in range(j, dim):
                s = 0.0
                for l in range(dim):
                    s = s + ginv[i][l] * (dg[j][l][k] + dg[k][j][l] - dg[l][j][k])
                val = 0.5 * s
                gamma[i][j][k] = val
                gamma[i][k][j] = val
    return gamma


def christoffel(g: MetricField, point) -> np.ndarray:
    """Levi-Civita connection coefficients at a point, shape (dim,dim,dim),
    symmetric in the lower pair."""
    return np.array(christoffel_values(g, [float(x) for x in point]), dtype=float)


def gamma_jet(gamma_fn, point, dim, constant=False):
    """Value and exact coordinate derivatives of a connection field.

    ``gamma_fn(coords)`` must return nested-list Gamma^i_jk for generic
    scalar coords.  Returns (Gamma[i,j,k], dGamma[m,i,j,k] = d_m Gamma^i_jk).
    ``constant=True`` promises the coefficients do not depend on the point
    and skips the derivative passes.
    """
    p = [float(x) for x in point]
    gamma = np.array(gamma_fn(p), dtype=float)
    if constant:
        return gamma, np.zeros((dim, dim, dim, dim))
    dgamma = np.empty((dim, dim, dim, dim))
    for m in range(dim):
        coords = [Dual(p[n], 1.0 if n == m else 0.0) for n in range(dim)]
        gm = gamma_fn(coords)
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    dgamma[m, i, j, k] = primal(tangent(gm[i][j][k]))
    return gamma, dgamma


def riemann_from_gamma(gamma_fn, point, dim, constant=False) -> np.ndarray:
    """Curvature of an arbitrary connection field, components R^i_jkl with
    R(e_k, e_l) e_j = R^i_jkl e_i:

        R^i_jkl = d_k Gamma^i_lj - d_l Gamma^i_kj
                  + Gamma^i_km Gamma^m_lj - Gamma^i_lm Gamma^m_kj.
    """
    gamma, dgamma = gamma_jet(gamma_fn, point, dim, constant=constant)
    # dGamma[k,i,l,j] = d_k Gamma^i_lj
    r = np.einsum("kilj->ijkl", dgamma) - np.einsum("likj->ijkl", dgamma)
    r += np.einsum("ikm,mlj->ijkl", gamma, gamma)
    r -= np.einsum("ilm,mkj->ijkl", gamma, gamma)
    return r


def riemann(g: MetricField, point) -> np.ndarray:
    """Riemann curvature of the Levi-Civita connection at a point."""
    if g.is_constant:
        return np.zeros((g.dim,) * 4)
    return riemann_from_gamma(lambda c: christoffel_values(g, c), point, g.dim)


def apply_curvature(r: np.ndarray, x, y, z) -> np.ndarray:
    """The vector R(X,Y)Z for a curvature-like tensor in R^i_jkl layout."""
    return ((r @ np.asarray(y)) @ np.asarray(x)) @ np.asarray(z)


def plane_q(g: np.ndarray, x, y) -> float:
    return float((x @ g @ x) * (y @ g @ y) - (x @ g @ y) ** 2)


def sectional_curvature(g: np.ndarray, r: np.ndarray, x, y) -> float:
    """Sectional curvature g(R(X,Y)Y,X)/Q(X,Y) of the plane span{X, Y}.

    ``g`` and ``r`` are evaluated arrays at the point of interest.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    q = plane_q(g, x, y)
    if q <= 1e-12:
        raise DegeneratePlaneError(f"Q(X,Y) = {q} below threshold")
    return float(x @ g @ apply_curvature(r, x, y, y)) / q


def fields_constant(fields) -> bool:
    """True when every ScalarField in a nested array is a bare constant."""
    from .expressions import Num
    if isinstance(fields, ScalarField):
        return isinstance(fields.body, Num)
    return all(fields_constant(sub) for sub in fields)


def field_first_derivatives(fields, coords, dim):
    """d_i of a nested array of ScalarFields; returns a python nested list
    with the derivative index first."""
    def walk(node, env):
        if isinstance(node, ScalarField):
            return tangent(node.eval_scalar(env))
        return [walk(sub, env) for sub in node]

    if fields_constant(fields):
        def zeros(node):
            if isinstance(node, ScalarField):
                return 0.0
            return [zeros(sub) for sub in node]
        return [zeros(fields) for _ in range(dim)]

    out = []
    for i in range(dim):
        env = [Dual(coords[n], 1.0 if n == i else 0.0) for n in range(dim)]
        out.append(walk(fields, env))
    return out


def nabla_g(gamma: np.ndarray, g: MetricField, point) -> np.ndarray:
    """(nabla g)_ijk = d_i g_jk - Gamma^m_ij g_mk - Gamma^m_ik g_jm for an
    arbitrary connection given by its coefficients at the point."""
    p = [float(x) for x in point]
    dg = np.array(metric_first_derivatives(g, p), dtype=float)
    gm = g.array_at(p)
    out = dg.copy()
    out -= np.einsum("mij,mk->ijk", gamma, gm)
    out -= np.einsum("mik,jm->ijk", gamma, gm)
    return out


def covariant_derivative_11(gamma: np.ndarray, phi_fields, point) -> np.ndarray:
    """Covariant derivative of a (1,1) tensor field:

        (nabla_i phi)^j_k = d_i phi^j_k + Gamma^j_im phi^m_k - Gamma^m_ik phi^j_m

    Returns shape (dim, dim, dim) indexed [i, j, k].
    """
    dim = gamma.shape[0]
    p = [float(x) for x in point]
    dphi = np.array(field_first_derivatives(phi_fields, p, dim), dtype=float)
    phi = np.array([[f.eval_scalar(p) for f in row] for row in phi_fields],
                   dtype=float)
    out = dphi.copy()
    out += np.einsum("jim,mk->ijk", gamma, phi)
    out -= np.einsum("mik,jm->ijk", gamma, phi)
    return out


def covariant_derivative_vector(gamma: np.ndarray, v_fields, point) -> np.ndarray:
    """(nabla_i v)^j = d_i v^j + Gamma^j_im v^m, shape (dim, dim)."""
    dim = gamma.shape[0]
    p = [float(x) for x in point]
    dv = np.array(field_first_derivatives(list(v_fields), p, dim), dtype=float)
    v = np.array([f.eval_scalar(p) for f in v_fields], dtype=float)
    return dv + np.einsum("jim,m->ij", gamma, v)
