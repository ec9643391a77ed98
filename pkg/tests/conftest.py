"""Shared fixtures and independent numerical oracles for the test suite.

The finite-difference routines here deliberately avoid the package's dual
number machinery so they can serve as independent cross-checks of it.
"""

import numpy as np
import pytest

from acsgeo import MetricField, example_flat_acs, example_r3_negative
from acsgeo.manifold import ChartManifold
from acsgeo.statistical import ExplicitDifferenceTensor, zero_difference_tensor


# ---------------------------------------------------------------------------
# finite-difference oracles (no dual numbers anywhere)


def fd_christoffel(metric_at, point, dim, h=1e-4):
    """Levi-Civita symbols from central differences of a metric callable."""
    p = np.asarray(point, dtype=float)
    dg = np.empty((dim, dim, dim))
    for j in range(dim):
        e = np.zeros(dim)
        e[j] = h
        dg[j] = (metric_at(p + e) - metric_at(p - e)) / (2.0 * h)
    ginv = np.linalg.inv(metric_at(p))
    gamma = np.empty((dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                s = 0.0
                for l in range(dim):
                    s += ginv[i, l] * (dg[j][l, k] + dg[k][j, l] - dg[l][j, k])
                gamma[i, j, k] = 0.5 * s
    return gamma


def fd_riemann(metric_at, point, dim, h=1e-4):
    """R^i_jkl from central differences of fd_christoffel."""
    p = np.asarray(point, dtype=float)
    gamma = fd_christoffel(metric_at, p, dim, h)
    dgamma = np.empty((dim, dim, dim, dim))
    for m in range(dim):
        e = np.zeros(dim)
        e[m] = h
        dgamma[m] = (fd_christoffel(metric_at, p + e, dim, h)
                     - fd_christoffel(metric_at, p - e, dim, h)) / (2.0 * h)
    r = np.einsum("kilj->ijkl", dgamma) - np.einsum("likj->ijkl", dgamma)
    r += np.einsum("ikm,mlj->ijkl", gamma, gamma)
    r -= np.einsum("ilm,mkj->ijkl", gamma, gamma)
    return r


def central_difference(f, point, j, h=1e-5):
    p = np.asarray(point, dtype=float)
    e = np.zeros(len(p))
    e[j] = h
    return (f(p + e) - f(p - e)) / (2.0 * h)


# ---------------------------------------------------------------------------
# common structures


SPHERE_COORDS = ["theta", "phi"]


def sphere_metric():
    return MetricField.from_lower_triangle([["1"], ["0", "sin(theta)^2"]],
                                           SPHERE_COORDS)


def sphere_metric_at(p):
    return np.diag([1.0, np.sin(p[0]) ** 2])


POLY3_COORDS = ["x", "y", "z"]
POLY3_LOWER = [
    ["1 + 0.1*x^2"],
    ["0.1*x*y", "1 + 0.1*(y^2 + z^2)"],
    ["0.05*z", "0.1*x*z", "1 + 0.1*(x^2 + y^2)"],
]


def poly3_metric():
    """Curved polynomial metric g = I + 0.1*S(x), positive definite on the
    unit box."""
    return MetricField.from_lower_triangle(POLY3_LOWER, POLY3_COORDS)


def warped_acs_manifold():
    """A curved metric chart carrying a compatible almost contact structure
    and K = 0: g = diag(f, f, 1) with f = 1 + (x^2 + y^2)/4, the standard
    block phi and xi = d/dz."""
    coords = ["x", "y", "z"]
    f = "1 + 0.25*(x^2 + y^2)"
    g = MetricField.from_lower_triangle([[f], ["0", f], ["0", "0", "1"]], coords)
    phi = [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]
    xi = ["0", "0", "1"]
    return ChartManifold(coords, g, phi, xi, zero_difference_tensor(coords),
                         name="warped_zero_k")


@pytest.fixture(scope="session")
def flat3():
    return example_flat_acs(1).manifold


@pytest.fixture(scope="session")
def flat5():
    return example_flat_acs(2).manifold


@pytest.fixture(scope="session")
def r3():
    return example_r3_negative().manifold


@pytest.fixture(scope="session")
def warped():
    return warped_acs_manifold()


def sample_points(m, count=4):
    pts = m.grid_points()
    step = max(1, len(pts) // count)
    return pts[::step][:count]


def inadmissible_k_manifold():
    """Flat R^3 structure whose K has K(xi, xi) not parallel to xi; violates
    the Lemma 4.3 consequence of the ACS condition."""
    coords = ["x", "y", "z"]
    g = MetricField.from_lower_triangle([["1"], ["0", "1"], ["0", "0", "1"]],
                                        coords)
    phi = [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]
    xi = ["0", "0", "1"]
    k = [[["0"] * 3 for _ in range(3)] for _ in range(3)]
    k[0][2][2] = "1"   # K(xi, xi) = d/dx
    return ChartManifold(coords, g, phi, xi,
                         ExplicitDifferenceTensor(k, coords),
                         name="inadmissible_k")


# ---------------------------------------------------------------------------
# acceptance criterion bookkeeping (shared with test_acceptance.py)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
