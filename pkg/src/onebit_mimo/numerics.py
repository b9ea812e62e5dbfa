"""Scalar special functions, Gaussian expectations, and 2-D quadrature."""

import numpy as np
from scipy.special import erfc, log_ndtr

LOG2E = np.log2(np.e)

_GH_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def q_function(xi):
    """Gaussian tail probability Pr[N(0,1) > xi].

    Computed via erfc to keep the far tails accurate; saturates cleanly
    to 0/1 for |xi| beyond ~38.
    """
    return 0.5 * erfc(np.asarray(xi, dtype=float) / np.sqrt(2.0))


def log_q_function(xi):
    """log of q_function, usable deep in the tail (no underflow)."""
    return log_ndtr(-np.asarray(xi, dtype=float))


def db_from_linear(z):
    return 10.0 * np.log10(z)


def linear_from_db(z_db):
    return 10.0 ** (np.asarray(z_db, dtype=float) / 10.0)


def binary_entropy(p):
    """Binary entropy in bits, with the convention 0*log2(0) = 0."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    inner = (p > 0) & (p < 1)
    pi = p[inner]
    out[inner] = -pi * np.log2(pi) - (1.0 - pi) * np.log2(1.0 - pi)
    return out if out.ndim else float(out)


def _hermegauss(nodes: int):
    if nodes not in _GH_CACHE:
        x, w = np.polynomial.hermite_e.hermegauss(nodes)
        _GH_CACHE[nodes] = (x, w / np.sqrt(2.0 * np.pi))
    return _GH_CACHE[nodes]


def gaussian_expectation(f, nodes: int = 96) -> float:
    """E[f(xi)] for xi ~ N(0,1), by Gauss-Hermite quadrature.

    f must accept a vector of evaluation points.
    """
    if nodes < 2:
        raise ValueError(f"need at least 2 quadrature nodes, got {nodes}")
    x, w = _hermegauss(nodes)
    return float(np.dot(w, f(x)))


class QuadratureError(RuntimeError):
    pass


def quad2d_positive_quadrant(f, tol: float = 1e-9, upper: float = 6.0 / np.sqrt(2.0),
                             max_level: int = 12) -> float:
    """Integrate f(gamma, xi) over [0, inf)^2 for integrands with e^{-2 r^2} decay.

    Tensor-product composite Simpson on the truncated square [0, upper]^2,
    refined until two successive levels agree within tol.
    """
    prev = None
    for level in range(4, max_level + 1):
        n = 2 ** level  # panels per axis, even
        t = np.linspace(0.0, upper, n + 1)
        h = t[1] - t[0]
        wt = np.ones(n + 1)
        wt[1:-1:2] = 4.0
        wt[2:-1:2] = 2.0
        wt *= h / 3.0
        g, x = np.meshgrid(t, t, indexing="ij")
        vals = f(g, x)
        est = float(wt @ vals @ wt)
        if prev is not None and abs(est - prev) <= tol:
            return est
        prev = est
    raise QuadratureError(f"quad2d did not reach tol={tol} at {2**max_level} panels")
