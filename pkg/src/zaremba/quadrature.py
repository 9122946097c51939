"""Gauss-Legendre panel rules and polynomial interpolation helpers."""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    if n < 1:
        raise ValueError("rule needs at least one node")
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=None)
def barycentric_weights(n):
    x, _ = gauss_legendre(n)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    bw = 1.0 / diff.prod(axis=1)
    bw.setflags(write=False)
    return bw


def lagrange_matrix(n, t):
    """Values of the n Lagrange basis polynomials (on Gauss nodes) at points t.

    Returns an array of shape (len(t), n).
    """
    x, _ = gauss_legendre(n)
    bw = barycentric_weights(n)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    d = t[:, None] - x[None, :]
    exact = d == 0.0
    d[exact] = 1.0
    terms = bw[None, :] / d
    out = terms / terms.sum(axis=1, keepdims=True)
    rows = exact.any(axis=1)
    if rows.any():
        out[rows] = exact[rows].astype(float)
    return out


@lru_cache(maxsize=None)
def cumulative_matrix(n):
    """Matrix C with (C @ f)[i] = integral of the interpolant of f from -1 to x_i."""
    x, _ = gauss_legendre(n)
    xq, wq = gauss_legendre(n)
    C = np.empty((n, n))
    for i, xi in enumerate(x):
        # map [-1, 1] onto [-1, xi]
        half = 0.5 * (xi + 1.0)
        t = -1.0 + half * (xq + 1.0)
        C[i] = half * (wq[:, None] * lagrange_matrix(n, t)).sum(axis=0)
    C.setflags(write=False)
    return C


def graded_subintervals(a, b, t_star, depth, ratio=0.5):
    """Split [a, b] into pieces that shrink geometrically toward t_star.

    t_star may lie inside, at an end of, or outside [a, b]; pieces cluster at
    the point of [a, b] nearest to it.
    """
    t0 = min(max(t_star, a), b)
    pieces = []
    for length, sign in ((b - t0, 1.0), (t0 - a, -1.0)):
        if length <= 0.0:
            continue
        offsets = np.concatenate([[0.0], length * ratio ** np.arange(depth, -1, -1)])
        pts = t0 + sign * offsets
        pieces.extend((min(p, q), max(p, q)) for p, q in zip(pts[:-1], pts[1:]))
    return pieces
