"""Weighted Hardy-space atoms, their primitives, and the dyadic moment partition.

Atoms live on a straight boundary line through the origin (the flat boundary,
or one face of the quadrant), parameterized by signed arc length s, so that
|x| = |s| and the surface ball Delta_rho(s_a) is the interval
[s_a - rho, s_a + rho].  An atom is stored panel-wise: Gauss-Legendre samples
on panels whose edges include every jump of the atom.
"""

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ZarembaError
from .geometry import GraphDomain, power_ball_integral
from .quadrature import gauss_legendre, lagrange_matrix

MEAN_RTOL = 1e-10
SUP_SLACK = 1e-10


def ball_measure(center, rho, epsilon):
    """sigma_eps of [center - rho, center + rho] on a line through the origin."""
    return power_ball_integral(GraphDomain.flat(), float(center), float(rho), float(epsilon))


@dataclass(frozen=True)
class AtomSpec:
    center: float
    rho: float
    epsilon: float
    edges: np.ndarray
    values: np.ndarray
    shape: str = "custom"

    @property
    def order(self):
        return self.values.shape[1]

    @property
    def nodes(self):
        gx, _ = gauss_legendre(self.order)
        a, b = self.edges[:-1, None], self.edges[1:, None]
        return (0.5 * (a + b) + 0.5 * (b - a) * gx).ravel()

    @property
    def weights(self):
        _, gw = gauss_legendre(self.order)
        return (0.5 * np.diff(self.edges)[:, None] * gw).ravel()

    @property
    def support(self):
        return float(self.edges[0]), float(self.edges[-1])

    @property
    def ball_measure(self):
        return ball_measure(self.center, self.rho, self.epsilon)

    @property
    def sup(self):
        return float(np.abs(self.values).max())

    @property
    def integral(self):
        return float(np.dot(self.weights, self.values.ravel()))

    @property
    def canonical(self):
        """Atoms for the weighted spaces are taken with epsilon <= 0."""
        return self.epsilon <= 0.0

    def evaluate(self, s):
        """Panel-wise polynomial interpolant of the samples; zero off the support."""
        s = np.asarray(s, dtype=float)
        out = np.zeros(s.shape)
        flat_s, flat_out = s.ravel(), out.ravel()
        idx = np.searchsorted(self.edges, flat_s, side="right") - 1
        inside = (flat_s >= self.edges[0]) & (flat_s < self.edges[-1])
        for j in np.unique(idx[inside]):
            sel = inside & (idx == j)
            a, b = self.edges[j], self.edges[j + 1]
            t = (2.0 * flat_s[sel] - a - b) / (b - a)
            flat_out[sel] = lagrange_matrix(self.order, t) @ self.values[j]
        return flat_out.reshape(s.shape)

    def validate(self):
        """Check support, mean-zero and the sup normalization; raise on failure."""
        lo, hi = self.support
        tol = 1e-12 * max(1.0, abs(self.center) + self.rho)
        if lo < self.center - self.rho - tol or hi > self.center + self.rho + tol:
            raise ZarembaError("atom support leaves its ball")
        if abs(self.integral) > MEAN_RTOL * 2.0 * self.rho * max(self.sup, 1e-300):
            raise ZarembaError(f"atom is not mean-zero: integral {self.integral:.3e}")
        limit = 1.0 / self.ball_measure
        if self.sup > limit * (1.0 + SUP_SLACK):
            raise ZarembaError(f"atom sup {self.sup:.6g} exceeds 1/sigma_eps(ball) = {limit:.6g}")
        return self

    def dilate(self, factor):
        """The atom a(s/factor) on the dilated ball, renormalized by the sup rule."""
        scale = ball_measure(self.center, self.rho, self.epsilon) / ball_measure(
            factor * self.center, factor * self.rho, self.epsilon)
        return AtomSpec(factor * self.center, factor * self.rho, self.epsilon,
                        factor * self.edges, scale * self.values, self.shape)

    def to_json(self):
        doc = {"center": self.center, "rho": self.rho, "epsilon": self.epsilon, "shape": self.shape}
        if self.shape == "custom":
            doc["samples"] = self.values.ravel().tolist()
            doc["edges"] = self.edges.tolist()
        return json.dumps(doc, sort_keys=True)


def atom_edges(center, rho, panels_per_half=8):
    """Panel edges on the ball, split at the center and at the origin when inside."""
    left = np.linspace(center - rho, center, panels_per_half + 1)
    right = np.linspace(center, center + rho, panels_per_half + 1)
    edges = np.union1d(left, right)
    if center - rho < 0.0 < center + rho:
        edges = np.union1d(edges, [0.0])
    return edges


def make_atom(center, rho, shape="haar", epsilon=0.0, samples=None, order=8, panels_per_half=8):
    """Normalized mean-zero atom on [center - rho, center + rho].

    shape: "haar" (+c then -c), "bump-pair" (-c sin(pi (s - center)/rho)) or
    "custom" with ``samples`` a callable of s or an array on the atom nodes.
    Custom samples are scaled to sup = c and must already be mean-zero.
    """
    if not rho > 0.0:
        raise ZarembaError("atom radius must be positive")
    if not epsilon > -1.0:
        raise ZarembaError("atom weight exponent must exceed -1")
    if epsilon > 0.0:
        warnings.warn("atoms with epsilon > 0 are outside the canonical range", stacklevel=2)
    c = 1.0 / ball_measure(center, rho, epsilon)
    edges = atom_edges(center, rho, panels_per_half)
    gx, _ = gauss_legendre(order)
    nodes = (0.5 * (edges[:-1, None] + edges[1:, None])
             + 0.5 * np.diff(edges)[:, None] * gx)
    if shape == "haar":
        values = np.where(nodes < center, c, -c)
    elif shape == "bump-pair":
        values = -c * np.sin(math.pi * (nodes - center) / rho)
    elif shape == "custom":
        if samples is None:
            raise ZarembaError("custom atoms need samples")
        raw = samples(nodes) if callable(samples) else np.asarray(samples, dtype=float).reshape(nodes.shape)
        peak = np.abs(raw).max()
        if peak == 0.0:
            raise ZarembaError("custom atom samples are identically zero")
        values = c * raw / peak
    else:
        raise ZarembaError(f"unknown atom shape {shape!r}")
    return AtomSpec(float(center), float(rho), float(epsilon), edges, values, shape).validate()


# primitives

@dataclass(frozen=True)
class H11Primitive:
    """A(s) = integral of a d sigma from base_point to s, sampled on the atom nodes."""

    base_point: float
    atom: AtomSpec
    nodes: np.ndarray
    values: np.ndarray
    offset: float

    def __call__(self, s):
        return _closed_primitive(self.atom, np.asarray(s, dtype=float)) - self.offset


def _closed_primitive(atom, s):
    """Primitive from the left support edge, evaluated anywhere on the line."""
    p = atom.order
    h = 0.5 * np.diff(atom.edges)
    panel_totals = h * (atom.values @ gauss_legendre(p)[1])
    starts = np.concatenate([[0.0], np.cumsum(panel_totals)])
    s = np.asarray(s, dtype=float)
    out = np.zeros(s.shape)
    flat_s, flat_out = s.ravel(), out.ravel()
    flat_out[flat_s >= atom.edges[-1]] = starts[-1]
    idx = np.searchsorted(atom.edges, flat_s, side="right") - 1
    inside = (flat_s >= atom.edges[0]) & (flat_s < atom.edges[-1])
    for j in np.unique(idx[inside]):
        sel = inside & (idx == j)
        a, b = atom.edges[j], atom.edges[j + 1]
        t = (2.0 * flat_s[sel] - a - b) / (b - a)
        # integrate the panel interpolant from a to s: exact for degree < p
        L = _partial_integrals(p, t)
        flat_out[sel] = starts[j] + h[j] * (L @ atom.values[j])
    return flat_out.reshape(s.shape)


def _partial_integrals(n, t):
    """Row i: weights w_j with sum_j w_j f_j = int_{-1}^{t_i} of the interpolant."""
    gx, gw = gauss_legendre(n)
    t = np.atleast_1d(t)
    # Gauss rule on [-1, t_i] applied to the Lagrange basis
    half = 0.5 * (t + 1.0)
    pts = -1.0 + half[:, None] * (gx + 1.0)[None, :]
    out = np.empty((len(t), n))
    for i in range(len(t)):
        out[i] = half[i] * (gw @ lagrange_matrix(n, pts[i]))
    return out


def h11_primitive(atom, x0=None):
    """Primitive of the atom with base point x0 (default: the left support edge)."""
    base = atom.support[0] if x0 is None else float(x0)
    offset = float(_closed_primitive(atom, np.array([base]))[0])
    nodes = atom.nodes
    return H11Primitive(base, atom, nodes, _closed_primitive(atom, nodes) - offset, offset)


def h11_seminorm_pair_check(atom, samples_per_panel=64):
    """max |x|**(-eps) |A(x)| for the primitive based at 0.

    If 0 lies inside the support the primitive based at 0 does not close, so
    the closed primitive (based at the left edge) is used instead; either way
    A vanishes off the support and the max is taken over a dense sample of it.
    """
    lo, hi = atom.support
    base = 0.0 if not lo < 0.0 < hi else lo
    A = h11_primitive(atom, base)
    t = np.linspace(0.0, 1.0, samples_per_panel + 1)
    s = np.unique((atom.edges[:-1, None] + np.diff(atom.edges)[:, None] * t).ravel())
    vals = np.abs(A(s))
    with np.errstate(divide="ignore", invalid="ignore"):
        weighted = np.where(s == 0.0, 0.0 if atom.epsilon < 0 else vals, np.abs(s) ** (-atom.epsilon) * vals)
    if atom.epsilon > 0:
        weighted = np.where(s == 0.0, np.inf if np.any(vals[s == 0.0] > 0) else 0.0, weighted)
    return float(np.max(weighted))


# moment partition

@dataclass(frozen=True)
class MomentPartition:
    blocks: list
    radii: np.ndarray
    masks: list
    means: np.ndarray

    def reconstruct(self):
        return np.sum(self.blocks, axis=0)

    def block_integrals(self, weights):
        return np.array([np.dot(weights, b) for b in self.blocks])

    def weighted_l1(self, mesh, epsilon=0.0):
        w = mesh.weights * np.hypot(*mesh.points.T) ** epsilon
        return np.array([np.dot(w, np.abs(b)) for b in self.blocks])

    def to_csv(self, mesh, epsilon=0.0):
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["k", "L1_weighted_norm", "support_radius"])
        for k, (n, r) in enumerate(zip(self.weighted_l1(mesh, epsilon), self.radii)):
            out.writerow([k, repr(float(n)), repr(float(r))])
        return buf.getvalue()


def moment_partition(g, mesh, center, rho, levels=None, mean_rtol=MEAN_RTOL):
    """Split mean-zero samples g into blocks b_k with supp b_k in Delta_k = Delta_{2^k rho}(center).

        b_0 = chi_0 (g - m_0)
        b_k = chi_{Delta_k minus Delta_{k-1}} g + chi_{k-1} m_{k-1} - chi_k m_k
        b_K = chi_{Delta_K minus Delta_{K-1}} g + chi_{K-1} m_{K-1}

    where m_k is the (discrete) mean of g over Delta_k.  The blocks sum to g
    exactly, blocks k < K integrate to zero exactly, and b_K integrates to the
    total integral of g.  By default Delta_K is the first dyadic ball holding
    every node; with fewer ``levels`` the nodes outside Delta_K go into b_K.
    """
    g = np.asarray(g, dtype=float)
    w = mesh.weights
    total = float(np.dot(w, g))
    scale = float(np.dot(w, np.abs(g)))
    if abs(total) > mean_rtol * max(scale, 1e-300):
        raise ZarembaError(f"data is not mean-zero: integral {total:.3e} against mass {scale:.3e}")
    center = np.asarray(center, dtype=float)
    dist = np.hypot(*(mesh.points - center).T)
    if levels is None:
        levels = max(1, int(math.ceil(math.log2(max(dist.max(), rho) / rho))) + 1)
    radii = rho * 2.0 ** np.arange(levels + 1)
    masks = [dist < r for r in radii]
    means = np.array([np.dot(w[m], g[m]) / w[m].sum() if m.any() else 0.0 for m in masks])
    blocks = [np.where(masks[0], g - means[0], 0.0)]
    for k in range(1, levels + 1):
        ring = masks[k] & ~masks[k - 1]
        b = np.where(ring, g, 0.0) + np.where(masks[k - 1], means[k - 1], 0.0)
        if k < levels:
            b = b - np.where(masks[k], means[k], 0.0)
        blocks.append(b)
    outside = ~masks[-1]
    if outside.any():
        blocks[-1] = blocks[-1] + np.where(outside, g, 0.0)
    return MomentPartition(blocks, radii, masks, means)


def greens_trace_partition(atom, levels=44, mean_rtol=MEAN_RTOL):
    """Moment partition of the Neumann trace of the quadrant atomic solution.

    The trace is the atom on N and the Dirichlet-face flux on D.  Its total
    integral vanishes only up to the flux lost beyond the mesh end at
    2**levels rho, which decays like 2**(-levels); 44 levels put it near 1e-14.
    """
    from .greens import atom_neumann_trace, atom_trace_mesh

    mesh = atom_trace_mesh(atom, levels)
    g = atom_neumann_trace(atom, mesh.arc)
    part = moment_partition(g, mesh, (atom.center, 0.0), atom.rho, mean_rtol=mean_rtol)
    return mesh, g, part
