"""Mixed Green's function of the quadrant by reflection, Hoelder probes and atomic solutions.

On Q = {x1 > 0, x2 > 0} with Dirichlet face D = {x1 = 0} and Neumann face
N = {x2 = 0},

    M(z, w) = G(z, w) - G(z, R1 w) + G(z, R2 w) - G(z, R1 R2 w),

with G(z, w) = -(1/2pi) log|z - w|, R1 the reflection across D and R2 the
reflection across N.  Points are complex numbers or (x1, x2) pairs.

The quadrant boundary is parameterized by signed arc length s: s < 0 is the
point (0, -s) on D and s >= 0 is (s, 0) on N.
"""

import csv
import io
import math
from typing import NamedTuple

import numpy as np

from .errors import SingularPointError, ZarembaError
from .geometry import BoundaryMesh
from .quadrature import gauss_legendre

TWO_PI = 2.0 * math.pi
DEFAULT_DELTA = 0.5
NEAR_DEPTH = 30


def _as_complex(p):
    p = np.asarray(p)
    if np.iscomplexobj(p):
        return p.astype(complex)
    p = p.astype(float)
    if p.shape and p.shape[-1] == 2:
        return p[..., 0] + 1j * p[..., 1]
    return p.astype(complex)


def _images(w):
    """w, R1 w, R2 w, R1 R2 w with their signs in M."""
    return ((w, 1.0), (-np.conj(w), -1.0), (np.conj(w), 1.0), (-w, -1.0))


def greens_eval(z, w):
    """M(z, w), vectorized over broadcastable z and w."""
    z, w = _as_complex(z), _as_complex(w)
    dists = [np.abs(z - img) for img, _ in _images(w)]
    if any(np.any(d == 0.0) for d in dists):
        raise SingularPointError("z coincides with w or one of its reflections")
    # one log of a ratio keeps the Dirichlet cancellation exact
    return -np.log((dists[0] * dists[2]) / (dists[1] * dists[3])) / TWO_PI


def greens_grad_w(z, w):
    """Gradient of M(z, .) at w, as an array with last axis (d/dw1, d/dw2)."""
    z, w = _as_complex(z), _as_complex(w)
    out = np.zeros(np.broadcast(z, w).shape + (2,))
    # d/dw of -(1/2pi) log|z - R w| = -(1/2pi) R (R w - z)/|R w - z|^2, R symmetric
    for (img, sign), (r1, r2) in zip(_images(w), ((1, 1), (-1, 1), (1, -1), (-1, -1))):
        d = img - z
        d2 = np.abs(d) ** 2
        if np.any(d2 == 0.0):
            raise SingularPointError("z coincides with w or one of its reflections")
        out[..., 0] += sign * r1 * d.real / d2
        out[..., 1] += sign * r2 * d.imag / d2
    return out / -TWO_PI


def greens_grad_z(z, w):
    """Gradient of M(., w) at z, through the symmetry M(z, w) = M(w, z)."""
    return greens_grad_w(w, z)


def quadrant_point(s):
    """Complex boundary point of the quadrant at signed arc length s."""
    s = np.asarray(s, dtype=float)
    return np.where(s < 0.0, 1j * (-s), s + 0j)


class HolderSample(NamedTuple):
    lhs: float
    ratio: float


def greens_holder_probe(z, zeta, w):
    """|M(z, zeta) - M(z, w)| and |zeta - w| / |z - zeta|, for |zeta - w| < |z - zeta|/2."""
    z, zeta, w = (complex(_as_complex(p)) for p in (z, zeta, w))
    ratio = abs(zeta - w) / abs(z - zeta)
    if not ratio < 0.5:
        raise ZarembaError("Hoelder probe needs |zeta - w| < |z - zeta| / 2")
    if zeta == w:
        return HolderSample(0.0, 0.0)
    return HolderSample(float(abs(greens_eval(z, zeta) - greens_eval(z, w))), ratio)


class PowerFit(NamedTuple):
    C: float
    delta: float
    r2: float


def power_fit(x, y):
    """Least-squares fit y = C x**delta in log-log coordinates, with r^2."""
    lx, ly = np.log(np.asarray(x, dtype=float)), np.log(np.asarray(y, dtype=float))
    slope, icpt = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + icpt)
    ss = np.sum((ly - ly.mean()) ** 2)
    r2 = 1.0 - np.sum(resid ** 2) / ss if ss > 0 else 1.0
    return PowerFit(float(math.exp(icpt)), float(slope), float(r2))


def holder_fit(z, zeta, distances, direction=1.0):
    """Fit |M(z, zeta) - M(z, zeta + d*direction)| ~ C d**delta over the given distances."""
    zeta = complex(_as_complex(zeta))
    z = complex(_as_complex(z))
    rows = [greens_holder_probe(z, zeta, zeta + d * direction) for d in distances]
    return power_fit([r.ratio for r in rows], [r.lhs for r in rows])


def log_bound_constant(z, w):
    """Largest |M(z, w)| / (1 + |log|z - w||) over the given pairs."""
    z, w = _as_complex(z), _as_complex(w)
    return float(np.max(np.abs(greens_eval(z, w)) / (1.0 + np.abs(np.log(np.abs(z - w))))))


# atomic solutions

class AtomSolution(NamedTuple):
    value: float
    near_singular: bool


def _panel_kernel_integral(kernel, atom, j, depth, tol):
    """Integral of kernel(s) * a(s) over panel j with adaptive bisection."""
    a, b = atom.edges[j], atom.edges[j + 1]
    p = atom.order
    gx, gw = gauss_legendre(p)

    def rule(lo, hi):
        s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx
        return 0.5 * (hi - lo) * np.dot(gw, kernel(s) * atom.evaluate(np.clip(s, a, np.nextafter(b, a))))

    # the kernel carries absolute rounding of order eps (a log of O(1) ratios), so
    # a purely relative test never stops where M is small, e.g. next to D
    floor = 64.0 * np.finfo(float).eps * float(np.abs(atom.values[j]).max())

    def rec(lo, hi, whole, level):
        mid = 0.5 * (lo + hi)
        left, right = rule(lo, mid), rule(mid, hi)
        err = abs(left + right - whole)
        if level >= depth or err <= max(tol * (abs(left) + abs(right)), floor * (hi - lo)):
            return left + right
        return rec(lo, mid, left, level + 1) + rec(mid, hi, right, level + 1)

    return rec(a, b, rule(a, b), 0)


def _atom_integral(kernel, atom, near, tol=1e-12):
    if not near:
        s = atom.nodes
        return float(np.dot(atom.weights, kernel(s) * atom.values.ravel()))
    return float(sum(_panel_kernel_integral(kernel, atom, j, NEAR_DEPTH, tol)
                     for j in range(len(atom.edges) - 1)))


def _check_atom_on_N(atom):
    lo, _ = atom.support
    if lo < -1e-14 * atom.rho:
        raise ZarembaError("atom support must lie in the Neumann face (s >= 0)")


def _is_near(atom, z):
    lo, hi = atom.support
    seg_d = np.abs(z - np.clip(z.real, lo, hi))
    return bool(seg_d < 2.0 * atom.rho)


def atom_solution(atom, z):
    """u(z) = integral over N of M(z, x) a(x) d sigma(x): Neumann data a, zero Dirichlet data."""
    _check_atom_on_N(atom)
    z = complex(_as_complex(z))
    near = _is_near(atom, z)
    value = _atom_integral(lambda s: greens_eval(z, s + 0j), atom, near)
    return AtomSolution(value, near)


def atom_solution_grad(atom, z):
    """Gradient of the atomic solution at z."""
    _check_atom_on_N(atom)
    z = complex(_as_complex(z))
    near = _is_near(atom, z)
    g = [_atom_integral(lambda s, i=i: greens_grad_z(z, s + 0j)[..., i], atom, near) for i in (0, 1)]
    return np.array(g)


def atom_neumann_trace(atom, s):
    """du/dnu of the atomic solution at quadrant arc positions s.

    On N the trace is the atom itself; on D (s < 0, the point (0, -s)) it is
    -du/dx1, the flux through the Dirichlet face.
    """
    s = np.asarray(s, dtype=float)
    out = np.where(s >= 0.0, atom.evaluate(np.where(s >= 0.0, s, 0.0)), 0.0)
    for i in np.flatnonzero(s < 0.0):
        out[i] = -atom_solution_grad(atom, 1j * (-s[i]))[0]
    return out


def quadrant_mesh(edges, nodes_per_panel=8):
    """BoundaryMesh of the quadrant boundary on the given sorted arc-length panel edges."""
    edges = np.asarray(edges, dtype=float)
    if np.any(np.diff(edges) <= 0.0):
        raise ZarembaError("panel edges must be strictly increasing")
    gx, gw = gauss_legendre(nodes_per_panel)
    a, b = edges[:-1, None], edges[1:, None]
    s = (0.5 * (a + b) + 0.5 * (b - a) * gx).ravel()
    w = (0.5 * (b - a) * gw).ravel()
    z = quadrant_point(s)
    normals = np.where((s < 0.0)[:, None], [-1.0, 0.0], [0.0, -1.0])
    panels = np.stack([edges[:-1], edges[1:]], axis=-1)
    return BoundaryMesh(np.stack([z.real, z.imag], axis=-1), s, normals, w, panels,
                        np.repeat(np.arange(len(panels)), nodes_per_panel), nodes_per_panel,
                        float(max(-edges[0], edges[-1])))


def atom_trace_mesh(atom, levels, panels_per_level=2, nodes_per_panel=8):
    """Quadrant mesh out to 2**levels * rho from the atom center, aligned with the atom's panels."""
    extent = atom.center + 2.0 ** levels * atom.rho
    dyadic = extent * 0.5 ** np.arange(levels + 12)
    shells = np.concatenate([[0.0], dyadic[::-1]])
    fine = np.concatenate([np.linspace(a, b, panels_per_level + 1)[:-1] for a, b in zip(shells[:-1], shells[1:])]
                          + [[extent]])
    right = np.union1d(fine, atom.edges)
    left = -fine[::-1]
    return quadrant_mesh(np.union1d(left, right), nodes_per_panel)


def decay_scan(atom, factors=None, direction=math.pi / 4):
    """|u(z)| at z = x_a + d e^{i direction} for d = factor * rho, with a power-law fit."""
    if factors is None:
        factors = 2.0 ** np.arange(1, 10)
    d = np.asarray(factors, dtype=float) * atom.rho
    z = atom.center + d * np.exp(1j * direction)
    vals = np.array([abs(atom_solution(atom, zz).value) for zz in z])
    fit = power_fit(d / atom.rho, vals)
    return d, vals, PowerFit(fit.C, -fit.delta, fit.r2)


def decay_csv(distances, values, fit):
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["log_distance", "log_value", "fitted_delta", "fit_r2"])
    for d, v in zip(distances, values):
        out.writerow([repr(float(np.log(d))), repr(float(np.log(v))), repr(fit.delta), repr(fit.r2)])
    return buf.getvalue()
