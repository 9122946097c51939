"""Nystroem single-layer solver for the mixed problem on truncated domains.

The domain Omega cap B(0, R) is closed by the arc Omega cap dB(0, R).  The
solution is sought as a single-layer potential

    u(z) = S[rho](z) = -(1/2pi) int log|z - q| rho(q) dsigma(q)

over the closed contour.  Rows on D and on the arc impose S[rho] = data; rows
on N impose the interior normal-derivative limit

    (1/2) rho(x) + K*[rho](x) = f_N(x),
    K*[rho](x) = -(1/2pi) int (x - q).nu(x) / |x - q|^2 rho(q) dsigma(q).

Panels carry Gauss-Legendre nodes and are graded geometrically toward every
corner of the contour.  Entries for a target on or near a panel are computed
by product integration against the panel's Lagrange basis, using Gauss rules
on subintervals graded toward the nearest point of the panel.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np
import scipy.linalg as sla
from scipy.linalg import lapack

from .errors import SingularPointError, SolverError, ZarembaError
from .fields import SectorMap
from .geometry import Sector, _exit_x1
from .harmonic import TwoSidedReport, _rellich_density
from .quadrature import gauss_legendre, graded_subintervals, lagrange_matrix

INV_2PI = 1.0 / (2.0 * math.pi)
NEAR_FACTOR = 1.5
SELF_DEPTH = 40
COND_LIMIT = 1e12


# contour geometry

@dataclass(frozen=True)
class Panel:
    """A straight segment a -> b or a circular arc of radius R from angle ta to tb (ccw)."""

    kind: str
    a: complex = 0j
    b: complex = 0j
    R: float = 0.0
    ta: float = 0.0
    tb: float = 0.0
    label: str = ""

    def point(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "line":
            return 0.5 * (self.a + self.b) + 0.5 * (self.b - self.a) * t
        th = 0.5 * (self.ta + self.tb) + 0.5 * (self.tb - self.ta) * t
        return self.R * np.exp(1j * th)

    def dpoint(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "line":
            return np.full(t.shape, 0.5 * (self.b - self.a), dtype=complex)
        th = 0.5 * (self.ta + self.tb) + 0.5 * (self.tb - self.ta) * t
        return 0.5 * (self.tb - self.ta) * 1j * self.R * np.exp(1j * th)

    def displacement(self, t_star, t):
        """point(t_star) - point(t), free of cancellation for t near t_star."""
        t = np.asarray(t, dtype=float)
        if self.kind == "line":
            return 0.5 * (self.b - self.a) * (t_star - t)
        half = 0.5 * (self.tb - self.ta)
        th = 0.5 * (self.ta + self.tb) + half * t_star
        return -self.R * np.exp(1j * th) * np.expm1(1j * half * (t - t_star))

    def normal(self, t):
        d = self.dpoint(t)
        return -1j * d / np.abs(d)

    @property
    def length(self):
        if self.kind == "line":
            return abs(self.b - self.a)
        return self.R * (self.tb - self.ta)

    def nearest_param(self, x):
        """Parameter in [-1, 1] of the panel point nearest to x."""
        if self.kind == "line":
            d = self.b - self.a
            t = ((x - self.a) * np.conj(d)).real / abs(d) ** 2
            return float(np.clip(2.0 * t - 1.0, -1.0, 1.0))
        th = np.angle(x * np.exp(-0.5j * (self.ta + self.tb)))
        return float(np.clip(2.0 * th / (self.tb - self.ta), -1.0, 1.0))

    def distance(self, x):
        return float(abs(x - self.point(self.nearest_param(x))))


@dataclass(frozen=True)
class SolverGrading:
    """Panels and Gauss order for the closed contour.

    Every straight or curved piece is split at its midpoint and each half is
    graded toward its corner end: ``levels`` dyadic shells toward the D/N
    junction at the origin and ``corner_levels`` toward every other corner,
    each shell cut into ``panels_per_level`` equal panels.
    """

    order: int = 8
    levels: int = 11
    corner_levels: int = 9
    panels_per_level: int = 1

    def __post_init__(self):
        if self.order < 2 or self.levels < 0 or self.corner_levels < 0 or self.panels_per_level < 1:
            raise ZarembaError("invalid solver grading")

    def refined(self):
        """Every panel bisected."""
        return SolverGrading(self.order, self.levels, self.corner_levels, 2 * self.panels_per_level)

    def deepened(self):
        """Twice as many dyadic shells at every corner, hence twice the panels."""
        return SolverGrading(self.order, 2 * self.levels + 1, 2 * self.corner_levels + 1,
                             self.panels_per_level)


def _half_edges(length, levels, k):
    """Edges in [0, length] graded toward 0: dyadic shells each split into k panels."""
    shells = np.concatenate([[0.0], length * 0.5 ** np.arange(levels, -1, -1)])
    return np.unique(np.concatenate([np.linspace(a, b, k + 1) for a, b in zip(shells[:-1], shells[1:])]))


def _piece_cuts(length, lv_start, lv_end, k):
    """Panel edges of a piece graded toward both ends, as (from-start, from-end) distance pairs.

    Edges near an end are stored as distances from that end so that deep
    grading survives rounding.
    """
    half = 0.5 * length
    left = [(u, length - u) for u in _half_edges(half, lv_start, k)]
    right = [(length - v, v) for v in _half_edges(half, lv_end, k)[::-1][1:]]
    return left + right


def _line_panels(a, b, cuts, label):
    unit = (b - a) / abs(b - a)
    pts = [a + u * unit if u <= v else b - v * unit for u, v in cuts]
    return [Panel("line", p, q, label=label) for p, q in zip(pts[:-1], pts[1:])]


def _arc_panels(R, ta, tb, cuts):
    ang = [ta + u / R if u <= v else tb - v / R for u, v in cuts]
    return [Panel("arc", R=R, ta=p, tb=q, label="arc") for p, q in zip(ang[:-1], ang[1:])]


@dataclass
class ContourMesh:
    panels: list
    order: int
    R: float
    grading: SolverGrading
    nodes: np.ndarray = field(init=False)
    weights: np.ndarray = field(init=False)
    normals: np.ndarray = field(init=False)
    labels: np.ndarray = field(init=False)
    panel_of: np.ndarray = field(init=False)
    params: np.ndarray = field(init=False)

    def __post_init__(self):
        gx, gw = gauss_legendre(self.order)
        self.nodes = np.concatenate([p.point(gx) for p in self.panels])
        self.weights = np.concatenate([gw * np.abs(p.dpoint(gx)) for p in self.panels])
        self.normals = np.concatenate([p.normal(gx) for p in self.panels])
        self.labels = np.repeat([p.label for p in self.panels], self.order)
        self.panel_of = np.repeat(np.arange(len(self.panels)), self.order)
        self.params = np.tile(gx, len(self.panels))
        if len(np.unique(self.nodes)) < len(self.nodes):
            raise ZarembaError("contour mesh has coincident nodes")

    def __len__(self):
        return len(self.nodes)

    def mask(self, label):
        return self.labels == label

    @property
    def tangents(self):
        return 1j * self.normals

    @property
    def arc_length(self):
        return float(self.weights.sum())


def circle_mesh(a, panels=16, order=8):
    """Uniform panels on the full circle |z| = a, labelled as arc (Dirichlet rows)."""
    th = np.linspace(0.0, 2.0 * math.pi, panels + 1)
    ps = [Panel("arc", R=a, ta=t0, tb=t1, label="arc") for t0, t1 in zip(th[:-1], th[1:])]
    return ContourMesh(ps, order, float(a), SolverGrading(order, 0, 0, 1))


def contour_mesh(domain, R, grading=None):
    """Closed contour: boundary inside B(0, R) from D to N, then the arc back (ccw)."""
    grading = grading or SolverGrading()
    graph = domain.as_graph()
    x_lo, x_hi = _exit_x1(graph, R, -1), _exit_x1(graph, R, +1)
    knots = np.union1d(graph.kinks_between(x_lo, x_hi), [x_lo, 0.0, x_hi])
    pts = graph.point(knots)
    corners = pts[:, 0] + 1j * pts[:, 1]
    k = grading.panels_per_level
    panels = []
    for j in range(len(corners) - 1):
        a, b = corners[j], corners[j + 1]
        label = "D" if knots[j + 1] <= 0.0 else "N"
        lv_a = grading.levels if knots[j] == 0.0 else grading.corner_levels
        lv_b = grading.levels if knots[j + 1] == 0.0 else grading.corner_levels
        panels += _line_panels(a, b, _piece_cuts(abs(b - a), lv_a, lv_b, k), label)
    ta = math.atan2(corners[-1].imag, corners[-1].real)
    tb = math.atan2(corners[0].imag, corners[0].real)
    if tb <= ta:
        tb += 2.0 * math.pi
    panels += _arc_panels(R, ta, tb, _piece_cuts(R * (tb - ta), grading.corner_levels,
                                                 grading.corner_levels, k))
    return ContourMesh(panels, grading.order, float(R), grading)


# kernels of the displacement d = x - q (complex) and the target normal nu

def _k_single(d, nu=None):
    return -INV_2PI * np.log(np.abs(d))


def _k_normal(d, nu):
    return -INV_2PI * (d * np.conj(nu)).real / np.abs(d) ** 2


def _k_grad(d, nu=None):
    """Gradient in x of the single-layer kernel, as a complex number g1 + i g2."""
    return -INV_2PI * d / np.abs(d) ** 2


def _product_row(kernel, panel, order, x, nu, on_panel_t=None):
    """Weights c_j with sum_j c_j rho_j = int_panel kernel(x, q) rho(q) dsigma, rho interpolated."""
    if on_panel_t is not None:
        t_star, depth = on_panel_t, SELF_DEPTH
    else:
        t_star = panel.nearest_param(x)
        d = max(panel.distance(x), 1e-300)
        depth = int(min(SELF_DEPTH, max(2, math.ceil(math.log2(panel.length / d)) + 4)))
    m = max(order + 8, 16)
    gx, gw = gauss_legendre(m)
    subs = np.array(graded_subintervals(-1.0, 1.0, t_star, depth))
    lo, hi = subs[:, :1], subs[:, 1:]
    t = (0.5 * (lo + hi) + 0.5 * (hi - lo) * gx).ravel()
    w = (0.5 * (hi - lo) * gw).ravel()
    d = panel.displacement(on_panel_t, t) if on_panel_t is not None else x - panel.point(t)
    vals = kernel(d, nu) * w * np.abs(panel.dpoint(t))
    return vals @ lagrange_matrix(order, t)


def _near_pairs(mesh, targets):
    """For each panel, the target indices lying within NEAR_FACTOR panel lengths."""
    out = []
    for p in mesh.panels:
        c = p.point(0.0)
        reach = 0.5 * p.length + NEAR_FACTOR * p.length
        cand = np.flatnonzero(np.abs(targets - c) < reach * (1.6 if p.kind == "arc" else 1.0))
        cand = [i for i in cand if p.distance(targets[i]) < NEAR_FACTOR * p.length]
        out.append(np.asarray(cand, dtype=int))
    return out


def _operator(mesh, kernel, targets, target_normals=None, self_map=None):
    """Dense matrix of the kernel from mesh nodes to targets with near corrections.

    ``self_map[i]`` gives (panel index, parameter) when target i is a mesh node.
    """
    nu = target_normals if target_normals is not None else np.zeros(len(targets), dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        A = kernel(targets[:, None] - mesh.nodes[None, :], nu[:, None]) * mesh.weights[None, :]
    p = mesh.order
    for j, idx in enumerate(_near_pairs(mesh, targets)):
        cols = slice(j * p, (j + 1) * p)
        panel = mesh.panels[j]
        for i in idx:
            t_on = None
            if self_map is not None and self_map[0][i] == j:
                t_on = self_map[1][i]
            A[i, cols] = _product_row(kernel, panel, p, targets[i], nu[i], t_on)
    return A


# data and solve

@dataclass
class MixedData:
    """Dirichlet data on D, Neumann data on N, Dirichlet closure data on the arc.

    Each entry is either a callable (f_D(z), f_N(z, nu), arc(z)) or an array of
    samples on the matching mesh nodes.
    """

    f_D: object
    f_N: object
    arc_data: object

    @classmethod
    def zero(cls):
        return cls(lambda z: np.zeros(np.shape(z)), lambda z, nu: np.zeros(np.shape(z)),
                   lambda z: np.zeros(np.shape(z)))

    @classmethod
    def from_harmonic(cls, u):
        """Manufactured data from a closed-form harmonic function."""
        def f_N(z, nu):
            # u_x - i u_y times nu1 + i nu2 has real part grad(u).nu
            return (u.cderiv(z) * nu).real
        return cls(lambda z: u(z), f_N, lambda z: u(z))

    def samples(self, mesh):
        b = np.zeros(len(mesh))
        for label, spec in (("D", self.f_D), ("N", self.f_N), ("arc", self.arc_data)):
            m = mesh.mask(label)
            if not m.any():
                continue
            if callable(spec):
                b[m] = spec(mesh.nodes[m], mesh.normals[m]) if label == "N" else spec(mesh.nodes[m])
            else:
                vals = np.asarray(spec, dtype=float)
                if vals.shape != (m.sum(),):
                    raise ZarembaError(f"{label} samples do not conform to the mesh")
                b[m] = vals
        return b


def _self_map(mesh):
    return mesh.panel_of, mesh.params


def assemble_mixed_system(domain, R, mesh, data):
    """Dense matrix and right-hand side of the mixed single-layer system."""
    x = mesh.nodes
    S = _operator(mesh, _k_single, x, None, _self_map(mesh))
    A = S
    N = mesh.mask("N")
    if N.any():
        K = _operator(mesh, _k_normal, x[N], mesh.normals[N],
                      (mesh.panel_of[N], mesh.params[N]))
        rows = np.flatnonzero(N)
        A = S.copy()
        A[rows] = K
        A[rows, rows] += 0.5
    return A, data.samples(mesh)


@dataclass
class BoundaryDensity:
    values: np.ndarray
    mesh: ContourMesh
    residual: float
    condition: float
    flagged: bool = False

    def potential(self, z):
        return eval_solution(self, z)[0]


def _condition_estimate(A, lu):
    gecon, = lapack.get_lapack_funcs(("gecon",), (A,))
    anorm = np.linalg.norm(A, 1)
    rcond, info = gecon(lu, anorm, norm="1")
    return math.inf if rcond == 0 else 1.0 / rcond


def solve_mixed(domain, R, mesh, data, strict=True):
    """Dense LU solve; flags (or raises, when strict) on conditioning above 1e12."""
    A, b = assemble_mixed_system(domain, R, mesh, data)
    lu, piv = sla.lu_factor(A)
    cond = _condition_estimate(A, lu)
    rho = sla.lu_solve((lu, piv), b)
    bn = np.linalg.norm(b)
    res = float(np.linalg.norm(A @ rho - b) / bn) if bn > 0 else float(np.linalg.norm(A @ rho))
    flagged = not (cond <= COND_LIMIT and res < 1e-10)
    if flagged and strict:
        raise SolverError(f"mixed system is ill-conditioned or inaccurate (cond ~ {cond:.3e}, residual {res:.3e})")
    return BoundaryDensity(rho, mesh, res, cond, flagged)


def eval_solution(density, z):
    """Potential and gradient of S[rho] at interior points z (array of complex)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    mesh = density.mesh
    dmin = np.min(np.abs(z[:, None] - mesh.nodes[None, :]), axis=1)
    for i, zz in enumerate(z):
        if dmin[i] == 0.0 or min(p.distance(zz) for p in mesh.panels) < 1e-14 * mesh.R:
            raise SingularPointError("evaluation point lies on the contour")
    S = _operator(mesh, _k_single, z)
    G = _operator(mesh, _k_grad, z)
    u = S @ density.values
    g = G @ density.values
    return u, np.stack([g.real, g.imag], axis=-1)


def boundary_traces(density):
    """Interior traces (u, du/dnu, du/dtau) at the contour nodes."""
    mesh = density.mesh
    x = mesh.nodes
    sm = _self_map(mesh)
    u = _operator(mesh, _k_single, x, None, sm) @ density.values
    un = 0.5 * density.values + _operator(mesh, _k_normal, x, mesh.normals, sm) @ density.values
    # tangential derivative by differentiating the panel interpolant of u
    p = mesh.order
    gx, _ = gauss_legendre(p)
    D = _diff_matrix(p)
    ut = np.empty_like(u)
    for j, panel in enumerate(mesh.panels):
        sl = slice(j * p, (j + 1) * p)
        ut[sl] = (D @ u[sl]) / np.abs(panel.dpoint(gx))
    return u, un, ut


def solution_twosided_check(density, cert, flux_threshold=0.01):
    """Two-sided Rellich comparison for a computed solution, from its boundary traces.

    A = int |grad u|^2 and B = int_N u_nu^2 + int_D u_t^2 over the boundary
    inside B(0, R), both against |x|^eps d sigma; the Rellich flux through
    the truncation arc flags the comparison as inconclusive when large.

    B uses only the prescribed trace components and is as accurate as the
    solve.  A also needs u_nu on D and u_tau on N, which lose accuracy on
    the panels next to the truncation corners (boundary meets arc) where
    the density is singular; on the half-plane with u = x1 this costs about
    1e-3 relative in A and improves slowly with ``corner_levels``.
    """
    mesh = density.mesh
    _, un, ut = boundary_traces(density)
    fld = cert.field
    on_b = mesh.labels != "arc"
    w = mesh.weights * np.abs(mesh.nodes) ** fld.epsilon
    A = float(np.dot(w[on_b], (un ** 2 + ut ** 2)[on_b]))
    B = float(np.dot(w[on_b], np.where(mesh.labels == "N", un ** 2, ut ** 2)[on_b]))
    arc = ~on_b
    g = un[arc] * mesh.normals[arc] + ut[arc] * mesh.tangents[arc]
    as2 = lambda c: np.stack([c.real, c.imag], axis=-1)
    flux = float(np.dot(mesh.weights[arc], _rellich_density(as2(g), fld(mesh.nodes[arc]), as2(mesh.normals[arc]))))
    certificate = 1.0 / cert.bound
    bound = 4.0 * certificate
    if A == 0.0 and B == 0.0:
        return TwoSidedReport(A, B, flux, math.nan, certificate, bound, True, False)
    ratio = A / B if B > 0.0 else math.inf
    return TwoSidedReport(A, B, flux, ratio, certificate, bound, ratio <= bound, abs(flux) > flux_threshold * A)


def _diff_matrix(n):
    gx, _ = gauss_legendre(n)
    V = np.polynomial.legendre.legvander(gx, n - 1)
    dV = np.stack([np.polynomial.legendre.legval(gx, np.polynomial.legendre.legder(np.eye(n)[k]))
                   for k in range(n)], axis=1)
    return dV @ np.linalg.inv(V)


def normal_limit(density, side=+1, frac=0.01, steps=4):
    """Normal derivative of S[rho] approached from outside (side=+1) or inside (side=-1).

    Evaluates at x + side h nu for h proportional to the panel length and
    extrapolates polynomially to h = 0.  Only N nodes in the middle half of
    their panel are used; returns (node indices, limits).
    """
    mesh = density.mesh
    sel = np.flatnonzero(mesh.mask("N"))
    sel = sel[np.abs(mesh.params[sel]) < 0.5]
    lengths = np.array([mesh.panels[j].length for j in mesh.panel_of[sel]])
    ts = frac * 0.5 ** np.arange(steps)
    vals = []
    for t in ts:
        zs = mesh.nodes[sel] + side * t * lengths * mesh.normals[sel]
        g = _operator(mesh, _k_grad, zs) @ density.values
        vals.append((np.conj(g) * mesh.normals[sel]).real)
    coef = np.polyfit(ts, np.array(vals), steps - 1)
    return sel, coef[-1]


def jump_operator(density, nodes):
    """(rho, K*[rho]) at the given node indices."""
    mesh = density.mesh
    K = _operator(mesh, _k_normal, mesh.nodes[nodes], mesh.normals[nodes],
                  (mesh.panel_of[nodes], mesh.params[nodes]))
    return density.values[nodes], K @ density.values


# probes and error estimates

def probe_points(domain, R, count=50, seed=0, r_range=(0.1, 0.9), margin=0.1):
    """Seeded interior probes at |z| in r_range*R, angularly inside the domain by `margin`."""
    rng = np.random.default_rng(seed)
    graph = domain.as_graph()
    out = []
    while len(out) < count:
        r = R * rng.uniform(*r_range)
        th = rng.uniform(-0.5 * math.pi, 1.5 * math.pi)
        z = r * np.exp(1j * th)
        if z.imag - float(graph.phi(z.real)) > margin * r * math.cos(graph.beta):
            out.append(z)
    return np.array(out)


class SolveReport(NamedTuple):
    unknowns: int
    max_error: float
    residual: float
    condition: float


def manufactured_error(domain, R, u, grading, probes):
    mesh = contour_mesh(domain, R, grading)
    dens = solve_mixed(domain, R, mesh, MixedData.from_harmonic(u))
    vals, _ = eval_solution(dens, probes)
    return SolveReport(len(mesh), float(np.max(np.abs(vals - u(probes)))), dens.residual, dens.condition)


def self_convergence_error(domain, R, data, grading, probes):
    """Max difference at the probes between solves on a mesh and its bisection."""
    v1 = eval_solution(solve_mixed(domain, R, contour_mesh(domain, R, grading), data), probes)[0]
    v2 = eval_solution(solve_mixed(domain, R, contour_mesh(domain, R, grading.refined()), data), probes)[0]
    return float(np.max(np.abs(v1 - v2))), v2


# conformal transfer

@dataclass
class TransferredSolution:
    """u = v o phi_s on the original sector, with v solved on the image sector."""

    map: SectorMap
    density: BoundaryDensity
    error_estimate: Optional[float] = None

    def __call__(self, z):
        return eval_solution(self.density, self.map(np.asarray(z, dtype=complex)))[0]

    def grad(self, z):
        z = np.asarray(z, dtype=complex)
        _, g = eval_solution(self.density, self.map(z))
        cd = (g[:, 0] - 1j * g[:, 1]) * self.map.cderiv(z)
        return np.stack([cd.real, -cd.imag], axis=-1)


def transfer_data(m, data):
    """Data on the image sector: g_N = (f_N/|phi_s'|) o phi_s^{-1}, g_D = f_D o phi_s^{-1}."""
    def g_D(eta):
        return data.f_D(m.inverse(eta))

    def g_N(eta, nu):
        z = m.inverse(eta)
        # outward normal at z on the original ray: rotate the image normal back
        nz = nu * np.conj(m.cderiv(z)) / np.abs(m.cderiv(z))
        return data.f_N(z, nz) / np.abs(m.cderiv(z))

    def g_arc(eta):
        return data.arc_data(m.inverse(eta))

    return MixedData(g_D, g_N, g_arc)


def conformal_transfer_solve(sector, s, data, R, grading=None, estimate_error=True):
    """Solve on the sector of half-opening s*phi and pull back by phi_s.

    ``data`` must be callable (it is evaluated at pulled-back points).
    Requires opening > pi/2 and 0 < s < pi/(2 opening); s = 1 is the identity.
    """
    grading = grading or SolverGrading()
    if s != 1.0:
        if not sector.opening > 0.5 * math.pi:
            raise ZarembaError("conformal transfer is for sectors with opening > pi/2")
        if not 0.0 < s < math.pi / (2.0 * sector.opening):
            raise ZarembaError(f"s must lie in (0, {math.pi / (2.0 * sector.opening):.15g})")
    m = SectorMap(s)
    image = Sector(s * sector.opening)
    Rs = R ** s
    gdata = transfer_data(m, data) if s != 1.0 else data
    dens = solve_mixed(image, Rs, contour_mesh(image, Rs, grading), gdata)
    err = None
    if estimate_error:
        probes = probe_points(image, Rs, 20, seed=1)
        fine = solve_mixed(image, Rs, contour_mesh(image, Rs, grading.refined()), gdata)
        err = float(np.max(np.abs(eval_solution(dens, probes)[0] - eval_solution(fine, probes)[0])))
    return TransferredSolution(m, dens, err)


def ray_quadrature(angle, r0, r1, levels=60, order=16):
    """Gauss nodes and weights on the ray segment {r e^{i angle}: r0 < r < r1}, graded toward r0 = 0."""
    gx, gw = gauss_legendre(order)
    edges = _half_edges(r1 - r0, levels, 1) + r0
    a, b = edges[:-1, None], edges[1:, None]
    r = (0.5 * (a + b) + 0.5 * (b - a) * gx).ravel()
    w = (0.5 * (b - a) * gw).ravel()
    return r * np.exp(1j * angle), w


def data_norm_identity(sector, s, f_N, R):
    """(int over N_{s phi} of |g_N|^2 dsigma, (1/s) int over N_phi of |f_N|^2 dsigma_eps), eps = 1 - s."""
    m = SectorMap(s)
    right = 0.5 * math.pi - sector.opening
    z, w = ray_quadrature(right, 0.0, R)
    nu = np.exp(1j * (right - 0.5 * math.pi))
    lhs_orig = float(np.dot(w, f_N(z, np.full(z.shape, nu)) ** 2 * np.abs(z) ** (1.0 - s))) / s
    right_img = 0.5 * math.pi - s * sector.opening
    eta, w2 = ray_quadrature(right_img, 0.0, R ** s)
    g = transfer_data(m, MixedData(None, f_N, None)).f_N
    nu2 = np.exp(1j * (right_img - 0.5 * math.pi))
    img = float(np.dot(w2, g(eta, np.full(eta.shape, nu2)) ** 2))
    return img, lhs_orig


def cauchy_transfer_check(dv, m, sector, R, probes, levels=60, order=16, min_dist=0.05, panels_per_level=4):
    """Max relative mismatch between phi_s'(z) dv(phi_s(z)) and its Cauchy integral.

    ``dv`` is the holomorphic derivative of v (a callable of eta, or an object
    with ``cderiv``).  Probes closer than ``min_dist * R`` to the contour are
    skipped; the skipped points are returned alongside the mismatch.
    """
    f = dv.cderiv if hasattr(dv, "cderiv") else dv
    mesh = contour_mesh(sector, R, SolverGrading(order, levels, 20, panels_per_level))
    zeta, w = mesh.nodes, mesh.weights
    dzeta = w * mesh.tangents
    h = m.cderiv(zeta) * f(m(zeta))
    probes = np.asarray(probes, dtype=complex)
    keep = np.array([min(p.distance(z) for p in mesh.panels) >= min_dist * R for z in probes])
    worst = 0.0
    for z in probes[keep]:
        integral = np.sum(h * dzeta / (zeta - z)) / (2j * math.pi)
        exact = m.cderiv(z) * f(m(z))
        scale = max(abs(exact), 1e-300)
        worst = max(worst, abs(integral - exact) / scale)
    return worst, probes[~keep]
