"""Closed-form harmonic functions, nontangential maxima, weighted norms and Rellich checks.

Every test function is u = Re(exp(i mu) f(z)) for a holomorphic generator f
with a symbolic derivative, so that grad u = (Re F', -Im F') with
F = exp(i mu) f is exact.
"""

import ast
import math
import operator
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InconclusiveError, SingularPointError, ZarembaError
from .fields import SectorMap, branch_power
from .geometry import ConeParams, GradingSpec, GraphDomain, boundary_mesh, _exit_x1
from .quadrature import gauss_legendre


# generators

class Generator:
    """Holomorphic function with a symbolic derivative."""

    def __call__(self, z):
        raise NotImplementedError

    def deriv(self, z):
        raise NotImplementedError

    def __add__(self, other):
        return Sum((self, other))

    def __sub__(self, other):
        return Sum((self, Scaled(-1.0, other)))

    def __rmul__(self, c):
        return Scaled(complex(c), self)

    def __neg__(self):
        return Scaled(-1.0, self)

    def compose(self, m):
        return Composed(self, m)


@dataclass(frozen=True, eq=False)
class Power(Generator):
    """(z + shift)**k on the branch with the cut below the shift point."""

    k: float
    shift: complex = 0.0

    def __call__(self, z):
        return branch_power(np.asarray(z, dtype=complex) + self.shift, self.k)

    def deriv(self, z):
        if self.k == 0:
            return np.zeros_like(np.asarray(z, dtype=complex))
        w = np.asarray(z, dtype=complex) + self.shift
        if self.k < 1 and np.any(w == 0):
            raise SingularPointError("power generator has a singular derivative at its branch point")
        return self.k * branch_power(w, self.k - 1.0)


@dataclass(frozen=True, eq=False)
class Poly(Generator):
    """sum_j coeffs[j] z**j."""

    coeffs: tuple

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), self.coeffs)

    def deriv(self, z):
        d = np.polynomial.polynomial.polyder(np.asarray(self.coeffs, dtype=complex))
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), d)


@dataclass(frozen=True, eq=False)
class Sum(Generator):
    terms: tuple

    def __call__(self, z):
        return sum(t(z) for t in self.terms)

    def deriv(self, z):
        return sum(t.deriv(z) for t in self.terms)


@dataclass(frozen=True, eq=False)
class Scaled(Generator):
    c: complex
    inner: Generator

    def __call__(self, z):
        return self.c * self.inner(z)

    def deriv(self, z):
        return self.c * self.inner.deriv(z)


@dataclass(frozen=True, eq=False)
class Composed(Generator):
    """f(phi_s(z)) for a sector power map."""

    inner: Generator
    m: SectorMap

    def __call__(self, z):
        return self.inner(self.m(z))

    def deriv(self, z):
        return self.inner.deriv(self.m(z)) * self.m.cderiv(z)


@dataclass(frozen=True)
class HarmonicFunction:
    generator: Generator
    mu: float = 0.0
    name: str = ""

    def holomorphic(self, z):
        return np.exp(1j * self.mu) * self.generator(z)

    def cderiv(self, z):
        """F'(z) = u_x - i u_y."""
        return np.exp(1j * self.mu) * self.generator.deriv(z)

    def __call__(self, z):
        return self.holomorphic(z).real

    def grad(self, z):
        d = self.cderiv(z)
        return np.stack([d.real, -d.imag], axis=-1)

    def conjugate(self):
        """The harmonic conjugate Im F, as Re(exp(i(mu - pi/2)) f)."""
        return HarmonicFunction(self.generator, self.mu - 0.5 * math.pi, f"conj({self.name})")


# catalog

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.Pow: operator.pow}


def parse_real(text):
    """Parse a real number allowing `pi` and + - * / ** (e.g. "3*pi/8")."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        raise ZarembaError(f"cannot parse number {text!r}")
    try:
        return ev(ast.parse(str(text).strip(), mode="eval"))
    except SyntaxError as exc:
        raise ZarembaError(f"cannot parse number {text!r}") from exc


def counterexample_function():
    """u = Re(sqrt(z) - sqrt(z + i))."""
    return HarmonicFunction(Power(0.5) - Power(0.5, 1j), 0.0, "counterexample")


def mixed_eigenfunction(phi):
    """Re(exp(-i k (pi/2 - phi)) z**k), k = pi/(4 phi), on the sector of half-opening phi.

    It vanishes on the left ray (D) and has zero normal derivative on the
    right ray (N); on the half-plane it is Re z**(1/2).
    """
    k = math.pi / (4.0 * phi)
    return HarmonicFunction(Power(k), -k * (0.5 * math.pi - phi), f"mixed-eigen:{phi!r}")


def catalog(name):
    """Resolve 'counterexample', 'power:k', 'mixed-eigen:phi' or 'poly:c0,c1,...'."""
    kind, _, arg = name.partition(":")
    if kind == "counterexample" and not arg:
        return counterexample_function()
    if kind == "power" and arg:
        k = parse_real(arg)
        if k < 0:
            raise ZarembaError("catalog powers must be nonnegative")
        return HarmonicFunction(Power(k), 0.0, name)
    if kind == "mixed-eigen" and arg:
        phi = parse_real(arg)
        if not 0.0 < phi < math.pi:
            raise ZarembaError("mixed eigenfunction needs a sector half-opening in (0, pi)")
        return mixed_eigenfunction(phi)
    if kind == "poly" and arg:
        return HarmonicFunction(Poly(tuple(parse_real(c) for c in arg.split(","))), 0.0, name)
    raise ZarembaError(f"unknown test function {name!r}")


def counterexample(z):
    """Value and exact gradient of Re(sqrt(z) - sqrt(z + i))."""
    u = counterexample_function()
    z = complex(z)
    if z == -1j:
        raise SingularPointError("counterexample is singular at -i")
    value = float(u(z))
    if z == 0:
        err = SingularPointError(f"gradient is singular at 0 (value there is {value!r})")
        err.value = value
        raise err
    return value, u.grad(z)


# nontangential maximal function

@dataclass(frozen=True)
class NontangentialGrid:
    """Geometric radii r_min * q**j <= r_max on equally spaced rays of the cone."""

    r_min: float
    r_max: float
    q: float = 1.5
    rays_per_cone: int = 5
    cone: ConeParams = field(default_factory=ConeParams.default)

    def __post_init__(self):
        if not self.r_min > 0.0 or not self.r_max >= self.r_min:
            raise ZarembaError("need 0 < r_min <= r_max")
        if not self.q > 1.0:
            raise ZarembaError("radius ratio must exceed 1")
        if self.rays_per_cone < 3:
            raise ZarembaError("at least 3 rays per cone")

    @property
    def radii(self):
        n = int(math.floor(math.log(self.r_max / self.r_min) / math.log(self.q) + 1e-9))
        return self.r_min * self.q ** np.arange(n + 1)

    @property
    def angles(self):
        t = self.cone.theta0
        return 0.5 * math.pi + np.linspace(-t, t, self.rays_per_cone)

    def offsets(self):
        return (self.radii[:, None] * np.exp(1j * self.angles)[None, :]).ravel()

    def refine(self):
        """A grid containing every point of this one."""
        return NontangentialGrid(self.r_min, self.r_max, math.sqrt(self.q),
                                 2 * self.rays_per_cone - 1, self.cone)


def ntmax_grad(u, x, grid):
    """max |grad u| over the cone grid at boundary point(s) x: a lower bound for (grad u)*."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 1
    pts = np.atleast_2d(x)
    base = pts[:, 0] + 1j * pts[:, 1]
    z = base[:, None] + grid.offsets()[None, :]
    vals = np.abs(u.cderiv(z)).max(axis=1)
    return float(vals[0]) if scalar else vals


def weighted_lp_boundary_norm(g, p, mu, mesh):
    """(integral of |g|**p d sigma_eps)**(1/p) by the mesh quadrature; g may be callable."""
    if not p >= 1.0:
        raise ZarembaError("need p >= 1")
    vals = g(mesh.points) if callable(g) else np.asarray(g, dtype=float)
    return mesh.integrate(np.abs(vals) ** p, mu) ** (1.0 / p)


# Rellich identity

RELLICH_GRADING = GradingSpec(levels=60, panels_per_level=1, nodes_per_panel=16)


def _rellich_density(grad, alpha, normal):
    g2 = np.einsum("ij,ij->i", grad, grad)
    return (g2 * np.einsum("ij,ij->i", alpha, normal)
            - 2.0 * np.einsum("ij,ij->i", alpha, grad) * np.einsum("ij,ij->i", grad, normal))


def truncation_arc(domain, R, panels=32, order=16):
    """Gauss nodes, weights (ds) and outward normals on the arc Omega cap dB(0, R)."""
    graph = domain.as_graph()
    pa = graph.point(_exit_x1(graph, R, +1))
    pb = graph.point(_exit_x1(graph, R, -1))
    ta = math.atan2(pa[1], pa[0])
    tb = math.atan2(pb[1], pb[0])
    if tb < ta:
        tb += 2.0 * math.pi
    gx, gw = gauss_legendre(order)
    edges = np.linspace(ta, tb, panels + 1)
    a, b = edges[:-1, None], edges[1:, None]
    theta = (0.5 * (a + b) + 0.5 * (b - a) * gx).ravel()
    w = (0.5 * (b - a) * gw).ravel() * R
    n = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    return R * n, w, n


class RellichResult(NamedTuple):
    boundary_integral: float
    flux_correction: float
    residual: float
    relative: float
    error_estimate: float
    converged: bool


def _boundary_rellich(u, fld, mesh):
    return float(np.dot(mesh.weights, _rellich_density(u.grad(mesh.z), fld(mesh.z), mesh.normals)))


def rellich_residual(u, fld, domain, R, mesh=None, tol=1e-8, grading=RELLICH_GRADING):
    """Boundary integral I and truncation-arc flux F of the Rellich integrand; I + F = 0."""
    mesh = mesh or boundary_mesh(domain, R, grading)
    I = _boundary_rellich(u, fld, mesh)
    fine = GradingSpec(mesh.metadata["levels"] + 8, mesh.metadata["panels_per_level"],
                       mesh.nodes_per_panel + 4)
    I_fine = _boundary_rellich(u, fld, boundary_mesh(domain, R, fine, mesh.inner_radius))
    pts, w, n = truncation_arc(domain, R)
    z = pts[:, 0] + 1j * pts[:, 1]
    F = float(np.dot(w, _rellich_density(u.grad(z), fld(z), n)))
    scale = abs(I) + abs(F) + 1e-14
    err = abs(I - I_fine)
    return RellichResult(I, F, I + F, abs(I + F) / scale, err, err <= tol * scale)


class TwoSidedReport(NamedTuple):
    A: float
    B: float
    flux: float
    ratio: float
    certificate: float
    bound: float
    holds: bool
    inconclusive: bool


def rellich_twosided_check(u, cert, domain, R, mesh=None, flux_threshold=0.01,
                           grading=RELLICH_GRADING):
    """Compare A = int |grad u|^2 against the mixed data B = int_N u_nu^2 + int_D u_t^2 (d sigma_eps)."""
    mesh = mesh or boundary_mesh(domain, R, grading)
    fld = cert.field
    w = mesh.weights * np.hypot(*mesh.points.T) ** fld.epsilon
    grad = u.grad(mesh.z)
    un = np.einsum("ij,ij->i", grad, mesh.normals)
    ut = np.einsum("ij,ij->i", grad, mesh.tangents)
    A = float(np.dot(w, un ** 2 + ut ** 2))
    B = float(np.dot(w, np.where(mesh.on_N, un ** 2, ut ** 2)))
    flux = rellich_residual(u, fld, domain, R, mesh).flux_correction
    certificate = 1.0 / cert.bound
    bound = 4.0 * certificate
    if A == 0.0 and B == 0.0:
        return TwoSidedReport(A, B, flux, math.nan, certificate, bound, True, False)
    ratio = A / B if B > 0.0 else math.inf
    inconclusive = abs(flux) > flux_threshold * A
    return TwoSidedReport(A, B, flux, ratio, certificate, bound, ratio <= bound, inconclusive)


# growth

def growth_exponent(u, sector, radii, samples=2001):
    """Least-squares slope of log max_{|z|=r} |u| against log r over the sector."""
    radii = np.asarray(radii, dtype=float)
    if len(radii) < 3 or np.any(np.diff(radii) <= 0) or radii[0] <= 0:
        raise ZarembaError("need at least 3 increasing positive radii")
    phi = sector.opening
    theta = 0.5 * math.pi + phi * np.linspace(-1.0, 1.0, samples + 2)[1:-1]
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    peak = np.abs(u(z)).max(axis=1)
    keep = peak > 0.0
    if keep.sum() < 2:
        raise InconclusiveError("function vanishes on the sampled circles; growth exponent undefined")
    slope = np.polyfit(np.log(radii[keep]), np.log(peak[keep]), 1)[0]
    return float(slope)


# counterexample integrability scan

SCAN_GRID = NontangentialGrid(1e-3, 4.0)
SCAN_GRADING = GradingSpec(levels=24, panels_per_level=2, nodes_per_panel=16)


class ScanRow(NamedTuple):
    p: float
    cutoff: float
    norm: float
    error_estimate: float


def _scaled_ntmax(u, z, grid):
    """ntmax with the cone grid dilated by |x| at each boundary point x."""
    off = grid.offsets()
    return np.abs(u.cderiv(z[:, None] + np.abs(z)[:, None] * off[None, :])).max(axis=1)


def counterexample_scan(ps, cutoffs, grid=SCAN_GRID, grading=SCAN_GRADING, half_width=0.5):
    """L^p norms of ntmax_grad(counterexample) over {delta < |x1| < half_width} on the real axis.

    The cone grid is scaled with |x| so that it resolves the t**(-1/2)
    blow-up at every distance.  The error estimate is the change under one
    grid refinement (ntmax is monotone in the grid).
    """
    u = counterexample_function()
    flat = GraphDomain.flat()
    fine = grid.refine()
    rows = []
    for delta in cutoffs:
        mesh = boundary_mesh(flat, half_width, grading, inner_radius=delta)
        z = mesh.z
        g, gf = _scaled_ntmax(u, z, grid), _scaled_ntmax(u, z, fine)
        for p in ps:
            n = float(np.dot(mesh.weights, g ** p)) ** (1.0 / p)
            nf = float(np.dot(mesh.weights, gf ** p)) ** (1.0 / p)
            rows.append(ScanRow(float(p), float(delta), n, abs(nf - n)))
    return rows


class Dichotomy(NamedTuple):
    cauchy: dict
    max_relative_step: dict
    increments: list
    increment_spread: float
    log_divergent: bool

    @property
    def holds(self):
        return all(self.cauchy.values()) and self.log_divergent


def counterexample_dichotomy(rows, p_critical=2.0, cauchy_rtol=1e-3, increment_rtol=0.1):
    """Convergence for p < p_critical, constant squared-norm increments at p_critical.

    Cutoffs are expected one decade apart; the increments of norm**p at
    p_critical must be positive with the last two within increment_rtol.
    """
    by_p = {}
    for r in rows:
        by_p.setdefault(r.p, []).append(r)
    cauchy, steps = {}, {}
    for p, rs in by_p.items():
        if p >= p_critical:
            continue
        rs = sorted(rs, key=lambda r: -r.cutoff)
        v = np.array([r.norm for r in rs])
        rel = np.abs(np.diff(v)) / np.abs(v[1:])
        steps[p] = float(rel.max())
        cauchy[p] = bool(np.all(rel < cauchy_rtol))
    rs = sorted(by_p.get(p_critical, []), key=lambda r: -r.cutoff)
    sq = np.array([r.norm ** p_critical for r in rs])
    inc = np.diff(sq)
    if len(inc) >= 2 and np.all(inc > 0.0):
        spread = float(abs(inc[-1] - inc[-2]) / inc[-1])
        div = spread < increment_rtol
    else:
        spread, div = math.inf, False
    return Dichotomy(cauchy, steps, [float(x) for x in inc], spread, div)
