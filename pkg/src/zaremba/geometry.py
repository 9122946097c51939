"""Lipschitz graph domains, sectors, boundary meshes and power-weighted measures.

A standard graph domain is the region above a piecewise-linear graph
``x2 > phi(x1)`` with ``phi(0) = 0``.  The boundary splits at the origin into
the Dirichlet part ``D = {x1 < 0}`` and the Neumann part ``N = {x1 >= 0}``.
Boundary points are addressed by their signed arc length from the origin
(negative on ``D``).

The power-weighted measure ``dsigma_eps = |x|**eps dsigma`` obeys

    c1 * r * max(|x|, r)**eps  <=  sigma_eps(Delta_r(x))  <=  c2 * r * max(|x|, r)**eps

with, for a graph of Lipschitz constant M and ``k = (1 + M**2) ** ((1 + |eps|) / 2)``,

    c1 = min(2, 2 / (1 + eps)) / k,      c2 = max(2, 2 / (1 + eps)) * k.

On a flat boundary (k = 1) the two values are the ratio at x = 0 and the
limit |x|/r -> infinity.  See :func:`measure_lemma_constants`.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import ZarembaError
from .quadrature import gauss_legendre

DEFAULT_LEVELS = 12


@dataclass(frozen=True)
class GradingSpec:
    """Dyadic panel grading toward the origin.

    ``levels`` dyadic shells are laid down on each side of the origin, each
    split into ``panels_per_level`` panels carrying ``nodes_per_panel``
    Gauss-Legendre nodes.
    """

    levels: int = DEFAULT_LEVELS
    panels_per_level: int = 1
    nodes_per_panel: int = 8

    def __post_init__(self):
        if self.levels < 0:
            raise ZarembaError("grading levels must be nonnegative")
        if self.panels_per_level < 1:
            raise ZarembaError("grading needs at least one panel per level")
        if self.nodes_per_panel < 1:
            raise ZarembaError("grading needs at least one node per panel")


@dataclass(frozen=True)
class WeightedMeasure:
    """The boundary measure |x|**epsilon dsigma."""

    epsilon: float = 0.0

    def __post_init__(self):
        if not self.epsilon > -1.0:
            raise ZarembaError(f"power weight needs epsilon > -1, got {self.epsilon}")

    def weight(self, points):
        r = np.hypot(*np.asarray(points, dtype=float).T)
        if self.epsilon == 0.0:
            return np.ones_like(r)
        with np.errstate(divide="ignore"):
            return r ** self.epsilon


@dataclass(frozen=True)
class GraphDomain:
    """Region above a piecewise-linear graph through the origin.

    ``breakpoints`` are sorted ``(x1, phi(x1))`` pairs; outside them the graph
    continues with ``left_slope`` and ``right_slope``.
    """

    breakpoints: tuple
    left_slope: float = 0.0
    right_slope: float = 0.0

    def __post_init__(self):
        bp = tuple((float(x), float(y)) for x, y in self.breakpoints)
        if not bp:
            raise ZarembaError("a graph needs at least one breakpoint")
        object.__setattr__(self, "breakpoints", bp)
        xs = np.array([p[0] for p in bp])
        if np.any(np.diff(xs) <= 0.0):
            raise ZarembaError("breakpoints must be strictly increasing in x1")
        if abs(float(self.phi(0.0))) > 1e-12 * max(1.0, float(np.abs(xs).max())):
            raise ZarembaError("the graph must pass through the origin (phi(0) = 0)")

    # construction helpers

    @classmethod
    def flat(cls):
        return cls(((0.0, 0.0),), 0.0, 0.0)

    @classmethod
    def from_slopes(cls, knots, slopes):
        """Graph through the origin with ``slopes[i]`` on ``(knots[i-1], knots[i])``.

        ``knots`` must be sorted and contain 0; ``len(slopes) == len(knots) + 1``
        (the first and last slopes are the unbounded end slopes).
        """
        knots = np.asarray(knots, dtype=float)
        slopes = np.asarray(slopes, dtype=float)
        if len(slopes) != len(knots) + 1:
            raise ZarembaError("need one slope per gap plus the two end slopes")
        i0 = int(np.searchsorted(knots, 0.0))
        if i0 >= len(knots) or knots[i0] != 0.0:
            raise ZarembaError("knots must include the origin")
        ys = np.zeros_like(knots)
        for i in range(i0 + 1, len(knots)):
            ys[i] = ys[i - 1] + slopes[i] * (knots[i] - knots[i - 1])
        for i in range(i0 - 1, -1, -1):
            ys[i] = ys[i + 1] - slopes[i + 1] * (knots[i + 1] - knots[i])
        return cls(tuple(zip(knots, ys)), float(slopes[0]), float(slopes[-1]))

    @classmethod
    def sawtooth(cls, slope, width=1.0, extent=64.0):
        """Zig-zag with slopes +slope on (0, width), -slope on (width, 2 width), ..."""
        n = int(math.ceil(extent / width))
        knots = width * np.arange(-n, n + 1)
        gaps = np.arange(-n, n)  # gap i is (i*width, (i+1)*width)
        inner = np.where(gaps % 2 == 0, slope, -slope)
        slopes = np.concatenate([[-slope if n % 2 else slope], inner, [slope if n % 2 else -slope]])
        return cls.from_slopes(knots, slopes)

    @classmethod
    def random_sawtooth(cls, M, rng, extent=32.0, mean_width=0.5):
        """Random polygonal graph with |slope| <= M attained on at least one piece."""
        widths = rng.uniform(0.2, 1.8, size=int(4 * extent / mean_width)) * mean_width
        right = np.cumsum(widths)
        right = right[right < extent]
        left = -np.cumsum(rng.uniform(0.2, 1.8, size=int(4 * extent / mean_width)) * mean_width)
        left = left[left > -extent][::-1]
        knots = np.concatenate([left, [0.0], right])
        slopes = rng.choice([-1.0, 1.0], size=len(knots) + 1) * M * rng.uniform(0.0, 1.0, size=len(knots) + 1)
        if M > 0.0:
            slopes[rng.integers(len(slopes))] = M * rng.choice([-1.0, 1.0])
        return cls.from_slopes(knots, slopes)

    # basic geometry

    @property
    def xs(self):
        return np.array([p[0] for p in self.breakpoints])

    @property
    def ys(self):
        return np.array([p[1] for p in self.breakpoints])

    @property
    def segment_slopes(self):
        xs, ys = self.xs, self.ys
        inner = np.diff(ys) / np.diff(xs)
        return np.concatenate([[self.left_slope], inner, [self.right_slope]])

    @property
    def M(self):
        return float(np.abs(self.segment_slopes).max())

    @property
    def beta(self):
        return math.atan(self.M)

    def phi(self, x1):
        x1 = np.asarray(x1, dtype=float)
        xs, ys = self.xs, self.ys
        y = np.interp(x1, xs, ys)
        y = np.where(x1 < xs[0], ys[0] + self.left_slope * (x1 - xs[0]), y)
        return np.where(x1 > xs[-1], ys[-1] + self.right_slope * (x1 - xs[-1]), y)

    def slope(self, x1):
        """Slope of the segment containing x1 (right-continuous at kinks)."""
        idx = np.searchsorted(self.xs, np.asarray(x1, dtype=float), side="right")
        return self.segment_slopes[idx]

    def point(self, x1):
        x1 = np.asarray(x1, dtype=float)
        return np.stack([x1, self.phi(x1)], axis=-1)

    def outward_normal(self, x1):
        s = self.slope(x1)
        n = np.stack([s, -np.ones_like(s)], axis=-1)
        return n / np.hypot(s, 1.0)[..., None]

    def kinks_between(self, a, b):
        xs = self.xs
        return xs[(xs > a) & (xs < b)]

    def arc_length(self, x1):
        """Signed arc length from the origin to the boundary point above x1."""
        x1 = np.asarray(x1, dtype=float)
        knots = np.concatenate([[min(x1.min(initial=0.0), self.xs[0]) - 1.0], self.xs,
                                [max(x1.max(initial=0.0), self.xs[-1]) + 1.0]])
        knots = np.union1d(knots, [0.0])
        mids = 0.5 * (knots[:-1] + knots[1:])
        dens = np.hypot(1.0, self.slope(mids))
        cum = np.concatenate([[0.0], np.cumsum(dens * np.diff(knots))])
        cum -= np.interp(0.0, knots, cum)
        return np.interp(x1, knots, cum)

    def to_json(self):
        return {"breakpoints": [list(p) for p in self.breakpoints],
                "left_slope": self.left_slope, "right_slope": self.right_slope}

    def as_graph(self):
        return self

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        return z.imag > self.phi(z.real)


@dataclass(frozen=True)
class Sector:
    """The sector {r e^{i theta} : |theta - pi/2| < opening}."""

    opening: float

    def __post_init__(self):
        if not 0.0 < self.opening < math.pi:
            raise ZarembaError(f"sector opening must lie in (0, pi), got {self.opening}")

    @property
    def M(self):
        if self.opening == math.pi / 2:
            return 0.0
        return abs(math.tan(math.pi / 2 - self.opening))

    @property
    def beta(self):
        return math.atan(self.M)

    @property
    def ray_angles(self):
        """Angles of the Neumann (right) and Dirichlet (left) boundary rays."""
        return math.pi / 2 - self.opening, math.pi / 2 + self.opening

    def as_graph(self):
        c = math.cos(self.opening) / math.sin(self.opening)
        if self.opening == math.pi / 2:
            c = 0.0
        return GraphDomain(((0.0, 0.0),), -c, c)

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        theta = np.angle(z * np.exp(-0.5j * math.pi))
        return (np.abs(theta) < self.opening) & (z != 0)

    def to_json(self):
        return {"opening": self.opening}


def domain_from_json(doc):
    if "opening" in doc:
        return Sector(float(doc["opening"]))
    return GraphDomain(tuple(tuple(p) for p in doc["breakpoints"]),
                       float(doc.get("left_slope", 0.0)), float(doc.get("right_slope", 0.0)))


def domain_to_json(domain):
    return json.dumps(domain.to_json(), sort_keys=True)


@dataclass(frozen=True)
class ConeParams:
    """Half-opening of the nontangential approach cones x + Gamma(0)."""

    theta0: float
    M: float = 0.0

    def __post_init__(self):
        limit = math.pi / 2 - math.atan(self.M)
        if not 0.0 < self.theta0 < limit:
            raise ZarembaError(
                f"cone half-opening must lie in (0, {limit:.15g}) for Lipschitz constant {self.M}")

    @classmethod
    def default(cls, M=0.0):
        return cls(0.5 * (math.pi / 2 - math.atan(M)), M)


@dataclass(frozen=True)
class BoundarySample:
    point: tuple
    arc: float
    normal: tuple
    weight: float


@dataclass(frozen=True)
class BoundaryMesh:
    """Gauss nodes on the truncated boundary, stored as parallel arrays.

    ``panels`` holds the ``(arc_start, arc_end)`` of each panel;
    ``panel_of[i]`` the panel index of node ``i``.
    """

    points: np.ndarray
    arc: np.ndarray
    normals: np.ndarray
    weights: np.ndarray
    panels: np.ndarray
    panel_of: np.ndarray
    nodes_per_panel: int
    truncation_radius: float
    inner_radius: float = 0.0
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.arc)

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __getitem__(self, i):
        return BoundarySample(tuple(self.points[i]), float(self.arc[i]),
                              tuple(self.normals[i]), float(self.weights[i]))

    @property
    def z(self):
        return self.points[:, 0] + 1j * self.points[:, 1]

    @property
    def on_D(self):
        return self.arc < 0.0

    @property
    def on_N(self):
        return self.arc >= 0.0

    @property
    def tangents(self):
        # unit tangent in the direction of increasing arc length
        return np.stack([-self.normals[:, 1], self.normals[:, 0]], axis=-1)

    def integrate(self, values, mu=None):
        w = self.weights if mu is None else self.weights * mu.weight(self.points)
        return float(np.dot(w, values))

    def to_csv(self):
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["x", "y", "arc", "nu_x", "nu_y", "weight"])
        for p, s, n, w in zip(self.points, self.arc, self.normals, self.weights):
            out.writerow([repr(float(v)) for v in (p[0], p[1], s, n[0], n[1], w)])
        return buf.getvalue()


def _exit_x1(graph, radius, side):
    """x1 where the boundary first leaves B(0, radius), walking out from 0."""
    xs = graph.xs
    knots = xs[xs > 0.0] if side > 0 else xs[xs < 0.0][::-1]
    start = np.array([0.0, 0.0])
    for x_end in list(knots) + [None]:
        if x_end is None:
            slope = graph.right_slope if side > 0 else graph.left_slope
            d = np.array([side, side * slope])
            d /= np.hypot(*d)
            b = float(np.dot(start, d))
            c = float(np.dot(start, start)) - radius ** 2
            t = -b + math.sqrt(b * b - c)
            return float(start[0] + t * d[0])
        end = graph.point(x_end)
        if np.hypot(*end) >= radius:
            d = end - start
            length = np.hypot(*d)
            d /= length
            b = float(np.dot(start, d))
            c = float(np.dot(start, start)) - radius ** 2
            t = -b + math.sqrt(max(b * b - c, 0.0))
            return float(start[0] + min(t, length) * d[0])
        start = end


def _side_breaks(length, inner, levels, panels_per_level):
    """Panel breaks in |arc| on one side: dyadic toward `inner` (or 0)."""
    if inner > 0.0:
        levels = max(levels, int(math.ceil(math.log2(length / inner))))
    shells = length * 0.5 ** np.arange(levels + 1)
    shells = np.concatenate([shells, [0.0]])[::-1]
    breaks = [shells[0]]
    for a, b in zip(shells[:-1], shells[1:]):
        breaks.extend(np.linspace(a, b, panels_per_level + 1)[1:])
    breaks = np.asarray(breaks)
    if inner > 0.0:
        breaks = np.concatenate([[inner], breaks[breaks > inner]])
    return breaks


def _arc_to_x1(arc, knot_s, knot_x):
    """Piecewise-linear arc -> x1, anchored at the segment end nearer the origin.

    Anchoring at the near end keeps relative precision for tiny |arc|.
    """
    j = np.clip(np.searchsorted(knot_s, arc) - 1, 0, len(knot_s) - 2)
    s0, s1 = knot_s[j], knot_s[j + 1]
    x0, x1 = knot_x[j], knot_x[j + 1]
    near = np.abs(s1) < np.abs(s0)
    s_ref = np.where(near, s1, s0)
    x_ref = np.where(near, x1, x0)
    return x_ref + (arc - s_ref) * (x1 - x0) / (s1 - s0)


def boundary_mesh(domain, truncation_radius, grading=None, inner_radius=0.0):
    """Gauss-Legendre nodes on the boundary inside B(0, R), graded toward 0.

    ``inner_radius > 0`` removes the part of the boundary inside that radius.
    For graphs with M < 1 the truncated boundary is exactly the boundary
    inside the disc; otherwise it is the piece up to the first exit.
    """
    grading = grading or GradingSpec()
    if not truncation_radius > 0.0:
        raise ZarembaError("truncation radius must be positive")
    if not 0.0 <= inner_radius < truncation_radius:
        raise ZarembaError("inner radius must lie in [0, truncation_radius)")
    graph = domain.as_graph()
    p = grading.nodes_per_panel
    gx, gw = gauss_legendre(p)

    x_lo = _exit_x1(graph, truncation_radius, -1)
    x_hi = _exit_x1(graph, truncation_radius, +1)
    s_lo, s_hi = graph.arc_length([x_lo, x_hi])
    if inner_radius > 0.0:
        xi_lo = _exit_x1(graph, inner_radius, -1)
        xi_hi = _exit_x1(graph, inner_radius, +1)
        si_lo, si_hi = graph.arc_length([xi_lo, xi_hi])
    else:
        si_lo = si_hi = 0.0

    right = _side_breaks(s_hi, si_hi, grading.levels, grading.panels_per_level)
    left = -_side_breaks(-s_lo, -si_lo, grading.levels, grading.panels_per_level)[::-1]
    kinks = graph.kinks_between(x_lo, x_hi)
    kinks = kinks[kinks != 0.0]
    kink_arcs = graph.arc_length(kinks) if len(kinks) else np.empty(0)
    kink_arcs = kink_arcs[((kink_arcs > si_hi) & (kink_arcs < s_hi)) |
                          ((kink_arcs < si_lo) & (kink_arcs > s_lo))]
    if inner_radius > 0.0:
        left_edges = np.union1d(left, kink_arcs[kink_arcs < 0.0])
        right_edges = np.union1d(right, kink_arcs[kink_arcs > 0.0])
        pairs = [(a, b) for edges in (left_edges, right_edges) for a, b in zip(edges[:-1], edges[1:])]
    else:
        edges = np.union1d(np.union1d(left, right), kink_arcs)
        pairs = list(zip(edges[:-1], edges[1:]))

    # arc -> x1 map, exact on each straight piece
    knot_x = np.union1d(graph.kinks_between(x_lo, x_hi), [x_lo, 0.0, x_hi])
    knot_s = graph.arc_length(knot_x)

    panels = np.array(pairs, dtype=float)
    sa, sb = panels[:, 0], panels[:, 1]
    arc = (0.5 * (sa + sb))[:, None] + (0.5 * (sb - sa))[:, None] * gx[None, :]
    weights = (0.5 * (sb - sa))[:, None] * gw[None, :]
    x1 = _arc_to_x1(arc, knot_s, knot_x)
    mid_x1 = _arc_to_x1(0.5 * (sa + sb), knot_s, knot_x)
    normals = np.repeat(graph.outward_normal(mid_x1)[:, None, :], p, axis=1)
    points = graph.point(x1)
    return BoundaryMesh(
        points=points.reshape(-1, 2),
        arc=arc.ravel(),
        normals=normals.reshape(-1, 2),
        weights=weights.ravel(),
        panels=panels,
        panel_of=np.repeat(np.arange(len(panels)), p),
        nodes_per_panel=p,
        truncation_radius=float(truncation_radius),
        inner_radius=float(inner_radius),
        metadata={"levels": grading.levels, "panels_per_level": grading.panels_per_level,
                  "nodes_per_panel": p, "truncation_radius": float(truncation_radius),
                  "inner_radius": float(inner_radius)},
    )


# power-weighted ball measures

def _as_boundary_point(graph, x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.size == 1:
        return graph.point(float(x[0]))
    if abs(x[1] - float(graph.phi(x[0]))) > 1e-9 * max(1.0, abs(x[0])):
        raise ZarembaError(f"point {tuple(x)} is not on the boundary")
    return x[:2]


def _segment_power_integral(a, b, eps):
    """Integral of |y|**eps over the straight segment from a to b (arc measure)."""
    d = b - a
    length = math.hypot(*d)
    if length == 0.0:
        return 0.0
    u = d / length
    t_foot = -float(np.dot(a, u))
    h = abs(float(a[0] * u[1] - a[1] * u[0]))
    t1, t2 = -t_foot, length - t_foot  # along-line coordinates relative to the foot
    if eps == 0.0:
        return length
    scale = max(abs(t1), abs(t2))
    if h <= 1e-15 * scale:
        if eps <= -1.0 and t1 <= 0.0 <= t2:
            return math.inf

        def prim(t):
            return math.copysign(1.0, t) * abs(t) ** (eps + 1.0) / (eps + 1.0)
        return prim(t2) - prim(t1)

    def f(t):
        return (t * t + h * h) ** (0.5 * eps)

    total = 0.0
    cuts = [t1, t2] if not t1 < 0.0 < t2 else [t1, 0.0, t2]
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        val, _ = integrate.quad(f, lo, hi, epsabs=0.0, epsrel=1e-13, limit=400)
        total += val
    return total


def _ball_pieces(graph, center, r):
    """Straight sub-segments of the boundary lying in B(center, r)."""
    c1 = float(center[0])
    xs = np.concatenate([[c1 - r], graph.kinks_between(c1 - r, c1 + r), [c1 + r]])
    pieces = []
    for xa, xb in zip(xs[:-1], xs[1:]):
        a, b = graph.point(xa), graph.point(xb)
        d = b - a
        # |a + t d - c|^2 = r^2
        e = a - center
        qa = float(np.dot(d, d))
        qb = 2.0 * float(np.dot(e, d))
        qc = float(np.dot(e, e)) - r * r
        disc = qb * qb - 4.0 * qa * qc
        if disc <= 0.0:
            continue
        sq = math.sqrt(disc)
        lo = max(0.0, (-qb - sq) / (2.0 * qa))
        hi = min(1.0, (-qb + sq) / (2.0 * qa))
        if hi > lo:
            pieces.append((a + lo * d, a + hi * d))
    return pieces


def power_ball_integral(domain, x, r, eps):
    """Integral of |y|**eps over Delta_r(x); inf when it diverges."""
    if r == 0.0:
        return 0.0
    if r < 0.0:
        raise ZarembaError("ball radius must be nonnegative")
    graph = domain.as_graph()
    center = _as_boundary_point(graph, x)
    return float(sum(_segment_power_integral(a, b, eps) for a, b in _ball_pieces(graph, center, r)))


def weighted_ball_measure(domain, x, r, mu):
    """sigma_eps(Delta_r(x)) for the boundary point x (a 2D point or its x1)."""
    return power_ball_integral(domain, x, r, mu.epsilon)


def measure_lemma_constants(epsilon, M):
    """Documented (c1, c2) bracketing sigma_eps(Delta_r(x)) / (r max(|x|, r)**eps)."""
    k = (1.0 + M * M) ** (0.5 * (1.0 + abs(epsilon)))
    flat = (2.0, 2.0 / (1.0 + epsilon))
    return min(flat) / k, max(flat) * k


MEASURE_RTOL = 1e-12


def measure_lemma_inside(ratio, c1, c2, rtol=MEASURE_RTOL):
    """c1 <= ratio <= c2 up to rounding; c1 is attained exactly at x = 0 on flat boundaries."""
    return c1 * (1.0 - rtol) <= ratio <= c2 * (1.0 + rtol)


def measure_lemma_ratio(domain, x, r, mu):
    graph = domain.as_graph()
    center = _as_boundary_point(graph, x)
    scale = r * max(math.hypot(*center), r) ** mu.epsilon
    return weighted_ball_measure(graph, center, r, mu) / scale


@dataclass(frozen=True)
class BallFamily:
    """A finite family of surface balls: every center paired with every radius."""

    centers: tuple
    radii: tuple

    @classmethod
    def dyadic(cls, centers=(0.0,), r_min=1e-3, r_max=1e3):
        k0 = int(math.floor(math.log2(r_min)))
        k1 = int(math.ceil(math.log2(r_max)))
        return cls(tuple(centers), tuple(2.0 ** np.arange(k0, k1 + 1)))

    def __iter__(self):
        for c in self.centers:
            for r in self.radii:
                yield c, r


def ap_ratios(domain, mu, p, family):
    """(avg w)(avg w^{-1/(p-1)})^{p-1} for every ball of the family."""
    if not p > 1.0:
        raise ZarembaError("A_p needs p > 1")
    dual = -mu.epsilon / (p - 1.0)
    out = []
    for c, r in family:
        length = power_ball_integral(domain, c, r, 0.0)
        avg_w = power_ball_integral(domain, c, r, mu.epsilon) / length
        avg_dual = power_ball_integral(domain, c, r, dual) / length
        out.append(avg_w * avg_dual ** (p - 1.0))
    return np.array(out)


def ap_constant_estimate(domain, mu, p, family):
    """Empirical A_p constant: the largest ratio over the declared family."""
    return float(np.max(ap_ratios(domain, mu, p, family)))


def carleson_numerator(domain, x, r, mu, R):
    """mu_eps(B_r(x) cap Omega) for d mu_eps = |y|**eps / R on B(0, R)."""
    graph = domain.as_graph()
    c = _as_boundary_point(graph, x)
    eps = mu.epsilon
    lo1, hi1 = max(c[0] - r, -R), min(c[0] + r, R)
    if hi1 <= lo1:
        return 0.0

    def slice_integral(y1):
        hb = math.sqrt(max(r * r - (y1 - c[0]) ** 2, 0.0))
        hR = math.sqrt(max(R * R - y1 * y1, 0.0))
        lo = max(float(graph.phi(y1)), c[1] - hb, -hR)
        hi = min(c[1] + hb, hR)
        if hi <= lo:
            return 0.0
        if eps == 0.0:
            return hi - lo

        def f(y2):
            return (y1 * y1 + y2 * y2) ** (0.5 * eps)
        cuts = [lo, hi] if not lo < 0.0 < hi else [lo, 0.0, hi]
        return sum(integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-10, limit=200)[0]
                   for a, b in zip(cuts[:-1], cuts[1:]))

    pts = sorted(set([lo1, hi1] + [float(k) for k in graph.kinks_between(lo1, hi1)]
                     + ([0.0] if lo1 < 0.0 < hi1 else [])))
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        total += integrate.quad(slice_integral, a, b, epsabs=0.0, epsrel=1e-9, limit=200)[0]
    return total / R


def carleson_ratios(domain, mu, R, samples):
    out = []
    for x, r in samples:
        num = carleson_numerator(domain, x, r, mu, R)
        out.append(num / weighted_ball_measure(domain, x, r, mu))
    return np.array(out)


def carleson_ratio(domain, mu, R, samples):
    """Empirical Carleson constant of mu_eps against sigma_eps over (x, r) samples."""
    if not R > 0.0:
        raise ZarembaError("Carleson truncation radius must be positive")
    return float(np.max(carleson_ratios(domain, mu, R, samples)))
