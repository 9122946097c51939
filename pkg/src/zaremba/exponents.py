"""Exponent windows and the solvability thresholds p1, p2, p0 as functions of M and delta.

With beta = arctan M:

* Neumann/regularity window:   |eps| < (pi - 2 beta)/(pi + 2 beta)
* mixed L2 window:             2 beta/(pi - 2 beta) < eps < 1
* atomic window:               (4 beta - pi)/(2(pi - beta)) < eps' < delta
* interpolation atomic window: max(-delta, (eps - 1)/2) < eps' <= 0

and, with m = min(delta, (pi - 4 beta)/(2(pi - beta))) and t = (pi - 2 beta) m,

    p1 = (2 t + 2 beta)/(t + 2 beta),   p2 = 1/(1 - delta),   p0 = min(p1, p2).

These are sufficient thresholds; they are not sharp for any given domain.
"""

import csv
import io
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

from .errors import ZarembaError
from .greens import DEFAULT_DELTA


def _beta(M):
    if not (0.0 <= M < 1.0):
        raise ZarembaError(f"Lipschitz constant must lie in [0, 1), got {M}")
    return math.atan(M)


def neumann_reg_window(M):
    beta = math.atan(M)
    u = (math.pi - 2 * beta) / (math.pi + 2 * beta)
    return -u, u


def mixed_L2_window(M):
    beta = math.atan(M)
    return 2 * beta / (math.pi - 2 * beta), 1.0


def atomic_window(M, delta):
    beta = math.atan(M)
    return (4 * beta - math.pi) / (2 * (math.pi - beta)), delta


def atomic_interp_window(delta, epsilon):
    """Lower and upper limits for eps' when interpolating against L2(sigma_eps)."""
    return max(-delta, 0.5 * (epsilon - 1.0)), 0.0


def p1_threshold(M, delta):
    beta = math.atan(M)
    m = min(delta, (math.pi - 4 * beta) / (2 * (math.pi - beta)))
    t = (math.pi - 2 * beta) * m
    return (2 * t + 2 * beta) / (t + 2 * beta)


def p2_threshold(delta):
    return 1.0 / (1.0 - delta)


@dataclass(frozen=True)
class ExponentReport:
    M: float
    beta: float
    delta: float
    delta_source: str
    m: float
    window_neumann_reg: tuple
    window_mixed_L2: tuple
    window_atomic: tuple
    p1: float
    p2: float
    p0: float
    in_hypothesis: bool

    def to_dict(self):
        d = asdict(self)
        for k in ("window_neumann_reg", "window_mixed_L2", "window_atomic"):
            d[k] = list(d[k])
        return d


def exponent_report(M, delta=None):
    """All windows and thresholds for Lipschitz constant M and Hoelder exponent delta."""
    beta = _beta(M)
    source = "supplied"
    if delta is None:
        delta, source = DEFAULT_DELTA, "default quadrant value"
    if not 0.0 < delta < 1.0:
        raise ZarembaError(f"delta must lie in (0, 1), got {delta}")
    cap = (math.pi - 4 * beta) / (2 * (math.pi - beta))
    p1 = p1_threshold(M, delta)
    p2 = p2_threshold(delta)
    return ExponentReport(
        M=float(M), beta=beta, delta=float(delta), delta_source=source, m=min(delta, cap),
        window_neumann_reg=neumann_reg_window(M), window_mixed_L2=mixed_L2_window(M),
        window_atomic=atomic_window(M, delta), p1=p1, p2=p2, p0=min(p1, p2),
        in_hypothesis=cap > 0.0)


class WindowCheck(NamedTuple):
    inside: bool
    lower: float
    upper: float
    lower_margin: float
    upper_margin: float


def window_check(M, epsilon, which, delta=None):
    """Strict membership of epsilon in an open window, with distances to both ends."""
    if not M >= 0.0:
        raise ZarembaError("Lipschitz constant must be nonnegative")
    if which == "neumann_reg":
        lo, hi = neumann_reg_window(M)
    elif which == "mixed_L2":
        lo, hi = mixed_L2_window(M)
    elif which == "atomic":
        lo, hi = atomic_window(M, DEFAULT_DELTA if delta is None else delta)
    else:
        raise ZarembaError(f"unknown window {which!r}")
    lm, um = epsilon - lo, hi - epsilon
    return WindowCheck(lm > 0.0 and um > 0.0, lo, hi, lm, um)


def sweep_csv(Ms, delta):
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["M", "beta", "lower_mixed", "p1", "p2", "p0"])
    for M in Ms:
        r = exponent_report(M, delta)
        out.writerow([repr(float(v)) for v in (r.M, r.beta, r.window_mixed_L2[0], r.p1, r.p2, r.p0)])
    return buf.getvalue()
