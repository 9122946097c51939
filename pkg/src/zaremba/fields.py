"""Holomorphic power vector fields and conformal power maps between sectors.

A field is alpha(z) = (Re, Im) of exp(i lam) z**eps with the branch of z**eps
taken for arg z in [-pi/2, 3pi/2), so the cut runs down the negative
imaginary axis, below every graph domain.  In polar form
alpha(r e^{i theta}) = r**eps e^{i psi(theta)} with psi(theta) = eps*theta + lam.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import SingularPointError, WindowError, ZarembaError

# relative slack used when deciding whether a value sits on a window endpoint
WINDOW_RTOL = 1e-12


def branch_arg(z):
    """arg z in [-pi/2, 3pi/2)."""
    a = np.angle(np.asarray(z, dtype=complex))
    return np.where(a < -0.5 * math.pi, a + 2.0 * math.pi, a)


def branch_power(z, eps):
    """z**eps on the branch with the cut along the downward vertical ray."""
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = r ** eps * np.exp(1j * eps * branch_arg(z))
    if eps > 0:
        out = np.where(r == 0.0, 0.0, out)
    elif eps == 0:
        out = np.where(r == 0.0, 1.0, out)
    return out


@dataclass(frozen=True)
class HolomorphicField:
    lam: float
    epsilon: float

    def __post_init__(self):
        if not self.epsilon > -1.0:
            raise ZarembaError(f"field exponent must exceed -1, got {self.epsilon}")

    def complex_value(self, z):
        z = np.asarray(z, dtype=complex)
        if self.epsilon < 0 and np.any(z == 0):
            raise SingularPointError("field is singular at the origin for negative exponent")
        return np.exp(1j * self.lam) * branch_power(z, self.epsilon)

    def __call__(self, z):
        w = self.complex_value(z)
        return np.stack([w.real, w.imag], axis=-1)

    def psi(self, theta):
        return self.epsilon * np.asarray(theta) + self.lam

    def to_json(self):
        return {"lambda": self.lam, "epsilon": self.epsilon}

    @classmethod
    def from_json(cls, doc):
        return cls(float(doc["lambda"]), float(doc["epsilon"]))


class CertifiedField(NamedTuple):
    """A field with the angle beta0 certifying its sign bounds."""

    field: HolomorphicField
    beta0: float
    beta: float
    kind: str

    @property
    def bound(self):
        """sin(beta0 - beta): the certified lower bound on |alpha.nu| / |x|**eps."""
        return math.sin(self.beta0 - self.beta)


def field_eval(field, z):
    return field(z)


def field_dot_normal(field, sample):
    """alpha(x) . nu(x) at BoundarySample(s) or a BoundaryMesh."""
    points = np.atleast_2d(np.asarray(getattr(sample, "point", None) if hasattr(sample, "point")
                                      else sample.points, dtype=float))
    normals = np.atleast_2d(np.asarray(sample.normal if hasattr(sample, "normal") else sample.normals,
                                       dtype=float))
    a = field(points[:, 0] + 1j * points[:, 1])
    out = np.einsum("ij,ij->i", a, normals)
    return float(out[0]) if hasattr(sample, "point") else out


def normalized_dot(field, mesh):
    """alpha.nu / |x|**eps at every mesh node."""
    r = np.hypot(*mesh.points.T)
    return field_dot_normal(field, mesh) / r ** field.epsilon


def _check_M(M):
    if not (M >= 0.0 and math.isfinite(M)):
        raise ZarembaError(f"Lipschitz constant must be a finite nonnegative number, got {M}")


def signdefinite_window(M):
    beta = math.atan(M)
    return (math.pi - 2 * beta) / (math.pi + 2 * beta)


def build_field_signdefinite(M, epsilon):
    """Field with alpha.nu <= -|x|**eps sin(beta0 - beta) on any graph of constant <= M."""
    _check_M(M)
    beta = math.atan(M)
    upper = signdefinite_window(M)
    if not abs(epsilon) < upper * (1.0 - WINDOW_RTOL):
        raise WindowError(
            f"|epsilon| must lie below {upper:.15g} for M = {M:g}; got {epsilon}",
            -upper, upper)
    beta0 = 0.5 * (math.pi - abs(epsilon) * (math.pi + 2 * beta))
    if epsilon >= 0:
        lam = beta0 + epsilon * beta
    else:
        lam = math.pi - beta0 + epsilon * beta
    return CertifiedField(HolomorphicField(lam, float(epsilon)), beta0, beta, "signdefinite")


def mixed_window(M):
    beta = math.atan(M)
    return 2 * beta / (math.pi - 2 * beta), 1.0


def build_field_mixed(M, epsilon):
    """Field with alpha.nu negative on N and positive on D, of size ~ |x|**eps."""
    _check_M(M)
    if not M < 1.0:
        raise ZarembaError(f"Lipschitz constant must be < 1 for the mixed field, got {M}")
    beta = math.atan(M)
    lo, hi = mixed_window(M)
    tol = WINDOW_RTOL * max(lo, 1.0)
    if not lo + tol < epsilon < hi - WINDOW_RTOL:
        raise WindowError(
            f"epsilon must lie in ({lo:.15g}, {hi:.15g}) for M = {M:g}; got {epsilon}", lo, hi)
    beta0 = 0.5 * epsilon * (math.pi - 2 * beta)
    lam = math.pi - math.pi * beta0 / (math.pi - 2 * beta)
    return CertifiedField(HolomorphicField(lam, float(epsilon)), beta0, beta, "mixed")


class SignCheck(NamedTuple):
    holds: bool
    worst_margin: float
    n_samples: int


def check_sign_bounds(cert, mesh, atol=1e-12):
    """Verify the certified pointwise bounds at every node of ``mesh``.

    The bounds are checked non-strictly with absolute slack ``atol``: on flat
    boundaries the extreme values are attained exactly.
    """
    q = normalized_dot(cert.field, mesh)
    s = cert.bound
    if cert.kind == "mixed":
        q = np.where(mesh.on_D, -q, q)
    # want -1 <= q <= -s
    margin = np.minimum(q + 1.0, -s - q)
    worst = float(margin.min())
    return SignCheck(worst >= -atol, worst, len(q))


@dataclass(frozen=True)
class SectorMap:
    """eta = i (-i z)**s, taking the sector of half-opening phi to half-opening s*phi."""

    s: float

    def __post_init__(self):
        if not 0.0 < self.s <= 1.0:
            raise ZarembaError(f"sector map power must lie in (0, 1], got {self.s}")

    @property
    def epsilon(self):
        return 1.0 - self.s

    def __call__(self, z):
        return 1j * (-1j * np.asarray(z, dtype=complex)) ** self.s

    def inverse(self, eta):
        return 1j * (-1j * np.asarray(eta, dtype=complex)) ** (1.0 / self.s)

    def cderiv(self, z):
        z = np.asarray(z, dtype=complex)
        if self.s < 1.0 and np.any(z == 0):
            raise SingularPointError("sector map derivative is singular at the origin")
        if self.s == 1.0:
            return np.ones_like(z)
        return self.s * (-1j * z) ** (self.s - 1.0)

    def image(self, sector):
        from .geometry import Sector
        return Sector(self.s * sector.opening)

    def to_json(self):
        return {"s": self.s}


def sector_map(m, z):
    return m(z)


def sector_map_inverse(m, eta):
    return m.inverse(eta)


def sector_map_cderiv(m, z):
    return m.cderiv(z)


def measure_transfer_check(m, sector, mesh):
    """Max relative defect of 1/|phi_s'(x)| = (1/s)|x|**(1-s) over mesh nodes."""
    z = mesh.z if hasattr(mesh, "z") else np.asarray(mesh, dtype=complex)
    z = z[z != 0]
    lhs = 1.0 / np.abs(m.cderiv(z))
    rhs = np.abs(z) ** m.epsilon / m.s
    return float(np.max(np.abs(lhs - rhs) / rhs))
