import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zaremba import (GradingSpec, GraphDomain, HolomorphicField, SectorMap, Sector, SingularPointError,
                     WindowError, ZarembaError, boundary_mesh, build_field_mixed, build_field_signdefinite,
                     check_sign_bounds, measure_transfer_check)
from zaremba.fields import branch_arg, branch_power, normalized_dot


def test_branch_cut_runs_down_the_imaginary_axis():
    assert branch_arg(-1.0) == pytest.approx(math.pi)
    assert branch_arg(-1j * 1.0 + 1e-300) == pytest.approx(-math.pi / 2)
    assert branch_arg(-1e-9 - 1j) == pytest.approx(3 * math.pi / 2, rel=1e-8)
    # z^(1/2) at -1 is i on this branch
    assert branch_power(-1.0, 0.5) == pytest.approx(1j)


def test_field_values_at_origin():
    assert np.allclose(HolomorphicField(0.3, 0.5)(0.0), 0.0)
    assert np.allclose(HolomorphicField(0.3, 0.0)(0.0), [math.cos(0.3), math.sin(0.3)])
    with pytest.raises(SingularPointError):
        HolomorphicField(0.0, -0.5)(0.0)


def test_mixed_field_hand_values():
    # M = 0, eps = 1/2: lambda = 3 pi/4 and alpha.nu = -+ (sqrt 2 / 2) |x|^(1/2) on N and D
    cert = build_field_mixed(0.0, 0.5)
    assert cert.field.lam == pytest.approx(3 * math.pi / 4)
    assert cert.bound == pytest.approx(math.sqrt(0.5))
    t = 4.0
    a_N = cert.field(t)
    a_D = cert.field(-t)
    assert np.dot(a_N, [0.0, -1.0]) == pytest.approx(-math.sqrt(0.5) * 2.0)
    assert np.dot(a_D, [0.0, -1.0]) == pytest.approx(math.sqrt(0.5) * 2.0)


def test_signdefinite_field_hand_values():
    # M = 0, eps = 1/3: beta0 = lambda = pi/3 and alpha.nu = -sin(pi/3) |x|^(1/3) on both sides
    cert = build_field_signdefinite(0.0, 1.0 / 3.0)
    assert cert.beta0 == pytest.approx(math.pi / 3)
    for x in (-8.0, 8.0):
        assert np.dot(cert.field(x), [0.0, -1.0]) == pytest.approx(-math.sin(math.pi / 3) * 2.0)


def test_windows_reject_endpoints():
    with pytest.raises(WindowError) as err:
        build_field_mixed(0.0, 0.0)
    assert err.value.lower == pytest.approx(0.0)
    with pytest.raises(WindowError):
        build_field_mixed(math.tan(math.pi / 8), 1.0 / 3.0)
    with pytest.raises(WindowError):
        build_field_signdefinite(0.0, 1.0)
    with pytest.raises(ZarembaError):
        build_field_mixed(1.0, 0.99)
    with pytest.raises(ZarembaError):
        build_field_signdefinite(-0.1, 0.0)


def _samples(domain, x1):
    pts = domain.point(x1)
    return SimpleNamespace(points=pts, normals=domain.outward_normal(x1), on_D=x1 < 0.0)


@given(M=st.floats(0.0, 0.95), frac=st.floats(0.02, 0.98), seed=st.integers(0, 2 ** 16))
def test_mixed_bounds_hold_on_random_graphs(M, frac, seed):
    lo = 2 * math.atan(M) / (math.pi - 2 * math.atan(M))
    eps = lo + frac * (1.0 - lo)
    cert = build_field_mixed(M, eps)
    rng = np.random.default_rng(seed)
    g = GraphDomain.random_sawtooth(M, rng, extent=8.0)
    x1 = rng.uniform(-8.0, 8.0, 500)
    x1 = x1[x1 != 0.0]
    assert check_sign_bounds(cert, _samples(g, x1)).holds


@given(M=st.floats(0.0, 5.0), frac=st.floats(-0.98, 0.98), seed=st.integers(0, 2 ** 16))
def test_signdefinite_bounds_hold_on_random_graphs(M, frac, seed):
    beta = math.atan(M)
    eps = frac * (math.pi - 2 * beta) / (math.pi + 2 * beta)
    cert = build_field_signdefinite(M, eps)
    rng = np.random.default_rng(seed)
    g = GraphDomain.random_sawtooth(M, rng, extent=8.0)
    x1 = rng.uniform(-8.0, 8.0, 500)
    x1 = x1[x1 != 0.0]
    check = check_sign_bounds(cert, _samples(g, x1))
    assert check.holds and check.n_samples == len(x1)


def test_bound_is_attained_on_flat_boundary():
    cert = build_field_mixed(0.0, 0.5)
    mesh = boundary_mesh(GraphDomain.flat(), 4.0, GradingSpec(8, 1, 4))
    q = normalized_dot(cert.field, mesh)
    assert np.allclose(np.abs(q), cert.bound, rtol=1e-13)
    assert check_sign_bounds(cert, mesh).worst_margin == pytest.approx(0.0, abs=1e-13)


def test_sector_map_roundtrip_and_rays():
    m = SectorMap(0.6)
    z = np.array([0.3 + 0.2j, -1.0 + 0.5j, 2.0j])
    assert np.allclose(m.inverse(m(z)), z, rtol=1e-14)
    # the upward axis is fixed and rays at pi/2 +- phi go to pi/2 +- s phi
    assert m(2.0j) == pytest.approx(1j * 2.0 ** 0.6)
    phi = 3 * math.pi / 4
    w = m(np.exp(1j * (math.pi / 2 - phi)))
    assert np.angle(w) == pytest.approx(math.pi / 2 - 0.6 * phi)
    assert m.image(Sector(phi)).opening == pytest.approx(0.6 * phi)


def test_sector_map_derivative_matches_difference_quotient():
    m = SectorMap(0.6)
    z, h = 0.7 + 0.4j, 1e-6
    fd = (m(z + h) - m(z - h)) / (2 * h)
    assert m.cderiv(z) == pytest.approx(fd, rel=1e-8)
    with pytest.raises(SingularPointError):
        m.cderiv(0.0)
    with pytest.raises(ZarembaError):
        SectorMap(1.5)


def test_measure_transfer_identity():
    sec = Sector(3 * math.pi / 4)
    mesh = boundary_mesh(sec, 2.0, GradingSpec(30, 1, 8))
    assert measure_transfer_check(SectorMap(0.6), sec, mesh) < 1e-13
