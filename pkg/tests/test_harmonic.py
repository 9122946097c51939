import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zaremba import (GradingSpec, GraphDomain, NontangentialGrid, Sector, SingularPointError, WeightedMeasure,
                     ZarembaError, boundary_mesh, build_field_mixed, build_field_signdefinite, catalog,
                     counterexample, counterexample_dichotomy, counterexample_scan, growth_exponent, ntmax_grad,
                     rellich_residual, rellich_twosided_check, weighted_lp_boundary_norm)
from zaremba.fields import HolomorphicField
from zaremba.harmonic import parse_real

FLAT = GraphDomain.flat()
E2 = HolomorphicField(math.pi / 2, 0.0)


def test_counterexample_closed_values():
    v, g = counterexample(1j)
    assert v == pytest.approx(math.cos(math.pi / 4) * (1 - math.sqrt(2)), rel=1e-14)
    # grad from F' = 1/(2 sqrt z) - 1/(2 sqrt(z + i)) = u_x - i u_y
    z = 0.01j
    d = 0.5 / cmath.sqrt(z) - 0.5 / cmath.sqrt(z + 1j)
    _, g = counterexample(z)
    assert g == pytest.approx([d.real, -d.imag], rel=1e-13)
    assert 4.4 <= abs(d) <= 5.6
    with pytest.raises(SingularPointError) as err:
        counterexample(0.0)
    assert err.value.value == pytest.approx(-math.cos(math.pi / 4))


def test_counterexample_is_harmonic_with_decaying_trace():
    u = catalog("counterexample")
    z, h = 0.3 + 0.7j, 1e-3
    lap = (u(z + h) + u(z - h) + u(z + 1j * h) + u(z - 1j * h) - 4 * u(z)) / h ** 2
    assert abs(lap) < 1e-5
    t = np.array([10.0, 100.0, 1e4])
    assert np.all(np.abs(u(t + 0j)) * np.sqrt(t) < 2.0)


def test_catalog_parsing():
    assert parse_real("3*pi/8") == pytest.approx(3 * math.pi / 8)
    assert catalog("poly:0,3,1")(2.0 + 0j) == pytest.approx(10.0)
    assert catalog("power:2")(1.0 + 1.0j) == pytest.approx(0.0, abs=1e-15)
    for bad in ("power:-1", "mixed-eigen:4", "nope", "poly:", "poly:x"):
        with pytest.raises(ZarembaError):
            catalog(bad)


@given(phi=st.floats(0.2, 3.0), r=st.floats(0.01, 10.0))
def test_mixed_eigenfunction_boundary_conditions(phi, r):
    u = catalog(f"mixed-eigen:{phi!r}")
    left = r * cmath.exp(1j * (math.pi / 2 + phi))
    right = r * cmath.exp(1j * (math.pi / 2 - phi))
    nu = cmath.exp(1j * (math.pi / 2 - phi - math.pi / 2))
    scale = r ** (math.pi / (4 * phi))
    assert abs(u(left)) <= 1e-12 * scale
    assert abs((u.cderiv(right) * nu).real) <= 1e-12 * scale / r


def test_growth_exponent_of_eigenfunction():
    for phi in (math.pi / 4, math.pi / 2, 3 * math.pi / 4):
        u = catalog(f"mixed-eigen:{phi!r}")
        k = growth_exponent(u, Sector(phi), 2.0 ** np.arange(-4, 5))
        assert k == pytest.approx(math.pi / (4 * phi), rel=1e-3)


def test_ntmax_is_a_refinement_monotone_lower_bound():
    u = catalog("power:2")
    x = np.array([1.0, 0.0])
    grid = NontangentialGrid(1e-3, 1.0, q=1.5)
    # |grad Re z^2| = 2|z|; the cone sup sits at r = r_max on the edge ray toward +x1
    t0 = grid.cone.theta0
    sup = 2 * abs(1 + cmath.exp(1j * (math.pi / 2 - t0)))
    coarse = ntmax_grad(u, x, grid)
    fine = ntmax_grad(u, x, grid.refine())
    assert coarse <= fine * (1 + 1e-13) and fine <= sup * (1 + 1e-12)
    assert fine == pytest.approx(sup, rel=0.05)
    exact = NontangentialGrid(1e-3, 1e-3 * 1.5 ** 17, q=1.5)
    top = 2 * abs(1 + 1e-3 * 1.5 ** 17 * cmath.exp(1j * (math.pi / 2 - t0)))
    assert ntmax_grad(u, x, exact) == pytest.approx(top, rel=1e-12)


def test_weighted_lp_norm_closed_form():
    mesh = boundary_mesh(FLAT, 1.0, GradingSpec(40, 1, 16))
    # (int_{-1}^{1} |t|^2 |t|^0.5 dt)^(1/2) = (2/3.5)^(1/2)
    n = weighted_lp_boundary_norm(lambda p: p[:, 0], 2.0, WeightedMeasure(0.5), mesh)
    assert n == pytest.approx(math.sqrt(2 / 3.5), rel=1e-13)


def test_rellich_flat_closed_form():
    # Re z^2 with e2 on the flat boundary: density -4 x1^2, so I = -8/3
    res = rellich_residual(catalog("power:2"), E2, FLAT, 1.0)
    assert res.boundary_integral == pytest.approx(-8.0 / 3.0, rel=1e-13)
    assert res.flux_correction == pytest.approx(8.0 / 3.0, rel=1e-13)
    assert res.converged


@given(c=st.lists(st.floats(-2.0, 2.0), min_size=2, max_size=4), R=st.sampled_from([0.5, 3.0]))
def test_rellich_identity_property(c, R):
    u = catalog("poly:" + ",".join(repr(v) for v in c))
    fld = build_field_signdefinite(0.3, 0.2).field
    res = rellich_residual(u, fld, GraphDomain.sawtooth(0.3), R)
    assert abs(res.residual) <= 1e-8 * (abs(res.boundary_integral) + abs(res.flux_correction) + 1e-14) + 1e-12


def test_twosided_bound_and_inconclusive_flag():
    cert = build_field_mixed(0.0, 0.5)
    # u = x1: A = int |t|^.5 over [-1, 1] = 4/3, B = the D half = 2/3
    rep = rellich_twosided_check(catalog("poly:0,1"), cert, FLAT, 1.0)
    assert rep.A == pytest.approx(4.0 / 3.0, rel=1e-9)
    assert rep.B == pytest.approx(2.0 / 3.0, rel=1e-9)
    assert rep.holds and rep.ratio == pytest.approx(2.0, rel=1e-9)
    assert rep.certificate == pytest.approx(math.sqrt(2))
    # Re z^(1/2) has zero mixed data: all of A is carried by the arc flux
    rep = rellich_twosided_check(catalog("mixed-eigen:" + repr(math.pi / 2)), cert, FLAT, 1.0)
    assert rep.B < 1e-20 and rep.inconclusive


def test_scan_increments_converge_to_geometric_limit():
    # per decade the tail integral of t^(-p/2) shrinks by 10^-(1 - p/2)
    cut = [10.0 ** -k for k in range(2, 11)]
    rows = counterexample_scan([1.0, 1.5, 1.9, 2.0], cut, grading=GradingSpec(40, 2, 16))
    for p in (1.0, 1.5, 1.9, 2.0):
        v = np.array([r.norm ** p for r in rows if r.p == p])
        inc = np.diff(v)
        assert np.all(inc > 0)
        assert inc[-1] / inc[-2] == pytest.approx(10.0 ** -(1 - p / 2), rel=1e-4)


def test_scan_dichotomy_at_critical_exponent():
    rows = counterexample_scan([2.0], [10.0 ** -k for k in range(2, 7)])
    d = counterexample_dichotomy(rows)
    assert d.log_divergent and d.increment_spread < 0.1
    assert all(r.error_estimate < 1e-2 * r.norm for r in rows)


def test_rellich_degenerate_mixed_pairs_vanish():
    # the mixed field has opposite signs on D and N; for z^k both I and F cancel exactly
    fld = build_field_mixed(0.0, 0.5).field
    for k in (1, 2, 3):
        for R in (1.0, 4.0, 16.0):
            res = rellich_residual(catalog(f"power:{k}"), fld, FLAT, R)
            size = R ** (2 * k - 1 + 1.5)
            assert abs(res.boundary_integral) < 1e-13 * size
            assert abs(res.flux_correction) < 1e-13 * size
