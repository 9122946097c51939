import math

import numpy as np
import pytest

from zaremba import (MixedData, Sector, SectorMap, SingularPointError, SolverError, SolverGrading, ZarembaError,
                     build_field_mixed, catalog, cauchy_transfer_check, conformal_transfer_solve, contour_mesh,
                     data_norm_identity, eval_solution, solve_mixed)
from zaremba import solver
from zaremba.solver import (_k_single, _operator, _self_map, boundary_traces, circle_mesh, jump_operator,
                            manufactured_error, normal_limit, probe_points, solution_twosided_check)

SECTOR = Sector(3 * math.pi / 8)
HALF = Sector(math.pi / 2)
SMALL = SolverGrading(8, 5, 4, 1)


def test_circle_single_layer_of_unit_density():
    # S[1] = -a log a inside and on the circle |z| = a
    for a in (0.5, 2.0):
        mesh = circle_mesh(a)
        on = _operator(mesh, _k_single, mesh.nodes, None, _self_map(mesh)) @ np.ones(len(mesh))
        inner = _operator(mesh, _k_single, np.array([0.1 * a, 0.3j * a])) @ np.ones(len(mesh))
        assert np.max(np.abs(on + a * math.log(a))) < 1e-13
        assert np.max(np.abs(inner + a * math.log(a))) < 1e-13


def test_contour_mesh_geometry():
    mesh = contour_mesh(SECTOR, 2.0, SMALL)
    # two rays of length R plus the arc of angle 2 phi
    want = 4.0 + 2.0 * 2 * SECTOR.opening
    assert mesh.arc_length == pytest.approx(want, rel=1e-13)
    assert np.all(np.abs(mesh.nodes[mesh.mask("arc")]) == pytest.approx(2.0))
    assert np.all(mesh.nodes[mesh.mask("D")].real < 0) and np.all(mesh.nodes[mesh.mask("N")].real > 0)
    assert np.allclose(np.abs(mesh.normals), 1.0)
    # the arc is traversed counterclockwise, so its normal points outward
    arc = mesh.mask("arc")
    assert np.allclose(mesh.normals[arc], mesh.nodes[arc] / 2.0)
    assert len(mesh) == 256


def test_deep_grading_keeps_distinct_nodes():
    g = SolverGrading(8, 60, 40, 1)
    mesh = contour_mesh(SECTOR, 2.0, g)
    assert np.min(np.abs(mesh.nodes)) < 1e-17
    assert len(contour_mesh(SECTOR, 2.0, g.refined())) == 2 * len(mesh)


def test_grading_families():
    g = SolverGrading(8, 5, 4, 1)
    assert g.refined() == SolverGrading(8, 5, 4, 2)
    assert g.deepened() == SolverGrading(8, 11, 9, 1)
    with pytest.raises(ZarembaError):
        SolverGrading(1)


def test_zero_data_gives_zero_density():
    mesh = contour_mesh(SECTOR, 2.0, SMALL)
    dens = solve_mixed(SECTOR, 2.0, mesh, MixedData.zero())
    assert np.max(np.abs(dens.values)) == 0.0
    assert not dens.flagged and dens.condition < 1e12


def test_manufactured_polynomial_on_sawtooth_free_sector():
    u = catalog("poly:0,3,1")
    probes = probe_points(SECTOR, 2.0, 30)
    rep = manufactured_error(SECTOR, 2.0, u, SMALL, probes)
    assert rep.max_error < 1e-4 and rep.residual < 1e-12


def test_half_plane_corner_singularity():
    # Re z^(1/2) has zero data on D and N; only the arc carries data
    u = catalog("mixed-eigen:" + repr(math.pi / 2))
    rep = manufactured_error(HALF, 1.0, u, SolverGrading(), probe_points(HALF, 1.0, 30))
    assert rep.max_error < 1e-5


def test_interior_jump_relation():
    u = catalog("poly:0,3,1")
    mesh = contour_mesh(SECTOR, 2.0, SMALL)
    dens = solve_mixed(SECTOR, 2.0, mesh, MixedData.from_harmonic(u))
    sel, inner = normal_limit(dens, side=-1)
    _, outer = normal_limit(dens, side=+1)
    rho, Kr = jump_operator(dens, sel)
    scale = np.max(np.abs(rho))
    assert np.max(np.abs(inner - (0.5 * rho + Kr))) < 1e-6 * scale
    assert np.max(np.abs(outer - (-0.5 * rho + Kr))) < 1e-6 * scale
    # and the interior trace reproduces the Neumann data of u
    _, un, _ = boundary_traces(dens)
    N = mesh.mask("N")
    want = (u.cderiv(mesh.nodes[N]) * mesh.normals[N]).real
    assert np.max(np.abs(un[N] - want)) < 1e-9 * np.max(np.abs(want))


def test_gradient_of_solution():
    u = catalog("poly:0,3,1")
    mesh = contour_mesh(SECTOR, 2.0, SolverGrading())
    dens = solve_mixed(SECTOR, 2.0, mesh, MixedData.from_harmonic(u))
    z = np.array([0.3 + 1.0j, -0.2 + 0.6j])
    _, g = eval_solution(dens, z)
    assert np.max(np.abs(g - u.grad(z))) < 1e-6
    with pytest.raises(SingularPointError):
        eval_solution(dens, mesh.nodes[:1])


def test_twosided_check_from_traces():
    u = catalog("poly:0,1")
    mesh = contour_mesh(HALF, 1.0, SolverGrading())
    dens = solve_mixed(HALF, 1.0, mesh, MixedData.from_harmonic(u))
    rep = solution_twosided_check(dens, build_field_mixed(0.0, 0.5))
    # B uses only prescribed traces; A also the free ones, which are poor at the truncation corners
    assert rep.B == pytest.approx(2.0 / 3.0, rel=1e-8)
    assert rep.A == pytest.approx(4.0 / 3.0, rel=3e-3)
    assert rep.holds


def test_strict_solve_raises_on_flagged_system(monkeypatch):
    monkeypatch.setattr(solver, "COND_LIMIT", 1.0)
    mesh = contour_mesh(SECTOR, 2.0, SMALL)
    with pytest.raises(SolverError):
        solve_mixed(SECTOR, 2.0, mesh, MixedData.from_harmonic(catalog("poly:0,1")))
    dens = solve_mixed(SECTOR, 2.0, mesh, MixedData.from_harmonic(catalog("poly:0,1")), strict=False)
    assert dens.flagged


def test_sample_arrays_must_conform():
    mesh = contour_mesh(SECTOR, 2.0, SMALL)
    with pytest.raises(ZarembaError):
        MixedData(np.zeros(3), np.zeros(3), np.zeros(3)).samples(mesh)


def test_conformal_transfer_of_power_function():
    sec = Sector(3 * math.pi / 4)
    m = SectorMap(0.6)
    v = catalog("power:2")
    u = lambda z: v(m(z))
    from zaremba.harmonic import Composed, HarmonicFunction
    uh = HarmonicFunction(Composed(v.generator, m))
    sol = conformal_transfer_solve(sec, 0.6, MixedData.from_harmonic(uh), 2.0, SolverGrading(8, 5, 4, 1))
    probes = probe_points(sec, 2.0, 20)
    assert np.max(np.abs(sol(probes) - u(probes))) < 1e-4
    with pytest.raises(ZarembaError):
        conformal_transfer_solve(sec, 0.7, MixedData.from_harmonic(uh), 2.0)
    with pytest.raises(ZarembaError):
        conformal_transfer_solve(SECTOR, 0.5, MixedData.from_harmonic(uh), 2.0)


def test_data_norm_identity_power_case():
    sec = Sector(3 * math.pi / 4)
    u = catalog("poly:0,1,1")
    img, orig = data_norm_identity(sec, 0.6, lambda z, nu: (u.cderiv(z) * nu).real, 2.0)
    assert img == pytest.approx(orig, rel=1e-10)


def test_cauchy_integral_of_pulled_back_derivative():
    sec = Sector(3 * math.pi / 4)
    m = SectorMap(0.6)
    worst, skipped = cauchy_transfer_check(lambda eta: 2 * eta + 1, m, sec, 2.0, probe_points(sec, 2.0, 10))
    assert worst < 1e-10 and len(skipped) < 10
