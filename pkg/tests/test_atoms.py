import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zaremba import (GradingSpec, GraphDomain, ZarembaError, boundary_mesh, greens_trace_partition, h11_primitive,
                     h11_seminorm_pair_check, make_atom, moment_partition)
from zaremba.atoms import ball_measure


def test_haar_atom_normalization():
    a = make_atom(2.0, 1.0, "haar")
    assert a.sup == pytest.approx(0.5)
    assert abs(a.integral) < 1e-15
    assert a.support == (1.0, 3.0)


def test_negative_weight_atom_constant():
    # sigma_{-1/2}([-1, 1]) = 4, so the sup is 1/4
    a = make_atom(0.0, 1.0, "haar", epsilon=-0.5)
    assert ball_measure(0.0, 1.0, -0.5) == pytest.approx(4.0)
    assert a.sup == pytest.approx(0.25)
    assert a.canonical


def test_bump_pair_and_custom_atoms():
    a = make_atom(1.0, 0.5, "bump-pair")
    assert a.sup == pytest.approx(1.0, rel=1e-3)
    assert abs(a.integral) < 1e-14
    c = make_atom(1.0, 0.5, "custom", samples=lambda s: np.cos(2 * math.pi * (s - 1.0)))
    assert abs(c.integral) < 1e-14
    with pytest.raises(ZarembaError):
        make_atom(1.0, 0.5, "custom", samples=lambda s: 1.0 + 0 * s)
    with pytest.raises(ZarembaError):
        make_atom(1.0, -0.5)
    with pytest.warns(UserWarning):
        make_atom(1.0, 0.5, epsilon=0.5)


def test_haar_primitive_is_a_tent():
    a = make_atom(2.0, 1.0, "haar")
    A = h11_primitive(a)
    s = np.array([1.0, 1.5, 2.0, 2.5, 3.0, 4.0])
    assert A(s) == pytest.approx([0.0, 0.25, 0.5, 0.25, 0.0, 0.0], abs=1e-14)
    assert h11_seminorm_pair_check(a) == pytest.approx(0.5, rel=1e-12)


def test_primitive_base_point_shifts_by_constant():
    a = make_atom(2.0, 1.0, "bump-pair")
    s = np.linspace(0.5, 3.5, 31)
    diff = h11_primitive(a, 0.0)(s) - h11_primitive(a, 2.0)(s)
    assert np.ptp(diff) < 1e-14


@given(center=st.floats(-10.0, 10.0), rho=st.floats(0.01, 5.0), factor=st.floats(0.1, 10.0),
       eps=st.floats(-0.9, 0.0))
def test_dilation_keeps_sup_normalization(center, rho, factor, eps):
    a = make_atom(center, rho, "haar", epsilon=eps)
    b = a.dilate(factor)
    assert b.sup * b.ball_measure == pytest.approx(1.0, rel=1e-9)
    assert abs(b.integral) <= 1e-10 * b.sup * b.rho
    b.validate()


@given(seed=st.integers(0, 2 ** 16), rho=st.floats(0.05, 1.0), levels=st.one_of(st.none(), st.integers(1, 4)))
def test_moment_partition_property(seed, rho, levels):
    mesh = boundary_mesh(GraphDomain.flat(), 4.0, GradingSpec(10, 1, 6))
    rng = np.random.default_rng(seed)
    g = rng.standard_normal(len(mesh))
    g -= np.dot(mesh.weights, g) / mesh.weights.sum()
    part = moment_partition(g, mesh, (0.3, 0.0), rho, levels=levels)
    assert np.allclose(part.reconstruct(), g, rtol=0, atol=1e-14)
    ints = part.block_integrals(mesh.weights)
    assert np.all(np.abs(ints) <= 1e-12 * np.dot(mesh.weights, np.abs(g)))
    for b, r in zip(part.blocks[:-1], part.radii):
        assert np.all(b[np.hypot(*(mesh.points - [0.3, 0.0]).T) >= r] == 0.0)


def test_moment_partition_rejects_nonzero_mean():
    mesh = boundary_mesh(GraphDomain.flat(), 1.0, GradingSpec(4, 1, 4))
    with pytest.raises(ZarembaError):
        moment_partition(np.ones(len(mesh)), mesh, (0.0, 0.0), 0.5)


def test_greens_trace_partition_decay():
    mesh, g, part = greens_trace_partition(make_atom(2.0, 1.0, "haar"))
    assert np.max(np.abs(part.reconstruct() - g)) < 1e-14
    assert np.max(np.abs(part.block_integrals(mesh.weights))) < 1e-12
    norms = part.weighted_l1(mesh)
    ratios = norms[3:-1] / norms[2:-2]
    assert np.all(ratios < 0.9)
