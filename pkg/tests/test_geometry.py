import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zaremba import (BallFamily, GradingSpec, GraphDomain, Sector, WeightedMeasure, ZarembaError,
                     ap_constant_estimate, boundary_mesh, carleson_ratio, measure_lemma_constants,
                     measure_lemma_ratio, weighted_ball_measure)
from zaremba.geometry import carleson_numerator, domain_from_json, measure_lemma_inside, power_ball_integral


FLAT = GraphDomain.flat()


def test_flat_ball_measure_closed_form():
    # int_{-r}^{r} |t|^eps dt = 2 r^(1+eps)/(1+eps)
    for eps in (-0.5, 0.0, 0.5, 0.9):
        for r in (1e-3, 0.7, 40.0):
            want = 2.0 * r ** (1 + eps) / (1 + eps)
            got = weighted_ball_measure(FLAT, 0.0, r, WeightedMeasure(eps))
            assert got == pytest.approx(want, rel=1e-12)


def test_off_center_ball_measure_closed_form():
    # [1, 3] with eps = 0.5: (2/3)(3^1.5 - 1)
    got = weighted_ball_measure(FLAT, 2.0, 1.0, WeightedMeasure(0.5))
    assert got == pytest.approx((2.0 / 3.0) * (3.0 ** 1.5 - 1.0), rel=1e-12)


def test_sector_ball_measure_is_rotation_invariant():
    # both rays of a sector through the origin carry |x|^eps exactly like a line
    sec = Sector(3 * math.pi / 8)
    for eps in (-0.5, 0.5):
        got = weighted_ball_measure(sec, 0.0, 2.0, WeightedMeasure(eps))
        assert got == pytest.approx(2.0 * 2.0 ** (1 + eps) / (1 + eps), rel=1e-12)


def test_divergent_weight_is_infinite():
    assert power_ball_integral(FLAT, 0.0, 1.0, -1.5) == math.inf


def test_weight_exponent_must_exceed_minus_one():
    with pytest.raises(ZarembaError):
        WeightedMeasure(-1.0)


def test_point_must_be_on_boundary():
    with pytest.raises(ZarembaError):
        weighted_ball_measure(FLAT, (1.0, 0.5), 1.0, WeightedMeasure(0.0))


def test_sawtooth_lipschitz_constant_and_origin():
    g = GraphDomain.sawtooth(0.5)
    assert g.M == pytest.approx(0.5)
    assert float(g.phi(0.0)) == 0.0
    assert float(g.phi(1.0)) == pytest.approx(0.5)
    assert float(g.phi(-1.0)) == pytest.approx(0.5)


def test_random_sawtooth_attains_M():
    rng = np.random.default_rng(3)
    for M in (0.3, 0.9):
        g = GraphDomain.random_sawtooth(M, rng)
        assert g.M == pytest.approx(M)
        assert float(g.phi(0.0)) == 0.0


def test_graph_must_pass_through_origin():
    with pytest.raises(ZarembaError):
        GraphDomain(((0.0, 1.0),))


def test_domain_json_roundtrip():
    sec = domain_from_json({"opening": 1.0})
    assert isinstance(sec, Sector) and sec.opening == 1.0
    g = GraphDomain.sawtooth(0.25, extent=4.0)
    assert domain_from_json(g.to_json()) == g


def test_sector_as_graph_matches_rays():
    sec = Sector(3 * math.pi / 4)
    g = sec.as_graph()
    # right ray at angle pi/2 - phi = -pi/4 has slope -1
    assert float(g.phi(2.0)) == pytest.approx(-2.0)
    assert float(g.phi(-2.0)) == pytest.approx(-2.0)
    assert sec.M == pytest.approx(1.0)


def test_boundary_mesh_integrates_weights():
    mesh = boundary_mesh(FLAT, 2.0, GradingSpec(40, 1, 16))
    assert mesh.integrate(np.ones(len(mesh))) == pytest.approx(4.0, rel=1e-13)
    # |t|^-0.5 over [-2, 2] is 4 sqrt(2); plain Gauss on the innermost panel costs O(sqrt(h))
    assert mesh.integrate(np.ones(len(mesh)), WeightedMeasure(-0.5)) == pytest.approx(4 * math.sqrt(2), rel=1e-6)
    assert np.all(mesh.on_D == (mesh.points[:, 0] < 0))


def test_boundary_mesh_on_sawtooth_has_unit_normals_and_arc():
    g = GraphDomain.sawtooth(0.5)
    mesh = boundary_mesh(g, 3.0, GradingSpec(20, 1, 8))
    assert np.allclose(np.hypot(*mesh.normals.T), 1.0)
    assert np.all(mesh.normals[:, 1] < 0)
    # total arc length of the truncated graph, from the exit points
    assert mesh.integrate(np.ones(len(mesh))) == pytest.approx(mesh.arc.max() - mesh.arc.min(), rel=0.05)
    assert np.all(np.hypot(*mesh.points.T) <= 3.0 * (1 + 1e-12))


@given(eps=st.floats(-0.95, 0.95), M=st.sampled_from([0.0, 0.25, 0.5, 0.9]),
       x=st.floats(-20.0, 20.0), logr=st.floats(-6.0, 6.0))
def test_measure_lemma_bracket_property(eps, M, x, logr):
    domain = FLAT if M == 0.0 else GraphDomain.sawtooth(M)
    c1, c2 = measure_lemma_constants(eps, M)
    ratio = measure_lemma_ratio(domain, x, math.exp(logr), WeightedMeasure(eps))
    assert measure_lemma_inside(ratio, c1, c2)


def test_measure_lemma_flat_extremes_are_attained():
    # at x = 0 the ratio is exactly 2/(1+eps), one of the flat constants
    for eps in (-0.5, 0.5):
        c1, c2 = measure_lemma_constants(eps, 0.0)
        ratio = measure_lemma_ratio(FLAT, 0.0, 1.0, WeightedMeasure(eps))
        assert ratio == pytest.approx(2.0 / (1 + eps), rel=1e-14)
        assert measure_lemma_inside(ratio, c1, c2)


def test_ap_constant_power_weight_closed_form():
    # balls at the origin: (avg |t|^.5)(avg |t|^-.5) = (1/1.5)(1/.5) = 4/3 for every r
    fam = BallFamily.dyadic((0.0,), 1e-3, 1e3)
    est = ap_constant_estimate(FLAT, WeightedMeasure(0.5), 2.0, fam)
    assert est == pytest.approx(4.0 / 3.0, rel=1e-12)


def test_ap_constant_outside_range_blows_up():
    good = ap_constant_estimate(FLAT, WeightedMeasure(0.5), 2.0, BallFamily.dyadic((0.0,), 1e-3, 1e3))
    bad = ap_constant_estimate(FLAT, WeightedMeasure(1.5), 2.0, BallFamily.dyadic((0.0,), 1e-3, 1e3))
    assert bad > 10 * good
    # off-center balls stay finite but the ratio grows as they shrink onto the weight's pole
    from zaremba.geometry import ap_ratios
    fam = BallFamily((1.0,), (0.5, 0.9, 0.99, 0.999))
    vals = ap_ratios(FLAT, WeightedMeasure(1.5), 2.0, fam)
    assert np.all(np.isfinite(vals)) and np.all(np.diff(vals) > 0)


def test_carleson_numerator_matches_polar_oracle():
    # sector 3pi/4, eps = 0.5, R = 2: independent polar integration (mpmath, 400 pieces)
    sec = Sector(3 * math.pi / 4)
    mu = WeightedMeasure(0.5)
    assert carleson_numerator(sec, 0.0, 1.0, mu, 2.0) == pytest.approx(0.3 * math.pi, rel=1e-9)
    oracle = {(1.0, 0.5): 0.234423428346653, (-0.5, 2.0): 3.49569277649584, (1.0, 3.0): 4.62706014563596}
    for (x, r), want in oracle.items():
        assert carleson_numerator(sec, x, r, mu, 2.0) == pytest.approx(want, rel=1e-7)
    # a ball containing the whole truncated sector: (1/R) * 1.5 pi * R^2.5 / 2.5
    full = 1.5 * math.pi * 2.0 ** 2.5 / 2.5 / 2.0
    assert carleson_numerator(sec, 0.0, 10.0, mu, 2.0) == pytest.approx(full, rel=1e-12)


def test_carleson_flat_unweighted_bound():
    # half-disc area / (2r R) peaks at pi/4 when r = R
    samples = [(x, r) for x in (0.0, 0.5, -2.0) for r in 2.0 ** np.arange(-8, 6)]
    c = carleson_ratio(FLAT, WeightedMeasure(0.0), 1.0, samples)
    assert c == pytest.approx(math.pi / 4, rel=1e-9)
    assert c <= math.pi / 2


def test_carleson_needs_positive_radius():
    with pytest.raises(ZarembaError):
        carleson_ratio(FLAT, WeightedMeasure(0.0), 0.0, [(0.0, 1.0)])
