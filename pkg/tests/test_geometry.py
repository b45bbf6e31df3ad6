"""Geometry layer: tangency term, analytic/geometric map agreement, the
twist-map lift, invariant circles, and the generating potential."""

import math

import numpy as np
import pytest

from poncelet.geometry import (
    TWO_PI,
    AngleState,
    LiftPoint,
    PonceletConfig,
    TorusPoint,
    area_twist_check,
    b_corrected,
    b_function,
    generating_potential,
    invariant_circle_phi,
    poncelet_map_analytic,
    poncelet_map_geometric,
    tangent_direction,
    twist_map,
    twist_map_raw,
    z_function,
)


def circ_dist(a, b, period):
    d = abs(a - b) % period
    return min(d, period - d)


# ------------------------------------------------------------- tangency term

def test_b_vanishes_for_concentric():
    cfg = PonceletConfig(1.0, 0.0, 0.2)
    for u in np.linspace(-7.0, 7.0, 23):
        assert b_corrected(u, cfg) == 0.0
        assert b_function(u, cfg) == 0.0


def test_b_vanishes_at_pi():
    cfg = PonceletConfig(1.0, 0.45, 0.1)
    assert abs(b_corrected(math.pi, cfg)) < 1e-15
    assert abs(b_function(math.pi, cfg)) < 1e-15


def test_b_quarter_turn_value():
    # 2 * atan(0.5), frozen from high-precision evaluation
    cfg = PonceletConfig(1.0, 0.5, 0.1)
    assert b_corrected(math.pi / 2.0, cfg) == pytest.approx(
        0.9272952180016122, abs=1e-15
    )


def test_b_corrected_is_offset_mirror_of_published_form():
    cfg = PonceletConfig(1.3, 0.6, 0.2)
    for u in np.linspace(0.0, TWO_PI, 37):
        assert b_corrected(u, cfg) == pytest.approx(
            -b_function(u + math.pi, cfg), abs=1e-13
        )


def test_z_has_period_one():
    cfg = PonceletConfig(1.0, 0.35, 0.1)
    for s in np.linspace(-1.0, 1.0, 17):
        assert z_function(s + 1.0, cfg) == pytest.approx(
            z_function(s, cfg), abs=1e-14
        )


# --------------------------------------------------------- analytic one-step

def test_fixed_position_point_of_chord_map():
    # theta = pi, phi = pi/2, c = 0: the chord returns to the same position
    cfg = PonceletConfig(1.0, 0.0, 0.0)
    out = poncelet_map_analytic(AngleState(math.pi, math.pi / 2.0), cfg)
    assert circ_dist(out.theta, math.pi, TWO_PI) < 1e-12


def test_analytic_agrees_with_geometric_on_invariant_circle():
    rng = np.random.default_rng(11)
    for R, c, t in [(1.0, 0.3, 0.2), (1.0, 0.45, 0.3), (2.0, 0.5, 0.7)]:
        cfg = PonceletConfig(R, c, t)
        for theta in rng.uniform(0.0, TWO_PI, 25):
            step = poncelet_map_geometric(theta, cfg)
            state = AngleState(theta, step.phi)
            pred = poncelet_map_analytic(state, cfg)
            next_step = poncelet_map_geometric(step.theta, cfg)
            assert circ_dist(pred.theta, step.theta, TWO_PI) < 1e-10
            assert circ_dist(pred.phi, next_step.phi, math.pi) < 1e-10


def test_cross_validation_spot_value():
    cfg = PonceletConfig(1.0, 0.25, 0.5)
    theta = 1.1
    step = poncelet_map_geometric(theta, cfg)
    pred = poncelet_map_analytic(AngleState(theta, step.phi), cfg)
    assert circ_dist(pred.theta, step.theta, TWO_PI) < 1e-10


# -------------------------------------------------------------- twist lift f

def test_twist_lift_spot_value():
    # f(0, 1/2) = (1, 5/2) for the concentric pair
    cfg = PonceletConfig(1.0, 0.0, 0.0)
    x_p, y_p = twist_map_raw(0.0, 0.5, cfg)
    assert (x_p, y_p) == (1.0, 2.5)


def test_lift_periodicity_is_exact():
    cfg = PonceletConfig(1.0, 0.4, 0.2)
    rng = np.random.default_rng(3)
    for x, y in rng.uniform(-2.0, 2.0, (100, 2)):
        a = twist_map_raw(x, y, cfg)
        b = twist_map_raw(x + 1.0, y, cfg)
        assert b[0] - a[0] == 1.0
        assert b[1] == a[1]


def test_twist_map_wraps_torus_points():
    cfg = PonceletConfig(1.0, 0.0, 0.0)
    out = twist_map(TorusPoint(0.9, 0.8), cfg)
    assert isinstance(out, TorusPoint)
    assert 0.0 <= out.x < 1.0 and 0.0 <= out.y < 1.0
    lifted = twist_map(LiftPoint(0.9, 0.8), cfg)
    assert isinstance(lifted, LiftPoint)
    assert lifted.x % 1.0 == pytest.approx(out.x, abs=1e-12)


def test_coordinate_change_consistency():
    # f in (x, y) coordinates is the analytic chord map in (theta, phi)
    cfg = PonceletConfig(1.0, 0.4, 0.0)
    x, y = 0.2, 0.6
    x_p, y_p = twist_map_raw(x, y, cfg)
    out = poncelet_map_analytic(AngleState(TWO_PI * x, math.pi * y), cfg)
    assert circ_dist(x_p % 1.0, out.theta / TWO_PI, 1.0) < 1e-12
    assert circ_dist(y_p % 1.0, out.phi / math.pi, 1.0) < 1e-12


# ------------------------------------------------------ tangent construction

def test_concentric_diameter_orbit_is_period_two():
    cfg = PonceletConfig(1.0, 0.0, 0.0)
    for theta in np.linspace(0.0, TWO_PI, 13, endpoint=False):
        out = poncelet_map_geometric(theta, cfg)
        assert circ_dist(out.theta, theta + math.pi, TWO_PI) < 1e-12


def test_concentric_half_radius_step():
    # arccos(1/2) = pi/3, so the chord advances by 2 pi / 3
    cfg = PonceletConfig(1.0, 0.0, 0.5)
    out = poncelet_map_geometric(0.0, cfg)
    assert out.theta == pytest.approx(2.0 * math.pi / 3.0, abs=1e-12)


def test_concentric_step_matches_arccos_formula():
    rng = np.random.default_rng(5)
    for t in (0.1, 0.3, 0.8):
        cfg = PonceletConfig(1.0, 0.0, t)
        for theta in rng.uniform(0.0, TWO_PI, 10):
            out = poncelet_map_geometric(theta, cfg)
            expect = (theta + 2.0 * math.acos(t)) % TWO_PI
            assert circ_dist(out.theta, expect, TWO_PI) < 1e-12


def test_internal_tangency_fixed_point():
    cfg = PonceletConfig(1.0, 0.3, 0.7)
    out = poncelet_map_geometric(0.0, cfg)
    assert circ_dist(out.theta, 0.0, TWO_PI) < 1e-9


# ----------------------------------------------------------- config contract

@pytest.mark.parametrize("R,c,t", [
    (0.0, 0.0, 0.0),
    (-1.0, 0.0, 0.0),
    (1.0, 1.0, 0.0),
    (1.0, -0.1, 0.0),
    (1.0, 0.3, 0.8),
    (1.0, 0.0, -0.2),
])
def test_config_rejects_invalid_geometry(R, c, t):
    with pytest.raises(ValueError):
        PonceletConfig(R, c, t)


# --------------------------------------------------------- invariant circles

def test_degenerate_invariant_circle_is_doubled_angle():
    # t = 0, c = 0: the chord is the diameter through x, whose direction
    # angle is theta mod pi, i.e. y(x) = frac(2x)
    phi0 = invariant_circle_phi(0.0, PonceletConfig(1.0, 0.0))
    for x in np.linspace(0.0, 1.0, 40, endpoint=False):
        assert circ_dist(phi0(x), (2.0 * x) % 1.0, 1.0) < 1e-12


def test_invariant_circle_graph_is_invariant():
    cfg = PonceletConfig(1.0, 0.3, 0.2)
    y_of = invariant_circle_phi(0.2, cfg)
    for x in np.linspace(0.0, 1.0, 200, endpoint=False):
        p = twist_map(TorusPoint(x, y_of(x)), cfg)
        assert circ_dist(p.y, y_of(p.x), 1.0) < 1e-9


def test_invariant_circles_are_disjoint_graphs():
    base = PonceletConfig(1.0, 0.0)
    y1 = invariant_circle_phi(0.2, base)
    y2 = invariant_circle_phi(0.4, base)
    xs = np.linspace(0.0, 1.0, 10_000, endpoint=False)
    gap = min(circ_dist(y2(x), y1(x), 1.0) for x in xs)
    assert gap > 1e-3


# ------------------------------------------------------- generating function

def test_generating_potential_vanishes_at_origin():
    assert generating_potential(0.0, 0.0, PonceletConfig(1.0, 0.0)) == 0.0


def test_generating_potential_concentric_closed_form():
    # -0.21 - (0.09 - 0.3)/2 + (3*0.49 - 0.7)/2 = 0.28
    val = generating_potential(0.3, 0.7, PonceletConfig(1.0, 0.0))
    assert val == pytest.approx(0.28, abs=1e-15)


def test_generating_relation_partials():
    # dh/dx = -y and dh/dx' = y' where f(x, y) = (x', y')
    cfg = PonceletConfig(1.0, 0.3, 0.0)
    rng = np.random.default_rng(17)
    h = 1e-6
    for x, x_p in rng.uniform(0.0, 1.0, (100, 2)):
        y = x + x_p - 0.5
        _, y_p = twist_map_raw(x, y, cfg)
        d1 = (generating_potential(x + h, x_p, cfg)
              - generating_potential(x - h, x_p, cfg)) / (2.0 * h)
        d2 = (generating_potential(x, x_p + h, cfg)
              - generating_potential(x, x_p - h, cfg)) / (2.0 * h)
        assert d1 == pytest.approx(-y, abs=1e-6)
        assert d2 == pytest.approx(y_p, abs=1e-6)


# ------------------------------------------------------------ area and twist

def test_affine_case_preserves_area_exactly():
    cfg = PonceletConfig(1.0, 0.0, 0.0)
    det, d12 = area_twist_check(TorusPoint(0.37, 1.22), cfg)
    assert det == pytest.approx(1.0, abs=1e-10)
    assert d12 == pytest.approx(1.0, abs=1e-10)


def test_area_and_twist_conditions_hold_off_center():
    cfg = PonceletConfig(1.0, 0.45, 0.2)
    rng = np.random.default_rng(23)
    for x, y in rng.uniform(0.0, 1.0, (50, 2)):
        det, d12 = area_twist_check(TorusPoint(x, y), cfg)
        assert det == pytest.approx(1.0, abs=1e-5)
        assert d12 == pytest.approx(1.0, abs=1e-8)


def test_tangent_direction_matches_geometric_step():
    cfg = PonceletConfig(1.0, 0.2, 0.3)
    theta = 2.1
    assert tangent_direction(theta, cfg) == (
        poncelet_map_geometric(theta, cfg).phi / math.pi
    )
