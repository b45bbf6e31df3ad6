"""Twist-in-parameter analysis: margins, separations, comparison checks,
monotonicity, and the second-order growth estimate."""

import math

import numpy as np
import pytest

from poncelet.confrac import second_order_bound
from poncelet.families import (
    MonotoneCircleFamily,
    arnold_family,
    poncelet_family,
    rigid_family,
)
from poncelet.lifts import ArnoldLift, RigidLift
from poncelet.twistfam import (
    TwistConditionError,
    comparison_check,
    proposition1_check,
    second_order_estimate,
    separation_alpha,
    twist_margin,
)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


# ------------------------------------------------------------- twist margin

def test_arnold_margin_is_one():
    margin = twist_margin(arnold_family(0.6))
    assert margin.m == 1.0


def test_quadratic_rigid_margin():
    # alpha(t) = t^2 + t, inf of 2t + 1 on [0, 1] is 1
    family = rigid_family(alpha_fn=lambda t: t * t + t,
                          d_alpha=lambda t: 2.0 * t + 1.0)
    assert twist_margin(family).m == pytest.approx(1.0, abs=1e-12)


def test_poncelet_reversed_fd_margin_matches_arccos_derivative():
    # reversed concentric family: g_s(x) = x + arccos((1 - s))/pi, so
    # dg/ds = 1/(pi sqrt(1 - (1-s)^2))
    family = poncelet_family(1.0, 0.0, reverse=True)
    for s in (0.3, 0.5, 0.8):
        want = 1.0 / (math.pi * math.sqrt(1.0 - (1.0 - s) ** 2))
        got = family.dgdt(s, 0.1)
        assert got == pytest.approx(want, rel=1e-4)
    margin = twist_margin(family,
                          t_grid=np.linspace(0.2, 1.0, 9))
    assert margin.m == pytest.approx(1.0 / math.pi, rel=1e-3)


def test_margin_rejects_non_twist_family():
    family = MonotoneCircleFamily(0.0, 1.0, lambda t: RigidLift(-t),
                                  dgdt=lambda t, x: -1.0)
    with pytest.raises(TwistConditionError):
        twist_margin(family)


# -------------------------------------------------------------- separation

def test_rigid_separation_is_shift_difference():
    assert separation_alpha(RigidLift(0.3), RigidLift(0.5)) == \
        pytest.approx(0.2, abs=1e-15)


def test_arnold_separation_is_parameter_difference():
    assert separation_alpha(ArnoldLift(0.2, 0.5), ArnoldLift(0.35, 0.5)) == \
        pytest.approx(0.15, abs=1e-15)


def test_separation_rejects_unordered_pair():
    with pytest.raises(TwistConditionError):
        separation_alpha(RigidLift(0.5), RigidLift(0.3))


def test_lower_separation_inequality():
    # g_{t2}(x) - g_{t1}(x) >= m (t2 - t1) on sampled pairs
    family = poncelet_family(1.0, 0.0, reverse=True)
    m = twist_margin(family).m
    xs = np.linspace(0.0, 1.0, 64, endpoint=False)
    for t1, t2 in [(0.1, 0.3), (0.25, 0.7), (0.5, 0.95)]:
        sep = separation_alpha(family.lift(t1), family.lift(t2), xs)
        assert sep >= m * (t2 - t1) - 1e-9


# -------------------------------------------------------------- comparison

def test_rigid_golden_comparison_sandwich():
    report = comparison_check(RigidLift(GOLDEN), RigidLift(GOLDEN + 0.01))
    assert report.alpha == pytest.approx(0.01, abs=1e-15)
    assert report.weak_ok
    assert report.excess is not None
    p, q = report.excess
    assert q > 100
    assert GOLDEN < p / q <= GOLDEN + 0.01 + 1e-9
    assert report.sandwich_ok


def test_rational_shift_keeps_weak_inequality():
    report = comparison_check(RigidLift(1.0 / 3.0),
                              RigidLift(1.0 / 3.0 + 0.02))
    assert report.weak_ok
    assert report.r1.lock == (1, 3)


def test_arnold_comparison_is_ordered():
    report = comparison_check(ArnoldLift(0.2, 0.3), ArnoldLift(0.25, 0.3))
    assert report.weak_ok
    if not (report.r1.is_rational_lock and report.r2.is_rational_lock):
        assert report.r1.value < report.r2.value + \
            report.r1.error_radius + report.r2.error_radius


# ----------------------------------------------------- second-order growth

def test_rigid_family_passes_with_room():
    report = second_order_estimate(rigid_family(), GOLDEN)
    assert report.status == "ok"
    assert report.passed
    # r(t) = t makes each quotient roughly 1/(t2 - t1), far above the bound
    assert report.best_ratio > 1.0
    assert report.bound == pytest.approx(second_order_bound(report.margin),
                                         rel=1e-12)


def test_best_ratio_is_running_max_of_brackets():
    report = second_order_estimate(rigid_family(), GOLDEN)
    assert report.brackets
    assert report.best_ratio == max(q for _, _, q in report.brackets)
    for t1, t2, _ in report.brackets:
        assert t1 < report.tau < t2


def test_plateau_center_is_inapplicable():
    report = second_order_estimate(arnold_family(0.8), 0.5)
    assert report.status == "inapplicable"
    assert math.isnan(report.best_ratio)
    assert not report.passed


def test_tau_must_be_interior():
    with pytest.raises(ValueError):
        second_order_estimate(rigid_family(), 0.0)


# ------------------------------------------------------------ monotonicity

def test_rigid_family_strictly_increases():
    report = proposition1_check(rigid_family(), np.linspace(0.05, 0.95, 13))
    assert report.ok
    assert not report.strict_violations


def test_arnold_staircase_is_nondecreasing():
    report = proposition1_check(arnold_family(0.9),
                                np.linspace(0.0, 1.0, 21), tol=1e-4)
    assert report.result.monotone_ok
    assert not report.strict_violations


def test_reversed_poncelet_family_increases():
    family = poncelet_family(1.0, 0.0, reverse=True)
    report = proposition1_check(family, np.linspace(0.1, 0.9, 9), tol=1e-4)
    assert report.ok
    assert report.result.direction == "increasing"
