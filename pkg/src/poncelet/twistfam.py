"""Twist-in-parameter analysis of monotone lift families: twist margin,
pointwise comparison checks, and the second-order growth estimate of the
rotation number around heuristically-irrational parameters.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .confrac import FIB_RECIP, cf_expand, find_balanced_pairs, second_order_bound
from .rotation import RotationEstimate, rotation_number, staircase


class TwistConditionError(ValueError):
    """A sampled parameter-derivative (or separation) was not positive."""


@dataclass(frozen=True)
class TwistMargin:
    m: float
    t_samples: int
    x_samples: int


def twist_margin(family, t_grid=None, x_grid=None):
    """Sampled infimum of d g_t(x) / d t over the family."""
    if t_grid is None:
        t_grid = np.linspace(family.a, family.b, 17)
    if x_grid is None:
        x_grid = np.linspace(0.0, 1.0, 32, endpoint=False)
    t_grid = np.asarray(t_grid, dtype=float)
    x_grid = np.asarray(x_grid, dtype=float)
    m = math.inf
    for t in t_grid:
        for x in x_grid:
            d = family.dgdt(t, x)
            if d <= 0:
                raise TwistConditionError(
                    f"dg/dt = {d:.3g} <= 0 at (t={t}, x={x})"
                )
            m = min(m, d)
    return TwistMargin(m=float(m), t_samples=t_grid.size, x_samples=x_grid.size)


def separation_alpha(g1, g2, x_grid=None):
    """Sampled infimum of g2 - g1 over one period; must be positive."""
    if x_grid is None:
        x_grid = np.linspace(0.0, 1.0, 256, endpoint=False)
    x_grid = np.asarray(x_grid, dtype=float)
    diff = g2.orbit_table(x_grid, 1)[1] - g1.orbit_table(x_grid, 1)[1]
    alpha = float(np.min(diff))
    if alpha <= 0:
        raise TwistConditionError(
            f"ordering violation: min(g2 - g1) = {alpha:.3g} <= 0"
        )
    return alpha


@dataclass(frozen=True)
class ComparisonReport:
    r1: RotationEstimate
    r2: RotationEstimate
    alpha: float
    excess: Optional[Tuple[int, int]]   # p/q with q > 1/alpha, or None
    weak_ok: bool                        # r1 <= r2 within error radii
    sandwich_ok: Optional[bool]          # r1 < p/q <= r2 within error radii


def comparison_check(g1, g2, alpha=None, tol=1e-5):
    """Check r1 <= r2 and, via an excess convergent p/q of r1 with
    q > 1/alpha, the sandwich r1 < p/q <= r2."""
    if alpha is None:
        alpha = separation_alpha(g1, g2)
    r1 = rotation_number(g1, tol=tol)
    r2 = rotation_number(g2, tol=tol)
    slack = r1.error_radius + r2.error_radius
    weak_ok = r1.value <= r2.value + slack

    excess = None
    sandwich_ok = None
    exp = cf_expand(r1.value)
    for n in range(1, len(exp) + 1):
        if n % 2 != 1:      # odd truncations over-approximate
            continue
        p, q = exp.convergents[n]
        if q > 1.0 / alpha:
            excess = (p, q)
            pq = p / q
            sandwich_ok = (r1.value - r1.error_radius < pq
                           <= r2.value + r2.error_radius)
            break
    return ComparisonReport(r1=r1, r2=r2, alpha=alpha, excess=excess,
                            weak_ok=weak_ok, sandwich_ok=sandwich_ok)


@dataclass(frozen=True)
class SecondOrderReport:
    tau: float
    status: str                  # "ok" | "inapplicable"
    best_ratio: float
    bound: float
    margin: float
    brackets: List[Tuple[float, float, float]] = field(default_factory=list)
    # (t1, t2, conservative quotient)

    @property
    def passed(self):
        return self.status == "ok" and self.best_ratio >= self.bound


def _separation(family, t1, t2, x_grid):
    g1 = family.lift(t1)
    g2 = family.lift(t2)
    return float(np.min(g2.orbit_table(x_grid, 1)[1]
                        - g1.orbit_table(x_grid, 1)[1]))


def _solve_separation(family, tau, target, side, delta, x_grid, iters=60):
    """Find t with inf_x separation from g_tau equal to target, searching
    t in [tau - delta, tau] (side = -1) or [tau, tau + delta] (side = +1)."""
    lo, hi = 0.0, delta
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        t = tau + side * mid
        sep = (_separation(family, t, tau, x_grid) if side < 0
               else _separation(family, tau, t, x_grid))
        if sep < target:
            lo = mid
        else:
            hi = mid
    return tau + side * hi


def second_order_estimate(family, tau, delta_seq=None, tol=1e-5,
                          eps=0.5, x_samples=128):
    """Best observed (r(t2) - r(t1)) / (t2 - t1)^2 over shrinking brackets
    around tau, against the bound m^2 / (e^{2F} (1 + e^{2F})^2).

    Brackets follow the proof construction: t1 and t2 are placed so the
    pointwise separations from g_tau equal 1/q' and 1/q for an excess /
    defect convergent pair of r(tau).  The quotient is evaluated
    conservatively (error radii subtracted), so finite sampling can only
    under-report, never falsely pass.
    """
    if not family.a < tau < family.b:
        raise ValueError("tau must be interior to the parameter interval")
    if delta_seq is None:
        delta_seq = [0.1 * 2.0 ** (-k) for k in range(1, 13)]
    delta_max = min(max(delta_seq), tau - family.a, family.b - tau)
    delta_seq = sorted({min(d, delta_max) for d in delta_seq}, reverse=True)

    est_tau = rotation_number(family.lift(tau), tol=tol)
    margin = twist_margin(
        family,
        t_grid=np.linspace(tau - delta_max, tau + delta_max, 9),
    ).m
    bound = second_order_bound(m=margin)
    if est_tau.is_rational_lock:
        return SecondOrderReport(tau=tau, status="inapplicable",
                                 best_ratio=math.nan, bound=bound,
                                 margin=margin)

    x_grid = np.linspace(0.0, 1.0, x_samples, endpoint=False)
    pairs = find_balanced_pairs(cf_expand(est_tau.value), eps=eps)

    best = -math.inf
    brackets = []
    for delta in delta_seq:
        sep_minus = _separation(family, tau - delta, tau, x_grid)
        sep_plus = _separation(family, tau, tau + delta, x_grid)
        chosen = None
        for pair in pairs:
            q_exc = pair.excess.denominator
            q_def = pair.defect.denominator
            if 1.0 / q_def <= sep_minus and 1.0 / q_exc <= sep_plus:
                chosen = (q_def, q_exc)
                break
        if chosen is None:
            continue
        q_def, q_exc = chosen
        t1 = _solve_separation(family, tau, 1.0 / q_def, -1, delta, x_grid)
        t2 = _solve_separation(family, tau, 1.0 / q_exc, +1, delta, x_grid)
        if t2 - t1 <= 0:
            continue
        r1 = rotation_number(family.lift(t1), tol=tol)
        r2 = rotation_number(family.lift(t2), tol=tol)
        num = (r2.value - r1.value) - (r1.error_radius + r2.error_radius)
        quotient = num / (t2 - t1) ** 2
        brackets.append((t1, t2, quotient))
        best = max(best, quotient)

    return SecondOrderReport(tau=tau, status="ok", best_ratio=best,
                             bound=bound, margin=margin, brackets=brackets)


@dataclass(frozen=True)
class MonotonicityReport:
    result: object                      # StaircaseResult
    strict_violations: List[Tuple[float, float]]

    @property
    def ok(self):
        return self.result.monotone_ok and not self.strict_violations


def proposition1_check(family, t_grid, tol=1e-5):
    """Staircase over t_grid: nondecreasing within error radii, strictly
    increasing across sample pairs where either endpoint is lock-free
    (the heuristic-irrational proxy)."""
    result = staircase(family, t_grid, tol=tol)
    sign = -1.0 if result.direction == "decreasing" else 1.0
    strict = []
    pts = result.points
    for (t1, e1), (t2, e2) in zip(pts, pts[1:]):
        heuristically_irrational = not (e1.is_rational_lock
                                        and e2.is_rational_lock)
        if heuristically_irrational and not sign * (e2.value - e1.value) > 0:
            strict.append((t1, t2))
    return MonotonicityReport(result=result, strict_violations=strict)
