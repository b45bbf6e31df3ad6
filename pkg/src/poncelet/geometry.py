"""Circle-pair chord/tangent geometry and the associated torus twist map.

Conventions: the outer circle K is centered at the origin with radius R,
the inner circle L at (c, 0) with radius t.  A point of K is addressed by
its polar angle theta; a line by its direction angle phi taken mod pi.
Normalized coordinates are x = theta/(2 pi), y = phi/pi.

The one-step transformation sends the oriented chord (A, r) with r tangent
to L (L kept on the left) to the next chord.  Analytically

    theta' = 2 phi - theta + pi            (mod 2 pi)
    phi'   = 3 phi - 2 theta + Bc(theta') + pi   (mod pi)

where Bc(u) = 2 arctan(c sin u / (R - c cos u)) is the tangency correction.
The formula was cross-validated against the independent tangent-line
construction (`poncelet_map_geometric`), which is the authority on signs.
"""

import math
from dataclasses import dataclass

from scipy.integrate import quad

TWO_PI = 2.0 * math.pi


class DegenerateTangencyError(ValueError):
    """Raised when a start point lies strictly inside the inner circle."""


@dataclass(frozen=True)
class PonceletConfig:
    """Circle pair: outer radius R, center offset c, inner radius t."""

    R: float
    c: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError(f"outer radius must be positive, got R={self.R}")
        if not 0 <= self.c < self.R:
            raise ValueError(f"center offset must satisfy 0 <= c < R, got c={self.c}")
        if not 0 <= self.t <= self.R - self.c:
            raise ValueError(
                f"inner radius must satisfy 0 <= t <= R - c, got t={self.t}"
            )


@dataclass(frozen=True)
class AngleState:
    """(theta, phi) with theta in [0, 2 pi) and phi in [0, pi)."""

    theta: float
    phi: float

    @staticmethod
    def reduced(theta, phi):
        return AngleState(theta % TWO_PI, phi % math.pi)


@dataclass(frozen=True)
class TorusPoint:
    """(x, y) on the unit torus."""

    x: float
    y: float

    @staticmethod
    def reduced(x, y):
        return TorusPoint(x % 1.0, y % 1.0)


@dataclass(frozen=True)
class LiftPoint:
    """Un-wrapped plane coordinates of the lift."""

    x: float
    y: float


def b_function(theta_prime, cfg):
    """Paper-form tangency term 2 arctan(c sin u / (R + c cos u))."""
    return 2.0 * math.atan(
        cfg.c * math.sin(theta_prime) / (cfg.R + cfg.c * math.cos(theta_prime))
    )


def b_corrected(theta_prime, cfg):
    """Tangency term that actually matches the geometric construction.

    Equals -b_function(theta_prime + pi); the published variant carries a
    figure-convention offset of pi in its argument.
    """
    return 2.0 * math.atan(
        cfg.c * math.sin(theta_prime) / (cfg.R - cfg.c * math.cos(theta_prime))
    )


def z_function(s, cfg):
    """Forcing term of the twist map in normalized coordinates, period 1."""
    return b_corrected(TWO_PI * s, cfg) / math.pi


def poncelet_map_analytic_raw(theta, phi, cfg):
    """One analytic step, returning unreduced (theta', phi')."""
    theta_p = 2.0 * phi - theta + math.pi
    phi_p = 3.0 * phi - 2.0 * theta + b_corrected(theta_p, cfg) + math.pi
    return theta_p, phi_p


def poncelet_map_analytic(s, cfg):
    """One analytic step on reduced angle coordinates."""
    theta_p, phi_p = poncelet_map_analytic_raw(s.theta, s.phi, cfg)
    return AngleState.reduced(theta_p, phi_p)


def twist_map_raw(x, y, cfg):
    """The lift F of the twist map f; F(x+1, y) = F(x, y) + (1, 0) exactly.

    On [0, 1) x R this is f(x, y) = (y - x + 1/2, 3y - 4x + Z(y - x + 1/2) + 1);
    the integer part of x is carried over so the first component has the
    lift periodicity needed for rotation numbers.
    """
    k = math.floor(x)
    xf = x - k
    x_p = y - xf + 0.5 + k
    y_p = 3.0 * y - 4.0 * xf + z_function(y - xf + 0.5, cfg) + 1.0
    return x_p, y_p


def twist_map(p, cfg):
    """Apply f to a TorusPoint (reduced) or LiftPoint (unreduced)."""
    x_p, y_p = twist_map_raw(p.x, p.y, cfg)
    if isinstance(p, TorusPoint):
        return TorusPoint.reduced(x_p, y_p)
    return LiftPoint(x_p, y_p)


def poncelet_map_geometric(theta, cfg):
    """One step of the tangent-line construction.

    From A = (R cos theta, R sin theta) draw the tangent to L that keeps L
    on the left of the oriented line; return the second intersection angle
    theta' and the line direction phi.
    """
    R, c, t = cfg.R, cfg.c, cfg.t
    ax = R * math.cos(theta)
    ay = R * math.sin(theta)
    wx = c - ax
    wy = -ay
    D = math.hypot(wx, wy)
    if D < t - 1e-12:
        raise DegenerateTangencyError(
            f"point at theta={theta} lies inside the inner circle"
        )
    beta = math.asin(min(1.0, max(0.0, t / D)))
    cb = math.cos(beta)
    sb = math.sin(beta)
    ux = (wx * cb + wy * sb) / D
    uy = (-wx * sb + wy * cb) / D
    s = -2.0 * (ax * ux + ay * uy)
    theta_p = math.atan2(ay + s * uy, ax + s * ux) % TWO_PI
    phi = math.atan2(uy, ux) % math.pi
    return AngleState(theta_p, phi)


def tangent_direction(theta, cfg):
    """Direction parameter y = phi/pi of the tangent line from angle 2*pi*x."""
    return poncelet_map_geometric(theta, cfg).phi / math.pi


def invariant_circle_phi(t, base_cfg):
    """The graph function x -> y of the rotational invariant circle for
    inner radius t over the base geometry (R, c)."""
    cfg = PonceletConfig(base_cfg.R, base_cfg.c, t)

    def phi_t(x):
        return tangent_direction(TWO_PI * (x % 1.0), cfg)

    return phi_t


def generating_potential(x, x_prime, cfg):
    """Generating potential h(x, x') of the twist map.

    h(x,x') = -x x' - (x^2 - x)/2 + (3 x'^2 - x')/2 + H(x') with H' = Z and
    H(0) = 0; the antiderivative is evaluated by adaptive quadrature.
    """
    base = (
        -x * x_prime
        - (x * x - x) / 2.0
        + (3.0 * x_prime * x_prime - x_prime) / 2.0
    )
    if cfg.c == 0.0:
        return base
    H, _ = quad(lambda s: z_function(s, cfg), 0.0, x_prime,
                epsabs=1e-12, limit=200)
    return base + H


def area_twist_check(p, cfg, h=1e-6):
    """Centered finite-difference Jacobian determinant and d f1/d y at p."""
    x, y = p.x, p.y

    def f(xx, yy):
        return twist_map_raw(xx, yy, cfg)

    fx1, fx2 = f(x + h, y)
    gx1, gx2 = f(x - h, y)
    fy1, fy2 = f(x, y + h)
    gy1, gy2 = f(x, y - h)
    d11 = (fx1 - gx1) / (2.0 * h)
    d21 = (fx2 - gx2) / (2.0 * h)
    d12 = (fy1 - gy1) / (2.0 * h)
    d22 = (fy2 - gy2) / (2.0 * h)
    return d11 * d22 - d12 * d21, d12
