"""Pure-python (numpy) reference kernels for the hot map-iteration loops.

Same signatures as the compiled module ``_speedups``; used as the fallback
when the extension is unavailable, and as the ground truth it is tested
against.
"""

import numpy as np

TWO_PI = 2.0 * np.pi


def _poncelet_step(x, R, c, t):
    """One step of the tangent-line lift, vectorized over x (lift coords)."""
    theta = TWO_PI * x
    ax = R * np.cos(theta)
    ay = R * np.sin(theta)
    wx = c - ax
    wy = -ay
    D = np.hypot(wx, wy)
    beta = np.arcsin(np.clip(t / D, 0.0, 1.0))
    cb = np.cos(beta)
    sb = np.sin(beta)
    # tangent direction: unit(w) rotated clockwise by beta (keeps L on the left)
    ux = (wx * cb + wy * sb) / D
    uy = (-wx * sb + wy * cb) / D
    s = -2.0 * (ax * ux + ay * uy)
    thetap = np.arctan2(ay + s * uy, ax + s * ux)
    delta = np.mod(thetap - theta, TWO_PI)
    # rounding can push a near-fixed-point step to 2*pi - eps; fold it back
    delta = np.where(delta > TWO_PI - 1e-12, delta - TWO_PI, delta)
    return x + delta / TWO_PI


def poncelet_advance(xs, n, R, c, t):
    """Apply the Poncelet tangent lift n times to each entry of xs."""
    out = np.array(xs, dtype=np.float64, copy=True)
    for _ in range(n):
        out = _poncelet_step(out, R, c, t)
    return out


def poncelet_orbit(xs, depth, R, c, t):
    """Orbit table: row k holds g^k applied to xs, k = 0..depth."""
    xs = np.asarray(xs, dtype=np.float64)
    out = np.empty((depth + 1, xs.size), dtype=np.float64)
    out[0] = xs
    for k in range(1, depth + 1):
        out[k] = _poncelet_step(out[k - 1], R, c, t)
    return out


def _arnold_step(x, omega, K):
    return x + omega + (K / TWO_PI) * np.sin(TWO_PI * x)


def arnold_advance(xs, n, omega, K):
    out = np.array(xs, dtype=np.float64, copy=True)
    for _ in range(n):
        out = _arnold_step(out, omega, K)
    return out


def arnold_orbit(xs, depth, omega, K):
    xs = np.asarray(xs, dtype=np.float64)
    out = np.empty((depth + 1, xs.size), dtype=np.float64)
    out[0] = xs
    for k in range(1, depth + 1):
        out[k] = _arnold_step(out[k - 1], omega, K)
    return out
