"""Continued fractions with exact integer convergents, the Gauss map, the
Fibonacci-reciprocal constant, and the excess/defect approximation-pair
machinery built on them.

Floating inputs are expanded through the exact rational value of the
float; the expansion stops as soon as an ulp-sized interval around the
input no longer determines the next partial quotient, so every emitted
quotient is certified.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple


class PrecisionExhaustedError(ValueError):
    """The floating residual cannot certify the next partial quotient."""


def fibonacci_reciprocal_sum(tol=1e-15):
    """Sum of reciprocals of 1, 1, 2, 3, 5, 8, ... until the next term
    drops below tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    total = 0.0
    a, b = 1, 1
    while 1.0 / a >= tol:
        total += 1.0 / a
        a, b = b, a + b
    return total


#: Cached to 1e-15 at import; single source for every e^{2F} expression.
FIB_RECIP = fibonacci_reciprocal_sum(1e-15)


def gauss_map(x):
    """T(x) = frac(1/x) on [0, 1), with T(0) = 0.  Exact on Fractions."""
    if isinstance(x, Fraction):
        if not 0 <= x < 1:
            raise ValueError("gauss_map needs x in [0, 1)")
        if x == 0:
            return Fraction(0)
        inv = 1 / x
        return inv - math.floor(inv)
    if not 0.0 <= x < 1.0:
        raise ValueError("gauss_map needs x in [0, 1)")
    if x == 0.0:
        return 0.0
    inv = 1.0 / x
    return inv - math.floor(inv)


@dataclass(frozen=True)
class ContinuedFractionExpansion:
    a0: int
    quotients: List[int]                 # a1, a2, ... (all >= 1)
    convergents: List[Tuple[int, int]]   # (p_n, q_n), n = 0 .. len(quotients)
    value: Fraction                      # exact value the input represents
    exact: bool                          # expansion terminates at the value

    def __len__(self):
        return len(self.quotients)

    def convergent(self, n):
        """p_n / q_n as a Fraction (n = 0 gives a0)."""
        p, q = self.convergents[n]
        return Fraction(p, q)

    def tail(self, i):
        """[0; a_{i+1}, a_{i+2}, ...] as a Fraction; equals T^i(frac(x))
        exactly when the expansion is exact, and to within the truncation
        of the remaining quotients otherwise."""
        t = Fraction(0)
        for a in reversed(self.quotients[i:]):
            t = Fraction(1, a + t)
        return t


def _convergents(a0, quotients):
    ps = [a0]
    qs = [1]
    p_prev, q_prev = 1, 0
    for a in quotients:
        ps.append(a * ps[-1] + p_prev)
        qs.append(a * qs[-1] + q_prev)
        p_prev, q_prev = ps[-2], qs[-2]
    return list(zip(ps, qs))


def _expand_exact(x: Fraction, n_terms):
    a0 = math.floor(x)
    quotients = []
    rem = x - a0
    while rem != 0 and len(quotients) < n_terms:
        inv = 1 / rem
        a = math.floor(inv)
        quotients.append(a)
        rem = inv - a
    return a0, quotients, rem == 0


def _expand_interval(lo: Fraction, hi: Fraction, n_terms):
    """Common continued-fraction prefix of every number in [lo, hi]."""
    a_lo = math.floor(lo)
    a_hi = math.floor(hi)
    if a_lo != a_hi:
        raise PrecisionExhaustedError("integer part not determined")
    a0 = a_lo
    quotients = []
    lo, hi = lo - a0, hi - a0
    while len(quotients) < n_terms:
        if lo == 0 or hi == 0:
            break
        lo, hi = 1 / hi, 1 / lo
        a_lo, a_hi = math.floor(lo), math.floor(hi)
        if a_lo != a_hi:
            break
        quotients.append(a_lo)
        lo, hi = lo - a_lo, hi - a_lo
    return a0, quotients


def cf_expand(x, n_terms=64, slack_ulps=4.0):
    """Continued-fraction expansion with exact integer convergents.

    Fractions (and ints) expand exactly; floats are treated as centers of
    an interval of +- slack_ulps ulps and the expansion is truncated at
    the last quotient the whole interval agrees on.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        a0, quotients, finished = _expand_exact(x, n_terms)
        exact = finished
    else:
        xf = Fraction(x)
        slack = Fraction(math.ulp(float(x))) * Fraction(slack_ulps)
        a0, quotients = _expand_interval(xf - slack, xf + slack, n_terms)
        x, exact = xf, False
    return ContinuedFractionExpansion(
        a0=a0, quotients=quotients,
        convergents=_convergents(a0, quotients),
        value=x, exact=exact,
    )


@dataclass(frozen=True)
class RemainderRecord:
    n: int
    log_qn: float
    gauss_sum: float
    remainder: float

    @property
    def within_bound(self):
        return abs(self.remainder) <= FIB_RECIP


def remainder_series(x, n_max=25, tail_buffer=5):
    """Records of R(n, x) = -log q_n - sum_{i<n} log T^i(x), n = 1..n_max.

    The denominators q_n come from the exact integer convergents; the
    Gauss-orbit values are evaluated backwards from the quotient tail so
    no forward error accumulates.  For non-exact expansions the last
    `tail_buffer` indices are dropped (their tails are not trustworthy).
    """
    exp = x if isinstance(x, ContinuedFractionExpansion) else cf_expand(x, n_terms=max(n_max + tail_buffer + 2, 64))
    N = len(exp)
    usable = N if exp.exact else max(0, N - tail_buffer)
    records = []
    gauss_sum = 0.0
    for n in range(1, min(n_max, usable) + 1):
        t_prev = exp.tail(n - 1)   # T^{n-1}(frac(x))
        if t_prev == 0:
            break
        gauss_sum += math.log(t_prev)
        _, q_n = exp.convergents[n]
        log_qn = math.log(q_n)
        records.append(RemainderRecord(
            n=n, log_qn=log_qn, gauss_sum=gauss_sum,
            remainder=-log_qn - gauss_sum,
        ))
    return records


def k_epsilon(eps, F=None):
    """Gap constant (1 - eps) / (e^{2F} (1 + (1 + eps) e^{2F})^2)."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if F is None:
        F = FIB_RECIP
    e2f = math.exp(2.0 * F)
    return (1.0 - eps) / (e2f * (1.0 + (1.0 + eps) * e2f) ** 2)


def second_order_bound(m=1.0, F=None):
    """m^2 / (e^{2F} (1 + e^{2F})^2); the eps -> 0 limit of k_epsilon."""
    if F is None:
        F = FIB_RECIP
    e2f = math.exp(2.0 * F)
    return m * m / (e2f * (1.0 + e2f) ** 2)


@dataclass(frozen=True)
class ApproximationPair:
    excess: Fraction
    defect: Fraction
    epsilon: float
    index: int              # n with ratio q_{n+1}/q_n inside the window
    ratio: float
    gap_ok: bool            # excess - defect >= K_eps (1/q + 1/q')^2, exact

    @property
    def gap(self):
        return self.excess - self.defect


def check_gap_inequality(excess: Fraction, defect: Fraction, eps):
    """Exact-rational check of the gap inequality for one pair."""
    k = Fraction(k_epsilon(eps))
    lhs = excess - defect
    rhs = k * (Fraction(1, excess.denominator)
               + Fraction(1, defect.denominator)) ** 2
    return lhs >= rhs


def find_balanced_pairs(x, eps, n_max=30):
    """Excess/defect convergent pairs whose denominator ratio falls in the
    window (2 e^{-2F} / (1+eps), 2 e^{2F} / (1-eps)).

    Orientation follows convergent parity: odd-index truncations of a
    number in (0, 1) over-approximate, even-index ones under-approximate.
    An empty result is valid for a finite expansion horizon.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    exp = x if isinstance(x, ContinuedFractionExpansion) else cf_expand(x, n_terms=n_max + 1)
    window_lo = 2.0 * math.exp(-2.0 * FIB_RECIP) / (1.0 + eps)
    window_hi = 2.0 * math.exp(2.0 * FIB_RECIP) / (1.0 - eps)
    pairs = []
    for n in range(1, min(n_max, len(exp) - 1) + 1):
        _, q_n = exp.convergents[n]
        _, q_n1 = exp.convergents[n + 1]
        ratio = q_n1 / q_n
        if not window_lo < ratio < window_hi:
            continue
        c_n = exp.convergent(n)
        c_n1 = exp.convergent(n + 1)
        if n % 2 == 1:
            excess, defect = c_n, c_n1
        else:
            excess, defect = c_n1, c_n
        pairs.append(ApproximationPair(
            excess=excess, defect=defect, epsilon=eps, index=n,
            ratio=ratio, gap_ok=check_gap_inequality(excess, defect, eps),
        ))
    return pairs
