"""Numerical kernels shared by every bound computation.

Semi-infinite quadrature, the exponential integral E1, a guarded bisection,
and the max-min compression-rate solver used by the fixed-channel rate and
by the quantized / truncated inversion schemes.  All rates are in bits per
complex dimension (base-2 logs throughout).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_laguerre

from .errors import BracketError, DomainError, InvalidArgument, NonConvergent

_LN2 = math.log(2.0)
_EULER_GAMMA = 0.577215664901532860606512
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

# Fixed iteration counts for the nested max-min search.  72 golden steps
# shrink the bracket by 0.618**72 ~ 1e-15 relative, so the answer is
# limited by float64, not by the iteration budget.
_GOLDEN_ITERS = 72


@dataclass(frozen=True)
class SolverSettings:
    """Shared knobs for tolerances, quadrature order, grids, and sampling.

    abs_tol      absolute convergence tolerance (bits) for iterative solvers
    max_iter     iteration cap for bisection and the allocation ascent
    quad_order   base Gauss-Laguerre order; doubled on fallback
    grid_points  lattice density per dimension for the grid oracle
    mc_samples   Monte Carlo draw count
    seed         RNG seed; equal seeds give byte-identical runs
    """

    abs_tol: float = 1e-9
    max_iter: int = 200
    quad_order: int = 64
    grid_points: int = 400
    mc_samples: int = 1_000_000
    seed: int = 0

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0 and math.isfinite(self.abs_tol)):
            raise InvalidArgument("abs_tol must be positive and finite")
        if self.max_iter < 1:
            raise InvalidArgument("max_iter must be at least 1")
        if self.quad_order < 8:
            raise InvalidArgument("quad_order must be at least 8")
        if self.grid_points < 10:
            raise InvalidArgument("grid_points must be at least 10")
        if self.mc_samples < 1000:
            raise InvalidArgument("mc_samples must be at least 1000")
        if self.seed < 0:
            raise InvalidArgument("seed must be a nonnegative integer")


@lru_cache(maxsize=32)
def _laguerre_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes x_i and premultiplied weights w_i * exp(x_i) of order-n Gauss-Laguerre.

    The exp(x_i) factor folds the e^{-x} kernel back out, so the rule applies
    to plain integrals over [0, inf).  The product is formed in log space:
    weights underflow near the largest nodes, and there the integrands we
    meet have decayed far below double precision anyway.
    """
    nodes, weights = roots_laguerre(order)
    with np.errstate(divide="ignore"):
        scaled = np.exp(np.log(weights) + nodes)
    return nodes, scaled


def integrate_semiinfinite(
    f: Callable[[np.ndarray], np.ndarray],
    lower: float,
    settings: SolverSettings,
) -> float:
    """Integrate f over [lower, inf) by shifted Gauss-Laguerre quadrature.

    Starts at settings.quad_order and doubles the order until two successive
    orders agree within abs_tol * max(1, |value|), giving up after four
    doublings.  f must accept a numpy array of evaluation points.
    """
    if not math.isfinite(lower) or lower < 0.0:
        raise DomainError(f"lower limit must be finite and nonnegative, got {lower}")
    order = settings.quad_order
    previous = None
    for _ in range(5):
        nodes, scaled = _laguerre_rule(order)
        values = np.asarray(f(lower + nodes), dtype=float)
        if values.shape != nodes.shape:
            raise InvalidArgument("integrand must map an array of points to an array of values")
        if not np.all(np.isfinite(values)):
            raise DomainError("integrand returned a non-finite value at a quadrature node")
        estimate = float(np.dot(scaled, values))
        if previous is not None and abs(estimate - previous) <= settings.abs_tol * max(1.0, abs(estimate)):
            return estimate
        previous = estimate
        order *= 2
    raise NonConvergent("quadrature orders failed to agree after four doublings")


def _e1_scaled(t: float) -> float:
    """exp(t) * E1(t) for t > 0, stable for arbitrarily large t."""
    if not (t > 0.0) or not math.isfinite(t):
        raise DomainError(f"E1 requires a positive finite argument, got {t}")
    if t <= 1.0:
        # alternating series for E1, then scale by exp(t)
        total = -_EULER_GAMMA - math.log(t)
        term = 1.0
        for k in range(1, 60):
            term *= -t / k
            contribution = -term / k
            total += contribution
            if abs(contribution) <= 1e-17 * abs(total):
                break
        return math.exp(t) * total
    # modified Lentz continued fraction; the scaled value is the fraction itself
    b = t + 1.0
    c = 1e308
    d = 1.0 / b
    h = d
    for i in range(1, 300):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise NonConvergent(f"continued fraction for E1 stalled at t={t}")


def exp_integral_e1(t: float) -> float:
    """Exponential integral E1(t) = int_t^inf exp(-u)/u du, t > 0.

    Series expansion for t <= 1, continued fraction beyond; relative error
    is at the 1e-14 level across the crossover.
    """
    return math.exp(-t) * _e1_scaled(t)


def bisect(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    settings: SolverSettings,
) -> float:
    """Root of g on [lo, hi] by bisection.

    Stops when |g(x)| <= abs_tol or the half-interval falls below abs_tol.
    Raises BracketError when g(lo) and g(hi) share a sign, NonConvergent
    when max_iter bisections are not enough.
    """
    if not (lo < hi):
        raise InvalidArgument(f"need lo < hi, got [{lo}, {hi}]")
    g_lo = g(lo)
    g_hi = g(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo > 0.0) == (g_hi > 0.0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: g={g_lo:.3g}, {g_hi:.3g}")
    for _ in range(settings.max_iter):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if abs(g_mid) <= settings.abs_tol or 0.5 * (hi - lo) <= settings.abs_tol:
            return mid
        if (g_mid > 0.0) == (g_lo > 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    raise NonConvergent("bisection exhausted max_iter without meeting abs_tol")


@dataclass(frozen=True)
class MaxMinProblem:
    """A two-relay max-min rate instance: per-relay SNRs and bit budgets."""

    snrs: tuple[float, float]
    budgets: tuple[float, float]
    relay_count: int = 2

    def __post_init__(self) -> None:
        if self.relay_count != 2:
            raise InvalidArgument("only the two-relay problem is supported")
        if len(self.snrs) != 2 or len(self.budgets) != 2:
            raise InvalidArgument("snrs and budgets must both have two entries")
        for value in (*self.snrs, *self.budgets):
            if not math.isfinite(value) or value < 0.0:
                raise InvalidArgument("snrs and budgets must be finite and nonnegative")


def _log2_1p(x: np.ndarray) -> np.ndarray:
    return np.log1p(x) / _LN2


def _one_relay_value(rho: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Single-relay compress-and-forward rate log2((1+rho)/(1+rho 2^-c))."""
    return (np.log1p(rho) - np.log1p(rho * np.exp2(-c))) / _LN2


def _branch_min(rho1, rho2, c1, c2, r1, r2):
    """Minimum over the four cut branches at compression rates (r1, r2)."""
    u1 = -np.expm1(-r1 * _LN2)
    u2 = -np.expm1(-r2 * _LN2)
    both = _log2_1p(rho1 * u1 + rho2 * u2)
    cut1 = c1 - r1 + _log2_1p(rho2 * u2)
    cut2 = _log2_1p(rho1 * u1) + c2 - r2
    cut12 = c1 - r1 + c2 - r2
    return np.minimum(np.minimum(both, cut1), np.minimum(cut2, cut12))


def _inner_best_r2(rho1, rho2, c1, c2, r1):
    """Closed-form maximizer over r2 of the branch minimum at fixed r1.

    The two branches that decrease in r2 share the line m + c2 - r2 with
    m = min(log2(1+rho1 u1), c1 - r1); each increasing branch crosses that
    line at an explicit point in the variable v = 2^-r2, and the max-min
    sits at the larger of the two crossings, clamped into [0, c2].
    """
    u1 = -np.expm1(-r1 * _LN2)
    a1 = _log2_1p(rho1 * u1)
    m = np.minimum(a1, c1 - r1)
    with np.errstate(over="ignore", divide="ignore"):
        v_both = (1.0 + rho1 * u1 + rho2) / (np.exp2(m + c2) + rho2)
        v_cut1 = (1.0 + rho2) / (np.exp2(m + c2 - (c1 - r1)) + rho2)
        v = np.minimum(v_both, v_cut1)
        r2 = -np.log2(v)
    return np.clip(r2, 0.0, c2)


def _maxmin_general(rho1, rho2, c1, c2):
    """Golden-section over r1 with the exact inner solve; both SNRs positive."""
    lo = np.zeros_like(c1)
    hi = c1.copy()
    for _ in range(_GOLDEN_ITERS):
        gap = hi - lo
        x1 = hi - _INVPHI * gap
        x2 = lo + _INVPHI * gap
        probes = np.stack([x1, x2])
        r2 = _inner_best_r2(rho1, rho2, c1, c2, probes)
        values = _branch_min(rho1, rho2, c1, c2, probes, r2)
        take_upper = values[0] < values[1]
        lo = np.where(take_upper, x1, lo)
        hi = np.where(take_upper, hi, x2)
    r1 = 0.5 * (lo + hi)
    r2 = _inner_best_r2(rho1, rho2, c1, c2, r1)
    value = _branch_min(rho1, rho2, c1, c2, r1, r2)
    return value, r1, r2


def _maxmin_batch(rho1, rho2, c1, c2):
    """Vectorized max-min rate over aligned arrays of SNR pairs and budgets.

    Returns (value, r1, r2) with the same shape as the broadcast inputs.
    Relays with zero SNR or zero budget are pinned at r = 0 and the problem
    collapses to the single-relay closed form.
    """
    rho1, rho2, c1, c2 = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (rho1, rho2, c1, c2))
    )
    shape = rho1.shape
    rho1, rho2, c1, c2 = (a.reshape(-1).copy() for a in (rho1, rho2, c1, c2))
    value = np.zeros_like(rho1)
    r1 = np.zeros_like(rho1)
    r2 = np.zeros_like(rho1)

    live1 = (rho1 > 0.0) & (c1 > 0.0)
    live2 = (rho2 > 0.0) & (c2 > 0.0)

    only1 = live1 & ~live2
    if np.any(only1):
        v = _one_relay_value(rho1[only1], c1[only1])
        value[only1] = v
        r1[only1] = np.maximum(c1[only1] - v, 0.0)

    only2 = live2 & ~live1
    if np.any(only2):
        v = _one_relay_value(rho2[only2], c2[only2])
        value[only2] = v
        r2[only2] = np.maximum(c2[only2] - v, 0.0)

    both = live1 & live2
    if np.any(both):
        v, a, b = _maxmin_general(rho1[both], rho2[both], c1[both], c2[both])
        value[both] = v
        r1[both] = a
        r2[both] = b

    value = np.maximum(value, 0.0)
    return value.reshape(shape), r1.reshape(shape), r2.reshape(shape)


def solve_maxmin(
    problem: MaxMinProblem,
    settings: SolverSettings,
) -> tuple[float, tuple[float, float]]:
    """Max-min compression-rate value and its maximizer for one instance.

    The outer search is a golden-section scan of the concave value function
    of r1; the inner maximization over r2 is solved in closed form at every
    probe, so the returned value is exact to float64 rounding.
    """
    rho1, rho2 = problem.snrs
    c1, c2 = problem.budgets
    value, r1, r2 = _maxmin_batch(rho1, rho2, c1, c2)
    return float(value), (float(r1), float(r2))


def maxmin_grid_oracle(problem: MaxMinProblem, settings: SolverSettings) -> float:
    """Lattice maximum of the branch-minimum objective.

    Returns the exact maximum of the objective over the grid_points x
    grid_points lattice covering [0, c1] x [0, c2] — the same value a
    brute-force sweep of every lattice point produces (asserted against
    _lattice_max_bruteforce in the test suite), but found in O(n log n):
    along each lattice row the objective is the minimum of a piece that
    never decreases in the second coordinate and a piece that never
    increases, so the row maximum sits at their crossing, located by a
    vectorized binary search.  Shares no solution machinery with
    solve_maxmin, which makes it an independent cross-check.
    """
    rho1, rho2 = problem.snrs
    c1, c2 = problem.budgets
    n = settings.grid_points
    r1_axis = np.linspace(0.0, c1, n)
    r2_axis = np.linspace(0.0, c2, n)
    t1 = rho1 * -np.expm1(-r1_axis * _LN2)
    t2 = rho2 * -np.expm1(-r2_axis * _LN2)
    log_t2 = _log2_1p(t2)
    rem1 = c1 - r1_axis
    rem2 = c2 - r2_axis
    # Decreasing piece per row i, column j: rem2[j] + m1[i].
    m1 = np.minimum(_log2_1p(t1), rem1)

    def increasing_piece(j: np.ndarray) -> np.ndarray:
        return np.minimum(_log2_1p(t1 + t2[j]), rem1 + log_t2[j])

    def objective(j: np.ndarray) -> np.ndarray:
        return np.minimum(increasing_piece(j), m1 + rem2[j])

    # Per row, the smallest column index where the increasing piece meets
    # or passes the decreasing piece (n-1 when they never cross).
    lo = np.zeros(n, dtype=np.int64)
    hi = np.full(n, n - 1, dtype=np.int64)
    while np.any(lo < hi):
        mid = (lo + hi) // 2
        crossed = increasing_piece(mid) >= m1 + rem2[mid]
        hi = np.where(crossed, mid, hi)
        lo = np.where(crossed, lo, np.minimum(mid + 1, hi))
    candidates = np.maximum(objective(hi), objective(np.maximum(hi - 1, 0)))
    return max(float(candidates.max()), 0.0)


def _lattice_max_bruteforce(problem: MaxMinProblem, settings: SolverSettings) -> float:
    """Row-chunked evaluation of every lattice point; slow reference for
    maxmin_grid_oracle's crossing search."""
    rho1, rho2 = problem.snrs
    c1, c2 = problem.budgets
    n = settings.grid_points
    r1_axis = np.linspace(0.0, c1, n)
    r2_axis = np.linspace(0.0, c2, n)[None, :]
    best = -np.inf
    block = max(1, int(4e6) // n)
    for start in range(0, n, block):
        r1_block = r1_axis[start : start + block][:, None]
        values = _branch_min(rho1, rho2, c1, c2, r1_block, r2_axis)
        best = max(best, float(values.max()))
    return max(best, 0.0)
