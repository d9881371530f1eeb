"""MMSE relaying lower bound.

Each relay forwards a Gaussian-quantized version of its conditional-mean
estimate of the source symbol.  The quantization noise power is calibrated
so the Gaussian description rate of the estimate exactly meets the link
budget.  The bound is a difference of two entropy-like expectations: a joint
term over both fading states, evaluated by seeded Monte Carlo, and two
per-relay correction terms, each a one-dimensional integral against the
unit-mean exponential law of the source power.

All fading moments reduce to closed forms in the scaled exponential
integral e^t E1(t), written below as es(t):

    E[U]        = 1 - s * es(s)                   with s = noise_power
    E[U^2]      = 1 + s - s (2 + s) es(s)
    Var(U)      = s (1 - s es(s) (1 + es(s)))
    E[V] - D    = s ((1 + s) es(s) - 1)

where U = g/(g+s) is the per-realization estimator gain and V its noise
variance plus distortion.  E[|estimate|^2] collapses to E[U] because the
conditional error variance is U (1 - U) * ...; expanding the second moment
gives U^2 + U s/(g+s) = U.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import SystemConfig, sample_gains
from .errors import DegenerateBudget
from .numerics import SolverSettings, _e1_scaled, integrate_semiinfinite

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class MmseCalibration:
    """Per-relay second moments and the budget-matched distortions."""

    est_power: tuple[float, float]
    distortion: tuple[float, float]
    u_moments: tuple[tuple[float, float], tuple[float, float]]  # (mean, variance)
    v_mean: tuple[float, float]


@dataclass(frozen=True)
class MmseResult:
    rate: float
    mc_halfwidth: float
    constraint_check: tuple[float, float]
    degenerate: bool = False


def calibrate(config: SystemConfig, settings: SolverSettings) -> MmseCalibration:
    """Closed-form moments of the estimator gain and the matched distortions."""
    if config.c1 <= 0.0 or config.c2 <= 0.0:
        raise DegenerateBudget("calibration needs strictly positive budgets on both links")
    s = config.noise_power
    es = _e1_scaled(s)
    u_mean = 1.0 - s * es
    u_var = s * (1.0 - s * es * (1.0 + es))
    residual = s * ((1.0 + s) * es - 1.0)
    d1 = u_mean / math.expm1(config.c1 * _LN2)
    d2 = u_mean / math.expm1(config.c2 * _LN2)
    return MmseCalibration(
        est_power=(u_mean, u_mean),
        distortion=(d1, d2),
        u_moments=((u_mean, u_var), (u_mean, u_var)),
        v_mean=(residual + d1, residual + d2),
    )


def _joint_term(
    g1: np.ndarray,
    g2: np.ndarray,
    noise_power: float,
    distortion: tuple[float, float],
) -> tuple[float, float]:
    """Monte Carlo mean and 95% half-width of the joint log-det entropy term."""
    u1 = g1 / (g1 + noise_power)
    u2 = g2 / (g2 + noise_power)
    v1 = u1 * noise_power / (g1 + noise_power) + distortion[0]
    v2 = u2 * noise_power / (g2 + noise_power) + distortion[1]
    samples = np.log2(u1 * u1 * v2 + u2 * u2 * v1 + v1 * v2)
    mean = float(samples.mean())
    halfwidth = 1.96 * float(samples.std(ddof=1)) / math.sqrt(samples.size)
    return mean, halfwidth


def _marginal_term(u_var: float, v_mean: float, settings: SolverSettings) -> float:
    """E over unit-mean exponential source power t of log2(u_var * t + v_mean)."""

    def integrand(t: np.ndarray) -> np.ndarray:
        return np.log2(u_var * t + v_mean) * np.exp(-t)

    return integrate_semiinfinite(integrand, 0.0, settings)


def mmse_rate(config: SystemConfig, settings: SolverSettings) -> MmseResult:
    """Bound value with diagnostics.

    A zero budget on either link makes the calibrated distortion infinite,
    so the scheme degenerates to rate 0 rather than an evaluation error.
    The constraint check repeats the Gaussian description-rate computation
    log2(1 + est_power / D) per relay, which the calibration makes equal to
    the budget up to rounding.
    """
    if config.c1 <= 0.0 or config.c2 <= 0.0:
        return MmseResult(
            rate=0.0,
            mc_halfwidth=0.0,
            constraint_check=(0.0, 0.0),
            degenerate=True,
        )
    cal = calibrate(config, settings)
    rng = np.random.default_rng(settings.seed)
    g1 = sample_gains(rng, settings.mc_samples)
    g2 = sample_gains(rng, settings.mc_samples)
    joint, halfwidth = _joint_term(g1, g2, config.noise_power, cal.distortion)
    corrections = sum(
        _marginal_term(cal.u_moments[k][1], cal.v_mean[k], settings) for k in (0, 1)
    )
    checks = tuple(
        math.log1p(cal.est_power[k] / cal.distortion[k]) / _LN2 for k in (0, 1)
    )
    return MmseResult(
        rate=joint - corrections,
        mc_halfwidth=halfwidth,
        constraint_check=checks,
    )
