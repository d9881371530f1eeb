"""Truncated channel inversion lower bound.

Each relay transmits only when its fading magnitude clears a threshold,
spending a one-bit-entropy header on the on/off flag.  Conditioned on
clearing the threshold, the inverted channel behaves like a fixed-noise
Gaussian channel whose noise power is the conditional mean of
noise_power / gain, an exponential-integral closed form.  The bound mixes
the one-active and both-active branch rates by the activity probabilities
and picks the best threshold on a fixed grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channel import SystemConfig
from .errors import DomainError
from .numerics import SolverSettings, _e1_scaled, _maxmin_batch, _one_relay_value

# threshold grid: 0.1 .. 2.0. Zero is excluded because the conditional mean
# of 1/gain diverges there (and the rate limit is 0 anyway).
THRESHOLD_GRID = tuple(j / 10.0 for j in range(1, 21))


class ConditionalStats(NamedTuple):
    p_active: float
    header_bits: float
    cond_noise: float
    cond_snr: float


@dataclass(frozen=True)
class TciPoint:
    threshold: float
    p_active: float
    header_bits: float
    cond_noise: float
    cond_snr: float
    rate: float


def _binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def conditional_stats(threshold: float, config: SystemConfig) -> ConditionalStats:
    """Activity probability, header entropy, and conditional noise stats.

    With unit-mean exponential gain g and t = threshold^2, the activity
    probability is e^{-t} and E[1/g | g >= t] = e^t E1(t), so the
    conditional noise power is noise_power * e^t * E1(t).
    """
    if not (threshold > 0.0):
        raise DomainError("threshold must be positive; the conditional mean diverges at 0")
    t = threshold * threshold
    p_active = math.exp(-t)
    cond_noise = config.noise_power * _e1_scaled(t)
    return ConditionalStats(
        p_active=p_active,
        header_bits=_binary_entropy(p_active),
        cond_noise=cond_noise,
        cond_snr=1.0 / cond_noise,
    )


def _effective_budget(c: float, header: float, p_active: float) -> float:
    # a budget below the header cost buys nothing; never a negative exponent
    return max(c - header, 0.0) / p_active


def tci_rate(threshold: float, config: SystemConfig, settings: SolverSettings) -> TciPoint:
    """Bound value at one shared threshold for both relays."""
    stats = conditional_stats(threshold, config)
    b1 = _effective_budget(config.c1, stats.header_bits, stats.p_active)
    b2 = _effective_budget(config.c2, stats.header_bits, stats.p_active)
    rho = stats.cond_snr
    only1 = float(_one_relay_value(np.asarray(rho), np.asarray(b1)))
    only2 = float(_one_relay_value(np.asarray(rho), np.asarray(b2)))
    both, _, _ = _maxmin_batch(rho, rho, b1, b2)
    p = stats.p_active
    rate = p * (1.0 - p) * (only1 + only2) + p * p * float(both)
    return TciPoint(
        threshold=threshold,
        p_active=stats.p_active,
        header_bits=stats.header_bits,
        cond_noise=stats.cond_noise,
        cond_snr=stats.cond_snr,
        rate=rate,
    )


def tci_rate_per_relay(
    thresholds: tuple[float, float],
    config: SystemConfig,
    settings: SolverSettings,
) -> float:
    """Bound value with independent per-relay thresholds; rate only."""
    s1 = conditional_stats(thresholds[0], config)
    s2 = conditional_stats(thresholds[1], config)
    b1 = _effective_budget(config.c1, s1.header_bits, s1.p_active)
    b2 = _effective_budget(config.c2, s2.header_bits, s2.p_active)
    only1 = float(_one_relay_value(np.asarray(s1.cond_snr), np.asarray(b1)))
    only2 = float(_one_relay_value(np.asarray(s2.cond_snr), np.asarray(b2)))
    both, _, _ = _maxmin_batch(s1.cond_snr, s2.cond_snr, b1, b2)
    return (
        s1.p_active * (1.0 - s2.p_active) * only1
        + (1.0 - s1.p_active) * s2.p_active * only2
        + s1.p_active * s2.p_active * float(both)
    )


def tci_best(config: SystemConfig, settings: SolverSettings) -> TciPoint:
    """Best point over the fixed threshold grid; ties go to the smaller one."""
    best: TciPoint | None = None
    for threshold in THRESHOLD_GRID:
        point = tci_rate(threshold, config, settings)
        if best is None or point.rate > best.rate:
            best = point
    return best
