"""Max-min achievable rate for one fixed SNR pair and one budget pair.

Thin wrapper over the numerics solver that also reports which of the four
cut-set branches are tight at the optimum.  Reused by the quantized and
truncated inversion schemes with their effective SNRs and budgets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import SnrPair
from .numerics import MaxMinProblem, SolverSettings, _branch_min, solve_maxmin

# Branch labels name the set of relays whose leftover-budget term is active.
_SUBSET_LABELS = ("{}", "{1}", "{2}", "{1,2}")

_ACTIVE_TOL = 1e-6


@dataclass(frozen=True)
class FixedRateResult:
    rate: float
    r_opt: tuple[float, float]
    active_subsets: tuple[str, ...]


def _branch_values(rho1, rho2, c1, c2, r1, r2) -> tuple[float, float, float, float]:
    ln2 = math.log(2.0)
    u1 = -math.expm1(-r1 * ln2)
    u2 = -math.expm1(-r2 * ln2)
    return (
        math.log1p(rho1 * u1 + rho2 * u2) / ln2,
        c1 - r1 + math.log1p(rho2 * u2) / ln2,
        math.log1p(rho1 * u1) / ln2 + c2 - r2,
        c1 - r1 + c2 - r2,
    )


def fixed_rate(
    snrs: SnrPair,
    budgets: tuple[float, float],
    settings: SolverSettings,
) -> FixedRateResult:
    """Solve the two-relay max-min rate and label the tight branches.

    A branch is reported active when its value at the optimizer is within
    1e-6 of the branch minimum.
    """
    problem = MaxMinProblem(snrs=(snrs.rho1, snrs.rho2), budgets=tuple(budgets))
    value, r_opt = solve_maxmin(problem, settings)
    branches = _branch_values(snrs.rho1, snrs.rho2, budgets[0], budgets[1], *r_opt)
    floor = min(branches)
    active = tuple(
        label
        for label, branch in zip(_SUBSET_LABELS, branches)
        if branch - floor <= _ACTIVE_TOL
    )
    return FixedRateResult(rate=value, r_opt=r_opt, active_subsets=active)


def branch_minimum(
    snrs: SnrPair,
    budgets: tuple[float, float],
    r: tuple[float, float],
) -> float:
    """Objective value at a given compression-rate pair; no optimization."""
    value = _branch_min(
        np.asarray(snrs.rho1), np.asarray(snrs.rho2),
        np.asarray(budgets[0]), np.asarray(budgets[1]),
        np.asarray(r[0]), np.asarray(r[1]),
    )
    return float(value)
