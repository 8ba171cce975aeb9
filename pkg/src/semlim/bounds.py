"""Closed-form companions to the Monte Carlo estimates.

Includes the interferer-count Markov bound on the similarity tail, its
outage complement, the mean of the fading power ratio, a quadrature
evaluation of the ratio-of-normals tail integral, and the closed-form
scenario tails used as independent test oracles (each verified against
brute-force Monte Carlo at 1e7 samples before adoption).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .logistic import (
    ConditionError,
    ConditionId,
    ConditionReport,
    LogisticParams,
    alpha_of,
    beta_threshold,
    check_conditions,
    kappa_of,
)
from .scenarios import ScenarioConfig, Variant

QUAD_TOL = 1e-9
QUAD_MAX_SUBDIVISIONS = 10**6


@dataclass(frozen=True)
class BoundReport:
    """An analytic bound value plus the validity conditions behind it.

    ``applicable`` is true only when every condition holds. A value above
    one is reported raw and flagged ``vacuous`` rather than clamped: the
    inequality still holds, it just carries no information.
    """

    value: float
    conditions: tuple[ConditionReport, ...]
    applicable: bool
    vacuous: bool


def markov_from_threshold(threshold: float, p_max_s: float, p_tilde_min: float, u: int) -> float:
    """Raw Markov bound on P(statistic >= threshold) in SNR-threshold space."""
    if u <= 1:
        raise ValueError(f"bound requires more than one interferer, got u={u}")
    if not threshold > 0:
        raise ValueError(f"threshold must be > 0, got {threshold}")
    return p_max_s / (threshold * (u - 1) * p_tilde_min)


def _threshold_checked(params: LogisticParams, eta_min: float) -> float:
    kappa = kappa_of(params, eta_min)
    alpha = alpha_of(params)
    if kappa < 0.0 or kappa > 1.0:
        raise ConditionError(
            ConditionId.KAPPA_RANGE,
            f"normalized floor {kappa:.6g} outside [0, 1] for eta_min={eta_min!r}",
        )
    if kappa < alpha:
        raise ConditionError(
            ConditionId.KAPPA_ABOVE_ALPHA,
            f"normalized floor {kappa:.6g} below alpha={alpha:.6g}: SNR threshold would be negative",
        )
    beta = beta_threshold(params, eta_min)
    if beta == 0.0:
        raise ConditionError(
            ConditionId.KAPPA_ABOVE_ALPHA,
            "SNR threshold is zero; the bound needs the floor strictly above alpha",
        )
    return beta


def markov_upper_bound(
    params: LogisticParams,
    eta_min: float,
    p_max_s: float,
    p_tilde_min: float,
    u: int,
) -> BoundReport:
    """Upper bound on the similarity tail probability under multiple interferers.

    An unreachable floor (threshold +inf) gives a bound of exactly zero.
    """
    if u <= 1:
        raise ValueError(f"bound requires more than one interferer, got u={u}")
    beta = _threshold_checked(params, eta_min)
    conditions = tuple(check_conditions(params, eta_min, p_max_s, p_tilde_min, u))
    if math.isinf(beta):
        value = 0.0
    else:
        value = markov_from_threshold(beta, p_max_s, p_tilde_min, u)
    return BoundReport(
        value=value,
        conditions=conditions,
        applicable=all(r.satisfied for r in conditions),
        vacuous=value > 1.0,
    )


def outage_lower_bound(
    params: LogisticParams,
    eta_min: float,
    p_max_s: float,
    p_tilde_min: float,
    u: int,
) -> BoundReport:
    """Lower bound on the outage probability: complement of the Markov bound."""
    markov = markov_upper_bound(params, eta_min, p_max_s, p_tilde_min, u)
    return BoundReport(
        value=max(0.0, 1.0 - markov.value),
        conditions=markov.conditions,
        applicable=markov.applicable,
        vacuous=markov.vacuous,
    )


def f_mean(nu2: int) -> float:
    """Mean of an F-distributed ratio with nu2 denominator DoF."""
    if nu2 <= 2:
        raise ValueError(f"mean undefined for denominator DoF <= 2, got {nu2}")
    return nu2 / (nu2 - 2)


def _tail_sum(t: float, y: float) -> float:
    # One-sided ratio-of-normals exceedance terms at offsets +/-y.
    return 1.0 - (math.atan(t + y) + math.atan(t - y)) / math.pi


def arctan_integral_bound(t: float) -> float:
    """Tail integral of the two ratio-of-normals terms against a Cauchy weight.

    Evaluates (1/2) * integral over y of [f1(t,y) + f2(t,y)] / (pi (1+y^2))
    with f_i(t, y) = 1/2 - arctan(t +/- y)/pi, by adaptive Simpson quadrature
    on theta in (-pi/2, pi/2) after the substitution y = tan(theta).
    Absolute tolerance 1e-9.
    """
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")

    def g(theta: float) -> float:
        return _tail_sum(t, math.tan(theta)) / (2.0 * math.pi)

    budget = [QUAD_MAX_SUBDIVISIONS]

    def refine(a, b, fa, fm, fb, whole, tol):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = g(lm), g(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        budget[0] -= 1
        if budget[0] <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return refine(a, m, fa, flm, fm, left, tol / 2.0) + refine(
            m, b, fm, frm, fb, right, tol / 2.0
        )

    a, b = -math.pi / 2.0, math.pi / 2.0
    fa, fb, fm = g(a), g(b), g(0.5 * (a + b))
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return refine(a, b, fa, fm, fb, whole, QUAD_TOL)


def closed_form_tail(config: ScenarioConfig, threshold: float) -> Optional[float]:
    """Exact tail of the scenario statistic, where a derived form exists.

    Each expression was validated against brute-force Monte Carlo at 1e7
    samples; they serve as independent oracles for the estimator.
    """
    if not threshold > 0:
        raise ValueError(f"threshold must be > 0, got {threshold}")
    v = config.variant
    if v is Variant.NO_RFI:
        return (1.0 + threshold * config.sigma2 / (2.0 * config.p_max_s)) ** -0.5
    if v is Variant.SINGLE_RFI:
        return (1.0 + threshold * config.p_min_i / config.p_max_s) ** -0.5
    if v is Variant.MULTI_RFI:
        return (1.0 + threshold * config.p_tilde_min / config.p_max_s) ** float(-config.u)
    if v is Variant.PRACTICAL_SINR:
        return (1.0 + threshold) ** float(-(config.u + 1))
    return None
