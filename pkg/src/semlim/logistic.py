"""Generalized-logistic similarity surrogate and its threshold algebra.

A semantic link is modelled by a four-parameter logistic curve mapping the
received SNR/SINR to a similarity score in [a1, a2]. Because the curve is
strictly increasing, "similarity meets a floor eta_min" is equivalent to
"SNR meets a derived threshold": this module computes that threshold and
the validity conditions every analytic bound depends on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy.special import expit, logit


class ConditionId(enum.Enum):
    KAPPA_RANGE = "KappaRange"
    KAPPA_ABOVE_ALPHA = "KappaAboveAlpha"
    POWER_BUDGET = "PowerBudget"


class ConditionError(ValueError):
    """A validity condition required by the requested operation fails."""

    def __init__(self, condition: ConditionId, message: str):
        super().__init__(f"{condition.value}: {message}")
        self.condition = condition


@dataclass(frozen=True)
class LogisticParams:
    """Fitted logistic curve for one symbols-per-word setting ``k_label``.

    ``a1``/``a2`` are the lower/upper similarity asymptotes, ``c1 > 0`` the
    growth rate, ``c2`` the midpoint offset: the curve is
    ``a1 + (a2 - a1) / (1 + exp(-(c1*gamma + c2)))``.
    """

    k_label: int
    a1: float
    a2: float
    c1: float
    c2: float

    def __post_init__(self):
        if self.k_label < 1:
            raise ValueError(f"k_label must be a positive integer, got {self.k_label}")
        if not self.c1 > 0:
            raise ValueError(f"growth rate c1 must be > 0, got {self.c1}")
        if not self.a1 < self.a2:
            raise ValueError(f"asymptotes must satisfy a1 < a2, got a1={self.a1}, a2={self.a2}")


@dataclass(frozen=True)
class ConditionReport:
    condition_id: ConditionId
    satisfied: bool
    detail: str


@dataclass(frozen=True)
class SemanticThreshold:
    """Similarity floor together with its normalized and SNR-space forms."""

    eta_min: float
    kappa: float
    alpha: float
    beta: float


def similarity(params: LogisticParams, gamma: float) -> float:
    """Similarity score at linear SNR/SINR ``gamma``; strictly increasing."""
    return params.a1 + (params.a2 - params.a1) * float(expit(params.c1 * gamma + params.c2))


def kappa_of(params: LogisticParams, eta_min: float) -> float:
    """Similarity floor normalized to the asymptote span: (eta-a1)/(a2-a1)."""
    return (eta_min - params.a1) / (params.a2 - params.a1)


def alpha_of(params: LogisticParams) -> float:
    """Normalized similarity at zero SNR; the floor below which the SNR
    threshold would be negative."""
    return float(expit(params.c2))


def beta_threshold(params: LogisticParams, eta_min: float) -> float:
    """SNR threshold equivalent to the similarity floor ``eta_min``.

    Inverts the logistic curve: similarity >= eta_min iff gamma >= result,
    valid while the normalized floor lies in (0, 1). The boundary cases map
    to infinities: a floor at the upper asymptote is never reached (+inf),
    a floor at the lower asymptote is always exceeded (-inf).
    """
    kappa = kappa_of(params, eta_min)
    if kappa < 0.0 or kappa > 1.0:
        raise ConditionError(
            ConditionId.KAPPA_RANGE,
            f"normalized floor {kappa:.6g} outside [0, 1] for eta_min={eta_min!r}",
        )
    if kappa == 1.0:
        return math.inf
    if kappa == 0.0:
        return -math.inf
    return (float(logit(kappa)) - params.c2) / params.c1


def semantic_threshold(params: LogisticParams, eta_min: float) -> SemanticThreshold:
    return SemanticThreshold(
        eta_min=eta_min,
        kappa=kappa_of(params, eta_min),
        alpha=alpha_of(params),
        beta=beta_threshold(params, eta_min),
    )


def check_conditions(
    params: LogisticParams,
    eta_min: float,
    p_max_s: float,
    p_tilde_min: float,
    u: int,
) -> list[ConditionReport]:
    """Evaluate the three validity conditions behind the analytic bounds.

    Failures are reported as data, never raised: callers that need a
    condition gate on the ``satisfied`` flags.
    """
    if u < 1:
        raise ValueError(f"interferer count u must be >= 1, got {u}")
    if not (p_max_s > 0 and p_tilde_min > 0):
        raise ValueError("powers must be positive and finite")

    kappa = kappa_of(params, eta_min)
    alpha = alpha_of(params)

    in_range = 0.0 <= kappa <= 1.0
    reports = [
        ConditionReport(
            ConditionId.KAPPA_RANGE,
            in_range,
            f"normalized floor kappa={kappa:.6g} must lie in [0, 1]",
        ),
        ConditionReport(
            ConditionId.KAPPA_ABOVE_ALPHA,
            kappa >= alpha,
            f"kappa={kappa:.6g} must be >= alpha={alpha:.6g} for a non-negative SNR threshold",
        ),
    ]

    if not in_range:
        reports.append(
            ConditionReport(
                ConditionId.POWER_BUDGET,
                False,
                "not evaluated: SNR threshold undefined while kappa is outside [0, 1]",
            )
        )
        return reports

    beta = beta_threshold(params, eta_min)
    if u <= 1:
        detail = "not evaluated: requires at least two interferers (u > 1)"
        reports.append(ConditionReport(ConditionId.POWER_BUDGET, False, detail))
    elif not math.isfinite(beta):
        detail = f"not evaluated: SNR threshold is {beta}"
        reports.append(ConditionReport(ConditionId.POWER_BUDGET, False, detail))
    else:
        budget = beta * (u - 1) * p_tilde_min
        reports.append(
            ConditionReport(
                ConditionId.POWER_BUDGET,
                p_max_s <= budget,
                f"p_max_s={p_max_s:.6g} must not exceed beta*(u-1)*p_tilde_min={budget:.6g}",
            )
        )
    return reports


def select_optimal_k(family: Sequence[LogisticParams], eta_min: float) -> int:
    """Symbols-per-word label whose SNR threshold for ``eta_min`` is smallest.

    Ties break toward the largest label. Every member must map ``eta_min``
    strictly inside its asymptote span so its threshold is finite.
    """
    if not family:
        raise ValueError("family must be non-empty")
    for member in family:
        kappa = kappa_of(member, eta_min)
        if not 0.0 < kappa < 1.0:
            raise ConditionError(
                ConditionId.KAPPA_RANGE,
                f"k_label={member.k_label}: normalized floor {kappa:.6g} not in (0, 1)",
            )
    best = min(family, key=lambda m: (beta_threshold(m, eta_min), -m.k_label))
    return best.k_label


def params_from_dict(raw: dict) -> LogisticParams:
    """Build ``LogisticParams`` from a config mapping with identical keys."""
    try:
        return LogisticParams(
            k_label=int(raw["k_label"]),
            a1=float(raw["a1"]),
            a2=float(raw["a2"]),
            c1=float(raw["c1"]),
            c2=float(raw["c2"]),
        )
    except KeyError as missing:
        raise ValueError(f"logistic params config missing field {missing}") from None


def family_from_dicts(raws: Iterable[dict]) -> list[LogisticParams]:
    family = sorted((params_from_dict(r) for r in raws), key=lambda m: m.k_label)
    if not family:
        raise ValueError("parameter family must be non-empty")
    return family


def default_family() -> list[LogisticParams]:
    """Synthetic demo family (not fitted to any measured transceiver).

    Growth rate scales with the label so the SNR threshold for any fixed
    floor above the midpoint decreases as the label grows.
    """
    return [
        LogisticParams(k_label=k, a1=0.2, a2=0.95, c1=0.6 * k, c2=0.5)
        for k in (1, 2, 4, 8)
    ]
