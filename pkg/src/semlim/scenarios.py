"""Per-realization interference scenario statistics.

Each scenario draws one non-negative random ratio per realization; the
tail probability of that ratio against a threshold is what the Monte
Carlo engine estimates. Draws are laid out slot-major (all realizations
of one underlying normal before the next), so two configs sharing a
``StreamKey`` and a batch size reuse the same fading draws slot for slot:
growing the interferer count strictly enlarges every denominator, and
rescaling a power rescales every statistic, draw by draw.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .streams import StreamKey, generator_for


class Variant(enum.Enum):
    NO_RFI = "NoRfi"
    SINGLE_RFI = "SingleRfi"
    MULTI_RFI = "MultiRfi"
    PRACTICAL_SINR = "PracticalSinr"


def _require_power(name: str, value: Optional[float]) -> float:
    if value is None:
        raise ValueError(f"{name} is required for this variant")
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")
    return float(value)


def _forbid(name: str, value, variant: Variant):
    if value is not None:
        raise ValueError(f"{name} is not a parameter of variant {variant.value}")


@dataclass(frozen=True)
class ScenarioConfig:
    """Interference scenario plus its power/noise/interferer parameters.

    ``p_tilde_min`` is the weakest interferer's power floor; for the
    PracticalSinr variant (which simulates unit symbol powers) it is kept
    only so the analytic bound columns can be evaluated.
    """

    variant: Variant
    p_max_s: float
    sigma2: Optional[float] = None
    p_min_i: Optional[float] = None
    p_tilde_min: Optional[float] = None
    u: Optional[int] = None

    def __post_init__(self):
        _require_power("p_max_s", self.p_max_s)
        v = self.variant
        if v is Variant.NO_RFI:
            _require_power("sigma2", self.sigma2)
            _forbid("p_min_i", self.p_min_i, v)
            _forbid("p_tilde_min", self.p_tilde_min, v)
            _forbid("u", self.u, v)
        elif v is Variant.SINGLE_RFI:
            _require_power("p_min_i", self.p_min_i)
            _forbid("sigma2", self.sigma2, v)
            _forbid("p_tilde_min", self.p_tilde_min, v)
            _forbid("u", self.u, v)
        elif v is Variant.MULTI_RFI:
            _require_power("p_tilde_min", self.p_tilde_min)
            _forbid("sigma2", self.sigma2, v)
            _forbid("p_min_i", self.p_min_i, v)
            self._check_u()
        elif v is Variant.PRACTICAL_SINR:
            if self.p_tilde_min is not None:
                _require_power("p_tilde_min", self.p_tilde_min)
            _forbid("sigma2", self.sigma2, v)
            _forbid("p_min_i", self.p_min_i, v)
            self._check_u()
        else:  # pragma: no cover - enum is closed
            raise ValueError(f"unknown variant {v!r}")

    def _check_u(self):
        if self.u is None or self.u < 2:
            raise ValueError(
                f"variant {self.variant.value} requires u >= 2 interferers, got {self.u!r}"
            )


def draw_budget(config: ScenarioConfig) -> int:
    """Standard-normal draws consumed per realization."""
    if config.variant in (Variant.NO_RFI, Variant.SINGLE_RFI):
        return 3
    if config.variant is Variant.MULTI_RFI:
        return 2 + 2 * config.u
    return 2 + 2 * config.u + 2


def realize_batch(config: ScenarioConfig, key: StreamKey, count: int) -> np.ndarray:
    """``count`` independent draws of the scenario statistic.

    A denominator that underflows to exactly zero yields +inf so the
    exceedance event stays well defined for every finite threshold.
    """
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    if count == 0:
        return np.empty(0, dtype=np.float64)

    gen = generator_for(key)

    def slot() -> np.ndarray:
        return np.square(gen.standard_normal(count))

    num = slot() + slot()
    v = config.variant
    if v is Variant.NO_RFI:
        den = slot()
        scale = 2.0 * config.p_max_s / config.sigma2
    elif v is Variant.SINGLE_RFI:
        den = slot()
        scale = config.p_max_s / config.p_min_i
    elif v is Variant.MULTI_RFI:
        den = np.zeros(count)
        for _ in range(2 * config.u):
            den += slot()
        scale = config.p_max_s / config.p_tilde_min
    else:
        den = np.zeros(count)
        for _ in range(2 * config.u + 2):
            den += slot()
        scale = 1.0  # unit symbol and interferer powers by construction

    with np.errstate(divide="ignore", invalid="ignore"):
        stat = np.where(den > 0.0, scale * num / den, np.inf)
    return stat


def realize_statistic(config: ScenarioConfig, key: StreamKey) -> float:
    """One draw of the scenario statistic for this key's substream."""
    return float(realize_batch(config, key, 1)[0])


def scenario_from_dict(raw: dict) -> ScenarioConfig:
    """Build a ``ScenarioConfig`` from a config mapping with identical keys."""
    data = dict(raw)
    try:
        variant = Variant(data.pop("variant"))
    except KeyError:
        raise ValueError("scenario config missing field 'variant'") from None
    except ValueError:
        names = ", ".join(v.value for v in Variant)
        raise ValueError(f"unknown variant {raw.get('variant')!r}; expected one of {names}") from None
    known = {"p_max_s", "sigma2", "p_min_i", "p_tilde_min", "u"}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown scenario fields: {sorted(unknown)}")
    if "u" in data and data["u"] is not None:
        data["u"] = int(data["u"])
    if "p_max_s" not in data:
        raise ValueError("scenario config missing field 'p_max_s'")
    return ScenarioConfig(variant=variant, **data)
