"""Tail-probability estimation by indicator averaging.

The sample budget is split into fixed work units of ``CHUNK_DRAWS``
realizations; unit ``j`` always draws from substream ``(master_seed, j)``,
so hit counts are integers that sum to the same total for any worker
count or scheduling order. Sweeps default to common random numbers: one
sample set tested against every threshold, which makes the estimated
curve exactly non-increasing.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from statistics import NormalDist
from typing import Optional, Sequence

import numpy as np

from . import bounds as _bounds
from .scenarios import ScenarioConfig, Variant, realize_batch
from .streams import CHUNK_DRAWS, StreamKey


@dataclass(frozen=True)
class TailEstimate:
    """Monte Carlo estimate of P(statistic >= threshold)."""

    p_hat: float
    hits: int
    n: int
    ci_low: float
    ci_high: float
    master_seed: int


@dataclass(frozen=True)
class SweepPoint:
    threshold: float
    estimate: TailEstimate
    markov_bound: Optional[float] = None
    closed_form: Optional[float] = None
    outage_lower_bound: Optional[float] = None


@dataclass(frozen=True)
class SweepResult:
    config: ScenarioConfig
    points: tuple[SweepPoint, ...]


def wilson_interval(hits: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Behaves sensibly at the extremes: zero hits pin the lower limit to 0,
    all hits pin the upper limit to 1.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= hits <= n:
        raise ValueError(f"hits must lie in [0, n], got hits={hits}, n={n}")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence}")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    p = hits / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2.0 * n)) / denom
    half = z * math.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom
    low = 0.0 if hits == 0 else max(0.0, center - half)
    high = 1.0 if hits == n else min(1.0, center + half)
    return low, high


def _unit_hits(args) -> np.ndarray:
    config, master_seed, unit_index, count, thresholds = args
    stats = realize_batch(config, StreamKey(master_seed, unit_index), count)
    stats.sort()
    below = np.searchsorted(stats, thresholds, side="left")
    return (count - below).astype(np.int64)


def _accumulate_hits(
    config: ScenarioConfig,
    master_seed: int,
    thresholds: np.ndarray,
    n: int,
    unit_offset: int,
    workers: int,
) -> np.ndarray:
    units = []
    done = 0
    index = unit_offset
    while done < n:
        count = min(CHUNK_DRAWS, n - done)
        units.append((config, master_seed, index, count, thresholds))
        done += count
        index += 1

    totals = np.zeros(len(thresholds), dtype=np.int64)
    if workers <= 1 or len(units) == 1:
        for unit in units:
            totals += _unit_hits(unit)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunksize = max(1, len(units) // (4 * workers))
            for hits in pool.map(_unit_hits, units, chunksize=chunksize):
                totals += hits
    return totals


def units_for(n: int) -> int:
    """Work units a budget of ``n`` realizations occupies."""
    return -(-n // CHUNK_DRAWS)


def estimate_tail(
    config: ScenarioConfig,
    threshold: float,
    n: int,
    master_seed: int,
    workers: int = 1,
    confidence: float = 0.95,
) -> TailEstimate:
    """Estimate P(statistic >= threshold) from ``n`` realizations.

    Identical results for any ``workers`` value: the reduction is a sum
    of per-unit integer hit counts.
    """
    if n < 1:
        raise ValueError(f"sample count n must be >= 1, got {n}")
    totals = _accumulate_hits(config, master_seed, np.array([threshold], float), n, 0, workers)
    hits = int(totals[0])
    low, high = wilson_interval(hits, n, confidence)
    return TailEstimate(hits / n, hits, n, low, high, master_seed)


def sweep_tail(
    config: ScenarioConfig,
    grid: Sequence[float],
    n: int,
    master_seed: int,
    shared_samples: bool = True,
    workers: int = 1,
    confidence: float = 0.95,
) -> SweepResult:
    """Estimate the tail over a strictly increasing threshold grid.

    With ``shared_samples`` every realization is drawn once and tested
    against all thresholds (common random numbers); disabling it gives
    each threshold an independent sample set. Each point is annotated
    with whatever analytic companions exist for the scenario.
    """
    if n < 1:
        raise ValueError(f"sample count n must be >= 1, got {n}")
    thresholds = np.asarray(list(grid), dtype=np.float64)
    if thresholds.size == 0:
        raise ValueError("threshold grid must be non-empty")
    if not np.all(np.diff(thresholds) > 0):
        raise ValueError("threshold grid must be strictly increasing")

    if shared_samples:
        totals = _accumulate_hits(config, master_seed, thresholds, n, 0, workers)
    else:
        per_pass = units_for(n)
        totals = np.empty(thresholds.size, dtype=np.int64)
        for i, t in enumerate(thresholds):
            totals[i] = _accumulate_hits(
                config, master_seed, np.array([t]), n, i * per_pass, workers
            )[0]

    points = []
    for t, hits in zip(thresholds, totals.tolist()):
        low, high = wilson_interval(hits, n, confidence)
        estimate = TailEstimate(hits / n, hits, n, low, high, master_seed)
        points.append(SweepPoint(float(t), estimate, *_companions(config, float(t))))
    return SweepResult(config, tuple(points))


def _companions(
    config: ScenarioConfig, threshold: float
) -> tuple[Optional[float], Optional[float], Optional[float]]:
    """(markov, closed_form, outage) columns available for one grid point."""
    closed = _bounds.closed_form_tail(config, threshold) if threshold > 0 else None
    markov = outage = None
    if (
        threshold > 0
        and config.variant in (Variant.MULTI_RFI, Variant.PRACTICAL_SINR)
        and config.p_tilde_min is not None
        and config.u is not None
        and config.u >= 2
    ):
        markov = _bounds.markov_from_threshold(
            threshold, config.p_max_s, config.p_tilde_min, config.u
        )
        outage = max(0.0, 1.0 - markov)
    return markov, closed, outage
