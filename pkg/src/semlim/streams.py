"""Deterministic, parallelizable random substreams.

Every random quantity in the package is derived from a ``StreamKey``:
a 64-bit master seed plus a 64-bit chunk index. Each key names an
independent, unbounded substream (counter-based Philox keyed through
``numpy.random.SeedSequence`` spawn keys), so any worker can regenerate
any chunk without coordinating with the others. The same key always
reproduces the same draws within one build of the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Granularity of a work unit: number of statistic draws covered by one
# chunk index when a sample budget is split across workers.
CHUNK_DRAWS = 65536

_U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class StreamKey:
    """Names one independent random substream."""

    master_seed: int
    chunk_index: int = 0

    def __post_init__(self):
        for name in ("master_seed", "chunk_index"):
            value = getattr(self, name)
            if not (0 <= int(value) <= _U64_MAX):
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value!r}")

    def next_chunk(self) -> "StreamKey":
        return StreamKey(self.master_seed, self.chunk_index + 1)


def generator_for(key: StreamKey) -> np.random.Generator:
    """Fresh counter-based generator for the substream named by ``key``."""
    seq = np.random.SeedSequence(key.master_seed, spawn_key=(key.chunk_index,))
    return np.random.Generator(np.random.Philox(seq))


def standard_normal_stream(key: StreamKey, count: int) -> np.ndarray:
    """First ``count`` N(0,1) draws of the substream, as float64."""
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    if count == 0:
        return np.empty(0, dtype=np.float64)
    return generator_for(key).standard_normal(count)


def complex_gaussian_unit_stream(key: StreamKey, count: int) -> np.ndarray:
    """``count`` draws of a unit complex Gaussian CN(0, 1).

    Real and imaginary parts are independent N(0, 1/2), so the
    magnitude-squared has unit mean.
    """
    raw = standard_normal_stream(key, 2 * count)
    scaled = raw * math.sqrt(0.5)
    return scaled[0::2] + 1j * scaled[1::2]


def chi_squared_draw(key: StreamKey, nu: int) -> float:
    """One chi-squared draw with ``nu`` degrees of freedom.

    Computed literally as the sum of ``nu`` squared independent standard
    normals pulled from the substream.
    """
    if nu < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {nu}")
    draws = standard_normal_stream(key, nu)
    return float(np.sum(np.square(draws)))


def f_ratio_draw(key: StreamKey, nu1: int, nu2: int) -> float:
    """One F(nu1, nu2) draw: ratio of DoF-normalized chi-squared draws.

    The numerator uses the first ``nu1`` normals of the substream, the
    denominator the next ``nu2``. A denominator that underflows to exactly
    zero is regenerated from the following substream positions.
    """
    if nu1 < 1 or nu2 < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got ({nu1}, {nu2})")
    draws = standard_normal_stream(key, nu1 + nu2)
    num = float(np.sum(np.square(draws[:nu1])))
    den = float(np.sum(np.square(draws[nu1:])))
    if den == 0.0:
        gen = generator_for(key)
        gen.standard_normal(nu1 + nu2)  # skip the draws already consumed
        while den == 0.0:
            den = float(np.sum(np.square(gen.standard_normal(nu2))))
    return (num / nu1) / (den / nu2)


def f_ratio_stream(key: StreamKey, nu1: int, nu2: int, count: int) -> np.ndarray:
    """Vectorized F(nu1, nu2) draws for moment checks.

    Consumes ``count * (nu1 + nu2)`` normals laid out one draw-tuple per
    row; zero denominators (a measure-zero event) map to +inf.
    """
    if nu1 < 1 or nu2 < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got ({nu1}, {nu2})")
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    if count == 0:
        return np.empty(0, dtype=np.float64)
    draws = standard_normal_stream(key, count * (nu1 + nu2)).reshape(count, nu1 + nu2)
    num = np.sum(np.square(draws[:, :nu1]), axis=1) / nu1
    den = np.sum(np.square(draws[:, nu1:]), axis=1) / nu2
    with np.errstate(divide="ignore"):
        return np.where(den > 0.0, num / den, np.inf)
