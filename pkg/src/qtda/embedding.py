"""Delay embeddings of scalar time series, plus a synthetic two-class corpus.

The embedding sends a series s to points (s_t, s_{t+tau}, ..., s_{t+(d-1)tau})
for t = 0, stride, 2*stride, ...; topological features of the embedded cloud
(loops for oscillations, fragments for level shifts) become the classifier
input downstream.

The synthetic corpus has two classes with different embedded topology:
label 1 is a phase-randomized sine whose (d=2, tau=quarter period) embedding
is a ring (one loop), label 0 is a drifting line with a step change whose
embedding is a few disconnected collinear fragments (no loop).  Geometry is
chosen so the classes separate cleanly at grouping scale CORPUS_EPSILON.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complexes import PointCloud


@dataclass(frozen=True)
class EmbeddingConfig:
    """Delay-embedding parameters.

    Defaults (d=2, tau=1, stride=16) keep a 500-sample series at 32 embedded
    points, which caps the simulation register at a workable size.
    """

    dimension: int = 2
    delay: int = 1
    stride: int = 16

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("embedding dimension must be >= 2")
        if self.delay < 1:
            raise ValueError("delay must be >= 1")
        if self.stride < 1:
            raise ValueError("stride must be >= 1")

    @property
    def window(self) -> int:
        """Samples consumed by one embedded point: (d-1)*tau + 1."""
        return (self.dimension - 1) * self.delay + 1


@dataclass(frozen=True)
class TimeSeriesSample:
    """A labeled scalar series; label 0 = healthy, 1 = faulty."""

    values: np.ndarray
    label: int

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("series must be a nonempty 1-D array")
        if self.label not in (0, 1):
            raise ValueError("label must be 0 or 1")
        object.__setattr__(self, "values", arr)


def takens_embed(series: np.ndarray, cfg: EmbeddingConfig) -> PointCloud:
    """Delay-embed a scalar series into R^d.

    Yields floor((len - (d-1)*tau - 1) / stride) + 1 points; raises if the
    series cannot host even one embedding window.
    """
    s = np.asarray(series, dtype=float)
    if s.ndim != 1:
        raise ValueError("series must be 1-D")
    last_start = s.size - cfg.window
    if last_start < 0:
        raise ValueError(
            f"series of length {s.size} is shorter than the embedding window {cfg.window}"
        )
    starts = np.arange(0, last_start + 1, cfg.stride)
    offsets = np.arange(cfg.dimension) * cfg.delay
    return PointCloud(s[starts[:, None] + offsets[None, :]])


#: synthetic-corpus embedding: quarter-period delay turns the sine into a ring
CORPUS_EMBEDDING = EmbeddingConfig(dimension=2, delay=4, stride=2)
#: grouping scale at which the two corpus classes separate in (beta0, beta1)
CORPUS_EPSILON = 1.2
#: series length of the corpus generator
CORPUS_LENGTH = 20
#: corpus noise level, small against the 0.76 minimum ring chord
CORPUS_NOISE = 0.03


def periodic_series(rng: np.random.Generator, length: int = CORPUS_LENGTH,
                    noise: float = CORPUS_NOISE) -> np.ndarray:
    """Sine of period 16 with a uniform random phase, plus Gaussian noise."""
    t = np.arange(length)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    return np.sin(2.0 * math.pi * t / 16.0 + phase) + rng.normal(0.0, noise, length)


def drift_series(rng: np.random.Generator, length: int = CORPUS_LENGTH,
                 noise: float = CORPUS_NOISE) -> np.ndarray:
    """Linear drift with a unit step at t = 9, plus Gaussian noise.

    The step tears the embedded line into separated fragments, so the cloud
    has several connected components and no loop.
    """
    t = np.arange(length)
    intercept = rng.uniform(-1.0, 1.0)
    return intercept + 0.3 * t + 1.0 * (t >= 9) + rng.normal(0.0, noise, length)


def make_synthetic_corpus(num_samples: int, seed: int = 0, *,
                          length: int = CORPUS_LENGTH,
                          noise: float = CORPUS_NOISE) -> list[TimeSeriesSample]:
    """Alternating drift (label 0) and periodic (label 1) series, seeded.

    Labels alternate 0, 1, 0, 1, ... so every prefix is close to balanced.
    """
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    rng = np.random.default_rng(seed)
    samples = []
    for i in range(num_samples):
        if i % 2 == 0:
            samples.append(TimeSeriesSample(drift_series(rng, length, noise), 0))
        else:
            samples.append(TimeSeriesSample(periodic_series(rng, length, noise), 1))
    return samples
