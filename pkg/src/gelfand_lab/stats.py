"""Mergeable one-pass accumulator for means and (co)variances of several observables."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class SampleStats:
    """Running count, mean vector and co-moment matrix (Chan et al. pairwise update).

    ``comoment[i, j]`` is sum_t (x_ti - mean_i)(x_tj - mean_j); the diagonal is the
    usual M2. Merging is exact in arithmetic and order-independent up to round-off.
    """

    names: tuple[str, ...]
    count: int = 0
    mean: np.ndarray = field(default=None)
    comoment: np.ndarray = field(default=None)

    def __post_init__(self):
        d = len(self.names)
        if self.mean is None:
            self.mean = np.zeros(d)
        if self.comoment is None:
            self.comoment = np.zeros((d, d))

    def add(self, values) -> None:
        self.add_batch(np.asarray(values, dtype=float)[None, :])

    def add_batch(self, block) -> None:
        block = np.asarray(block, dtype=float)
        if block.ndim != 2 or block.shape[1] != len(self.names):
            raise ValueError(f"expected shape (T, {len(self.names)}), got {block.shape}")
        if block.shape[0] == 0:
            return
        mean = block.mean(axis=0)
        centered = block - mean
        other = SampleStats(self.names, block.shape[0], mean, centered.T @ centered)
        self.merge(other)

    def merge(self, other: SampleStats) -> SampleStats:
        if other.names != self.names:
            raise ValueError("cannot merge accumulators over different observables")
        if other.count == 0:
            return self
        if self.count == 0:
            self.count, self.mean, self.comoment = other.count, other.mean.copy(), other.comoment.copy()
            return self
        n_a, n_b = self.count, other.count
        n = n_a + n_b
        delta = other.mean - self.mean
        self.mean = self.mean + delta * (n_b / n)
        self.comoment = self.comoment + other.comoment + np.outer(delta, delta) * (n_a * n_b / n)
        self.count = n
        return self

    def index(self, name: str) -> int:
        return self.names.index(name)

    def mean_of(self, name: str) -> float:
        return float(self.mean[self.index(name)])

    def variance_of(self, name: str) -> float:
        i = self.index(name)
        return float(self.comoment[i, i] / (self.count - 1))

    def covariance_of(self, a: str, b: str) -> float:
        return float(self.comoment[self.index(a), self.index(b)] / (self.count - 1))

    def std_error_of(self, name: str) -> float:
        return float(np.sqrt(self.variance_of(name) / self.count))

    def summary(self) -> dict:
        d = len(self.names)
        cov = self.comoment / max(self.count - 1, 1)
        return {
            "trials": self.count,
            "means": {k: float(self.mean[i]) for i, k in enumerate(self.names)},
            "variances": {k: float(cov[i, i]) for i, k in enumerate(self.names)},
            "std_errors": {k: float(np.sqrt(cov[i, i] / max(self.count, 1))) for i, k in enumerate(self.names)},
            "covariances": {
                f"{self.names[i]},{self.names[j]}": float(cov[i, j]) for i in range(d) for j in range(i + 1, d)
            },
        }
