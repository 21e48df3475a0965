"""Seeded sampling of involutions/permutations, RSK shapes, and the Monte Carlo engine."""

from __future__ import annotations

import csv
import io
import os
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .asymptotics import theta_from_moment, upsilon_from_thetas
from .characters import MEASURES, central_character_cyclic_large
from .diagrams import OMEGA, normalized, sup_distance
from .partition import Partition, interlacing_of
from .square_roots import InvolutionCounter
from .stats import SampleStats

MAX_N = 10_000
CHUNK = 50

_COUNTER = InvolutionCounter(0)


@dataclass(frozen=True)
class RngConfig:
    seed: int
    trial: int = 0

    def generator(self) -> np.random.Generator:
        """Independent PCG64 stream for (seed, trial)."""
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.trial,))
        return np.random.Generator(np.random.PCG64(ss))


def random_involution(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform involution of {0..n-1}, returned as its array of images.

    With m elements still unmatched, one of them is a fixed point with
    probability I_{m-1}/I_m, otherwise it is paired with one of the other m-1
    chosen uniformly.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    ratios = _COUNTER.ratios(n)
    image = np.arange(n)
    pool = list(range(n))
    coins = rng.random(n)
    picks = rng.random(n)
    step = 0
    while pool:
        m = len(pool)
        x = pool.pop()
        if coins[step] >= ratios[m]:
            j = int(picks[step] * (m - 1))
            y = pool[j]
            pool[j] = pool[-1]
            pool.pop()
            image[x], image[y] = y, x
        step += 1
    return image


def random_permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform permutation of {0..n-1} (Fisher-Yates via numpy)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return rng.permutation(n)


def rsk_shape(word: Sequence[int]) -> Partition:
    """Shape of the RSK insertion tableau of a permutation word (row insertion, P only)."""
    values = [int(v) for v in word]
    if sorted(values) != list(range(len(values))) and sorted(values) != list(range(1, len(values) + 1)):
        raise ValueError("word is not a bijection onto {0..n-1} or {1..n}")
    rows: list[list[int]] = []
    for x in values:
        for row in rows:
            i = bisect_left(row, x)
            if i == len(row):
                row.append(x)
                break
            row[i], x = x, row[i]
        else:
            rows.append([x])
    return Partition(tuple(len(r) for r in rows))


def sample_shape(measure: str, n: int, rng: np.random.Generator) -> Partition:
    if measure == "gelfand":
        return rsk_shape(random_involution(n, rng))
    if measure == "plancherel":
        return rsk_shape(random_permutation(n, rng))
    raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")


@dataclass(frozen=True)
class ExperimentConfig:
    measure: str
    n: int
    trials: int
    seed: int
    ks: tuple[int, ...] = (2, 3, 4, 5)
    thetas: tuple[int, ...] = (1, 2, 3, 4)
    upsilons: tuple[int, ...] = (2, 3, 4, 5)
    threads: int = 1
    sup_step: float = 1e-3

    def column_names(self) -> tuple[str, ...]:
        return (
            tuple(f"X{k}" for k in self.ks)
            + ("supdist",)
            + tuple(f"theta_{k}" for k in self.thetas)
            + tuple(f"upsilon_{k}" for k in self.upsilons)
        )


def trial_observables(shape: Partition, config: ExperimentConfig) -> list[float]:
    """X_k = Sigma_k / n^(k/2), sup distance to Omega, Theta_k and Upsilon_k for one diagram."""
    n = shape.size
    out = [central_character_cyclic_large(shape, k) / n ** (k / 2) for k in config.ks]
    out.append(sup_distance(normalized(shape), OMEGA, config.sup_step))
    kmax = max(config.thetas + config.upsilons, default=0)
    ic = interlacing_of(shape)
    thetas = {0: 0.0}
    for k in range(1, kmax + 1):
        thetas[k] = theta_from_moment(ic.moment(k + 2), n, k)
    out.extend(thetas[k] for k in config.thetas)
    out.extend(upsilon_from_thetas(thetas, k) for k in config.upsilons)
    return out


def _run_chunk(config: ExperimentConfig, start: int, stop: int) -> np.ndarray:
    block = np.empty((stop - start, len(config.column_names())))
    for row, trial in enumerate(range(start, stop)):
        rng = RngConfig(config.seed, trial).generator()
        shape = sample_shape(config.measure, config.n, rng)
        block[row] = trial_observables(shape, config)
    return block


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    values: np.ndarray
    stats: SampleStats = field(repr=False)

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.stats.index(name)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("trial", "n", "measure") + self.stats.names)
        for t, row in enumerate(self.values):
            w.writerow([t, self.config.n, self.config.measure] + [repr(float(v)) for v in row])
        return buf.getvalue()


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Sample ``trials`` diagrams and accumulate their observables.

    Trial t always uses the stream (seed, t), and chunks are merged in trial
    order, so results do not depend on ``threads``.
    """
    if config.measure not in MEASURES:
        raise ValueError(f"unknown measure {config.measure!r}; expected one of {MEASURES}")
    if not 1 <= config.n <= MAX_N:
        raise ValueError(f"n must be in [1, {MAX_N}], got {config.n}")
    if config.trials < 1:
        raise ValueError("trials must be >= 1")
    if any(k < 2 for k in config.ks):
        raise ValueError("central characters are sampled for k >= 2 only")
    bounds = [(s, min(s + CHUNK, config.trials)) for s in range(0, config.trials, CHUNK)]
    if config.threads > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            blocks = list(pool.map(_run_chunk, [config] * len(bounds), *zip(*bounds)))
    else:
        blocks = [_run_chunk(config, s, e) for s, e in bounds]
    stats = SampleStats(config.column_names())
    for block in blocks:
        stats.add_batch(block)
    return ExperimentResult(config, np.vstack(blocks), stats)


def default_threads() -> int:
    env = os.environ.get("GELFAND_LAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def median_sup_distance(measure: str, n: int, samples: int, seed: int, step: float = 1e-3) -> float:
    """Median of ||lambda* - Omega||_inf over ``samples`` independent diagrams."""
    values = []
    for trial in range(samples):
        shape = sample_shape(measure, n, RngConfig(seed, trial).generator())
        values.append(sup_distance(normalized(shape), OMEGA, step))
    return float(np.median(values))
