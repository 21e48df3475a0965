"""Irreducible characters of S_n, central characters and the Gelfand/Plancherel measures."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .partition import Partition, dim_exact, falling_factorial, partitions_of
from .square_roots import InvolutionCounter, f_factor, involution_count

MEASURE_TABLE_MAX_N = 40
MEASURES = ("gelfand", "plancherel")


def _betas(parts: tuple[int, ...]) -> list[int]:
    L = len(parts)
    return [p + L - 1 - i for i, p in enumerate(parts)]


def _from_betas(betas: list[int]) -> tuple[int, ...]:
    betas = sorted(betas, reverse=True)
    L = len(betas)
    parts = [b - (L - 1 - i) for i, b in enumerate(betas)]
    return tuple(p for p in parts if p > 0)


def rim_hooks(parts: tuple[int, ...], k: int):
    """Yield (shape after removing a k-rim hook, height) for every k-rim hook.

    Works on beta-numbers: a k-rim hook is a bead moved from b to b - k onto a
    free position; its height is the number of beads strictly in between.
    """
    betas = _betas(parts)
    occupied = set(betas)
    for idx, b in enumerate(betas):
        t = b - k
        if t < 0 or t in occupied:
            continue
        height = sum(1 for c in betas if t < c < b)
        new = betas[:idx] + [t] + betas[idx + 1 :]
        yield _from_betas(new), height


@lru_cache(maxsize=None)
def _mn(parts: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not parts else 0
    k, rest = cycles[0], cycles[1:]
    total = 0
    for shape, height in rim_hooks(parts, k):
        value = _mn(shape, rest)
        total += -value if height % 2 else value
    return total


def character(lam: Partition, mu: Partition) -> int:
    """Non-normalized irreducible character at cycle type ``mu`` (Murnaghan-Nakayama).

    Memoized on (remaining shape, remaining cycles), largest cycle removed first.
    """
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{lam}| = {lam.size} but |{mu}| = {mu.size}")
    return _mn(lam.parts, mu.parts)


def normalized_character(lam: Partition, mu: Partition) -> Fraction:
    return Fraction(character(lam, mu), dim_exact(lam))


def central_character(lam: Partition, mu: Partition) -> Fraction:
    """Sigma_mu(lam) = n^{(k)} chi^lam(mu + 1^(n-k)), or 0 when n < k = |mu|."""
    n, k = lam.size, mu.size
    if n < k:
        return Fraction(0)
    return falling_factorial(n, k) * normalized_character(lam, mu.pad_ones(n))


def central_character_cyclic_large(lam: Partition, k: int) -> float:
    """Sigma_k(lam) in floating point for large diagrams.

    Sum over k-rim hooks xi of (-1)^height(xi) n^{(k)} dim(lam - xi) / dim(lam).
    With beta-numbers beta_j, moving bead b to b - k gives
    n^{(k)} dim(lam - xi)/dim(lam) = b^{(k)} prod_{j != a} |b - k - beta_j| / |b - beta_j|,
    evaluated as an exponentiated sum of logs.
    """
    n = lam.size
    if k > n:
        return 0.0
    if k < 1:
        raise ValueError("k must be >= 1")
    parts = lam.parts
    L = len(parts)
    betas = np.asarray(parts, dtype=np.int64) + (L - 1 - np.arange(L))
    targets = betas - k
    occupied = np.zeros(int(betas[0]) + 1, dtype=bool)
    occupied[betas] = True
    valid = targets >= 0
    valid[valid] &= ~occupied[targets[valid]]
    if not valid.any():
        return 0.0
    b = betas[valid].astype(float)
    t = targets[valid].astype(float)
    beta_f = betas.astype(float)
    num = t[:, None] - beta_f[None, :]
    den = b[:, None] - beta_f[None, :]
    rows = np.arange(len(b))
    own = np.flatnonzero(valid)
    num[rows, own] = 1.0
    den[rows, own] = 1.0
    log_mag = np.log(np.abs(num)).sum(axis=1) - np.log(np.abs(den)).sum(axis=1)
    log_mag += np.log(b[:, None] - np.arange(k)[None, :]).sum(axis=1)
    height = ((beta_f[None, :] > t[:, None]) & (beta_f[None, :] < b[:, None])).sum(axis=1)
    sign = np.where(height % 2 == 1, -1.0, 1.0)
    return float(np.sum(sign * np.exp(log_mag)))


@dataclass(frozen=True)
class MeasureTable:
    n: int
    which: str
    rows: tuple[tuple[Partition, Fraction], ...]

    def as_dict(self) -> dict[Partition, Fraction]:
        return dict(self.rows)

    def expectation(self, fn) -> Fraction:
        return sum((prob * fn(lam) for lam, prob in self.rows), Fraction(0))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["partition", "numerator", "denominator"])
        for lam, prob in self.rows:
            w.writerow([" ".join(map(str, lam.parts)), prob.numerator, prob.denominator])
        return buf.getvalue()


def measure_table(n: int, which: str = "gelfand") -> MeasureTable:
    """Exact Gelfand (dim/I_n) or Plancherel (dim^2/n!) probabilities on partitions of n."""
    if which not in MEASURES:
        raise ValueError(f"unknown measure {which!r}; expected one of {MEASURES}")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > MEASURE_TABLE_MAX_N:
        raise ValueError(
            f"exact tables are limited to n <= {MEASURE_TABLE_MAX_N}; use the sampling module for n = {n}"
        )
    parts = partitions_of(n)
    dims = [dim_exact(lam) for lam in parts]
    if which == "gelfand":
        total = involution_count(n)
        rows = tuple((lam, Fraction(d, total)) for lam, d in zip(parts, dims))
    else:
        total = math.factorial(n)
        rows = tuple((lam, Fraction(d * d, total)) for lam, d in zip(parts, dims))
    return MeasureTable(n, which, rows)


def gelfand_expectation_sigma(n: int, mu: Partition) -> Fraction:
    """G_n[Sigma_mu] = n^{(|mu|)} I_{n-|mu|+m_1} / I_n * prod_{i>=2} f(i, m_i)."""
    k = mu.size
    if n < k:
        return Fraction(0)
    mult = mu.multiplicities()
    m1 = mult.get(1, 0)
    prod = 1
    for i, m in mult.items():
        if i >= 2:
            prod *= f_factor(i, m)
    return Fraction(falling_factorial(n, k) * involution_count(n - k + m1) * prod, involution_count(n))


def gelfand_expectation_sigma_direct(n: int, mu: Partition) -> Fraction:
    """Same expectation by summing over all partitions of n (oracle)."""
    table = measure_table(n, "gelfand")
    return table.expectation(lambda lam: central_character(lam, mu))


_RATIOS = InvolutionCounter(0)


def expectation_sigma_scaled(n: int, mu: Partition, which: str = "gelfand", scale: float = 0.0) -> float:
    """E[Sigma_mu] / n^scale in floating point, usable for any n up to the sampler bound.

    Gelfand uses the closed formula with I_{n-k+m_1}/I_n taken as a product of
    ratios r_j = I_{j-1}/I_j. Plancherel is n^{(k)} for mu = 1^k and 0 otherwise.
    """
    if which not in MEASURES:
        raise ValueError(f"unknown measure {which!r}; expected one of {MEASURES}")
    k = mu.size
    if n < k:
        return 0.0
    mult = mu.multiplicities()
    m1 = mult.get(1, 0)
    log_val = sum(math.log(n - i) for i in range(k)) - scale * math.log(n) if n > 0 else 0.0
    if which == "plancherel":
        return math.exp(log_val) if m1 == k else 0.0
    coef = 1
    for i, m in mult.items():
        if i >= 2:
            coef *= f_factor(i, m)
    if coef == 0:
        return 0.0
    ratios = _RATIOS.ratios(n)
    log_val += sum(math.log(ratios[j]) for j in range(n - k + m1 + 1, n + 1))
    return coef * math.exp(log_val)


def asymptotic_expectation_sigma(mu: Partition) -> tuple[int, Fraction]:
    """Leading coefficient prod_{i>=2} f(i, m_i) and exponent (|mu| + m_1)/2."""
    mult = mu.multiplicities()
    coef = 1
    for i, m in mult.items():
        if i >= 2:
            coef *= f_factor(i, m)
    return coef, Fraction(mu.size + mult.get(1, 0), 2)
