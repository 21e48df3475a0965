"""Fluctuation functionals of random diagrams and their limiting gaussian laws."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .characters import expectation_sigma_scaled
from .diagrams import lskv_moment
from .ik_algebra import basis_product
from .partition import Partition, interlacing_of
from .stats import SampleStats

GATE_SIGMAS = 4.0


def chebyshev_u_table(kmax: int) -> list[list[int]]:
    """Coefficient lists (index = power of X) of U_0..U_kmax from U_{k+2} = X U_{k+1} - U_k."""
    table = [[1], [0, 1]]
    for k in range(2, kmax + 1):
        prev, prev2 = table[k - 1], table[k - 2]
        row = [0] + prev
        for i, c in enumerate(prev2):
            row[i] -= c
        table.append(row)
    return table[: kmax + 1]


def chebyshev_u_explicit(k: int) -> list[int]:
    """U_k(X) = sum_m (-1)^m C(k-m, m) X^(k-2m) as a coefficient list."""
    row = [0] * (k + 1)
    for m in range(k // 2 + 1):
        row[k - 2 * m] = (-1) ** m * comb(k - m, m)
    return row


def chebyshev_u(k: int, s):
    """Evaluate U_k at s (scalar or array) by the three-term recurrence."""
    s = np.asarray(s, dtype=float)
    u_prev, u = np.ones_like(s), s.copy()
    if k == 0:
        return u_prev
    for _ in range(k - 1):
        u_prev, u = u, s * u - u_prev
    return u


def theta_from_moment(p_int: int, n: int, k: int) -> float:
    """sqrt(n) (p_{k+2}(lambda)/n^((k+2)/2) - p_{k+2}(Omega)) / ((k+1)(k+2)) given p_{k+2}(lambda)."""
    j = k + 2
    scaled = float(Fraction(p_int, n ** (j // 2)))
    if j % 2:
        scaled /= math.sqrt(n)
    return math.sqrt(n) * (scaled - lskv_moment(j)) / ((k + 1) * (k + 2))


def deviation_moment(lam: Partition, k: int) -> float:
    """Theta_k = (sqrt(n)/2) * integral of s^k (lambda*(s) - Omega(s)) ds, from exact moments."""
    if k < 0:
        raise ValueError("k must be >= 0")
    n = lam.size
    if n < 1:
        raise ValueError("need a non-empty diagram")
    if k == 0:
        return 0.0
    return theta_from_moment(interlacing_of(lam).moment(k + 2), n, k)


def upsilon_from_thetas(thetas: dict[int, float], k: int) -> float:
    """Upsilon_k = sum_m (-1)^m C(k-m, m) Theta_{k-2m}."""
    return sum((-1) ** m * comb(k - m, m) * thetas[k - 2 * m] for m in range(k // 2 + 1))


def chebyshev_functional(lam: Partition, k: int) -> float:
    """Upsilon_k = (sqrt(n)/2) * integral of U_k(s) (lambda*(s) - Omega(s)) ds."""
    if k < 2:
        raise ValueError("k must be >= 2")
    thetas = {j: deviation_moment(lam, j) for j in range(k + 1)}
    return upsilon_from_thetas(thetas, k)


def limit_process_mean(theta):
    """Deterministic part 1/2 - 2 sin(theta)/pi of the Gelfand limit deviation at s = 2 cos(theta)."""
    theta = np.asarray(theta, dtype=float)
    if np.any((theta < 0) | (theta > math.pi)):
        raise ValueError("theta must lie in [0, pi]")
    out = 0.5 - 2 * np.sin(theta) / math.pi
    return float(out) if out.ndim == 0 else out


def limit_process_mean_series(theta, terms: int):
    """Partial sum (2/pi) sum_{j=1}^{terms} sin((2j+1) theta)/(2j+1)."""
    theta = np.asarray(theta, dtype=float)
    j = np.arange(1, terms + 1)
    odd = 2 * j + 1
    return (2 / math.pi) * np.sum(np.sin(np.multiply.outer(theta, odd)) / odd, axis=-1)


def e_k(k: int) -> int:
    return 1 if k % 2 else 0


def finite_n_moments(measure: str, n: int, k: int) -> tuple[float, float]:
    """Exact mean and variance of X_k = Sigma_k / n^(k/2) at finite n.

    Expands Sigma_k^2 in the Sigma basis and applies the exact expectations, so
    the gap to the limiting law is pure finite-n bias.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    cycle = Partition((k,))
    mean = expectation_sigma_scaled(n, cycle, measure, k / 2)
    second = sum(float(c) * expectation_sigma_scaled(n, mu, measure, k) for mu, c in basis_product(cycle, cycle).terms.items())
    return mean, second - mean * mean


@dataclass(frozen=True)
class CLTTarget:
    name: str
    mean: float
    variance: float
    measure: str


def clt_targets(measure: str, ks: Sequence[int] = (2, 3, 4, 5), upsilons: Sequence[int] = (2, 3, 4, 5)) -> dict[str, CLTTarget]:
    """Limiting laws: X_k ~ N(e_k, 2k) and Upsilon_k ~ N(e_{k+1}/(k+1), 2/(k+1)) under Gelfand;
    X_k ~ N(0, k) and Upsilon_k ~ N(0, 1/(k+1)) under Plancherel."""
    out = {}
    if measure == "gelfand":
        for k in ks:
            out[f"X{k}"] = CLTTarget(f"X{k}", float(e_k(k)), 2.0 * k, measure)
        for k in upsilons:
            out[f"upsilon_{k}"] = CLTTarget(f"upsilon_{k}", e_k(k + 1) / (k + 1), 2.0 / (k + 1), measure)
    elif measure == "plancherel":
        for k in ks:
            out[f"X{k}"] = CLTTarget(f"X{k}", 0.0, float(k), measure)
        for k in upsilons:
            out[f"upsilon_{k}"] = CLTTarget(f"upsilon_{k}", 0.0, 1.0 / (k + 1), measure)
    else:
        raise ValueError(f"unknown measure {measure!r}")
    return out


@dataclass(frozen=True)
class Verdict:
    observable: str
    statistic: str
    estimate: float
    target: float
    std_error: float
    z: float
    passed: bool


def _verdict(name, statistic, estimate, target, se, sigmas=GATE_SIGMAS) -> Verdict:
    z = (estimate - target) / se if se > 0 else math.inf
    return Verdict(name, statistic, float(estimate), float(target), float(se), float(z), abs(z) <= sigmas)


def clt_report(stats: SampleStats, targets: dict[str, CLTTarget], sigmas: float = GATE_SIGMAS) -> list[Verdict]:
    """Mean and variance gates at ``sigmas`` standard errors of the estimators under the limit law.

    SE(mean) = sqrt(v/T) and SE(variance) = v sqrt(2/(T-1)) for a gaussian of variance v.
    """
    T = stats.count
    if T < 100:
        raise ValueError(f"need at least 100 trials, got {T}")
    missing = [name for name in targets if name not in stats.names]
    if missing:
        raise ValueError(f"observables {missing} are not present in the sample statistics")
    rows = []
    for name, tgt in targets.items():
        rows.append(_verdict(name, "mean", stats.mean_of(name), tgt.mean, math.sqrt(tgt.variance / T), sigmas))
        rows.append(
            _verdict(name, "variance", stats.variance_of(name), tgt.variance, tgt.variance * math.sqrt(2 / (T - 1)), sigmas)
        )
    return rows


def covariance_verdict(stats: SampleStats, a: str, b: str, var_a: float, var_b: float, sigmas: float = GATE_SIGMAS) -> Verdict:
    """Gate on a vanishing limiting covariance; SE = sqrt(var_a var_b / T) under independence."""
    se = math.sqrt(var_a * var_b / stats.count)
    return _verdict(f"{a},{b}", "covariance", stats.covariance_of(a, b), 0.0, se, sigmas)


def variance_ratio_verdict(
    numerator: SampleStats, denominator: SampleStats, name: str, target: float = 2.0, sigmas: float = GATE_SIGMAS
) -> Verdict:
    """var_num/var_den against ``target``; relative SE sqrt(2/(T1-1) + 2/(T2-1)) by the delta method."""
    ratio = numerator.variance_of(name) / denominator.variance_of(name)
    rel = math.sqrt(2 / (numerator.count - 1) + 2 / (denominator.count - 1))
    return _verdict(name, "variance_ratio", ratio, target, target * rel, sigmas)


def report_json(rows: Sequence[Verdict]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2)


def report_text(rows: Sequence[Verdict]) -> str:
    lines = [f"{'observable':<14}{'statistic':<16}{'estimate':>11}{'target':>10}{'SE':>10}{'z':>8}  verdict"]
    for r in rows:
        lines.append(
            f"{r.observable:<14}{r.statistic:<16}{r.estimate:>11.4f}{r.target:>10.4f}{r.std_error:>10.4f}{r.z:>8.2f}  "
            + ("pass" if r.passed else "FAIL")
        )
    return "\n".join(lines)
