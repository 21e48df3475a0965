"""Involution counts and the number of square roots of a permutation."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .partition import Partition

BRUTE_FORCE_MAX_N = 9
EXACT_RATIO_MAX_N = 2000


class InvolutionCounter:
    """Cache of I_0..I_N (exact) plus the ratio table r_n = I_{n-1}/I_n as floats.

    Ratios are exact-big-int divisions up to ``EXACT_RATIO_MAX_N`` and follow
    the contracting recurrence 1/r_n = 1 + (n - 1) r_{n-1} beyond it.
    """

    def __init__(self, nmax: int = 0):
        self._counts = [1, 1]
        self._ratios = [1.0, 1.0]
        self.extend(nmax)

    def extend(self, nmax: int) -> None:
        counts = self._counts
        while len(counts) <= min(nmax, EXACT_RATIO_MAX_N):
            n = len(counts)
            counts.append(counts[n - 1] + (n - 1) * counts[n - 2])
        ratios = self._ratios
        while len(ratios) <= nmax:
            n = len(ratios)
            if n <= EXACT_RATIO_MAX_N:
                ratios.append(counts[n - 1] / counts[n])
            else:
                ratios.append(1.0 / (1.0 + (n - 1) * ratios[n - 1]))

    def count(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be >= 0")
        if n >= len(self._counts):
            counts = self._counts
            while len(counts) <= n:
                m = len(counts)
                counts.append(counts[m - 1] + (m - 1) * counts[m - 2])
        return self._counts[n]

    def ratio(self, n: int) -> float:
        """I_{n-1} / I_n, the probability that the top element is a fixed point."""
        if n >= len(self._ratios):
            self.extend(n)
        return self._ratios[n]

    def ratios(self, nmax: int) -> list[float]:
        self.extend(nmax)
        return self._ratios[: nmax + 1]


_COUNTER = InvolutionCounter(64)


def involution_count(n: int) -> int:
    """I_n by the two-term recurrence I_n = I_{n-1} + (n - 1) I_{n-2}."""
    return _COUNTER.count(n)


def involution_count_closed(n: int) -> int:
    """I_n as the sum over k of n! / (k! (n-2k)! 2^k)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum(
        math.factorial(n) // (math.factorial(k) * math.factorial(n - 2 * k) * 2**k)
        for k in range(n // 2 + 1)
    )


def log_involution_count_estimate(n: int) -> float:
    """log of (n/e)^(n/2) e^(sqrt(n) - 1/4) / sqrt(2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 0.5 * n * (math.log(n) - 1) + math.sqrt(n) - 0.25 - 0.5 * math.log(2)


def involution_count_estimate(n: int) -> float:
    """Saddle-point estimate of I_n; overflows to ``inf`` for very large n, use the log form there."""
    try:
        return math.exp(log_involution_count_estimate(n))
    except OverflowError:
        return math.inf


def estimate_relative_error(n: int) -> float:
    """|estimate / I_n - 1| computed in log space."""
    exact = involution_count(n)
    log_exact = math.log(exact) if exact < 2**1000 else _log_bigint(exact)
    return abs(math.expm1(log_involution_count_estimate(n) - log_exact))


def _log_bigint(v: int) -> float:
    shift = max(v.bit_length() - 900, 0)
    return math.log(v >> shift) + shift * math.log(2)


def f_factor(i: int, m: int) -> int:
    """Number of ways m cycles of length i in sigma arise in a square root tau."""
    if i < 1 or m < 0:
        raise ValueError(f"need i >= 1 and m >= 0, got i={i}, m={m}")
    half = Fraction(i, 2)
    if i % 2 == 0:
        if m % 2 == 1:
            return 0
        value = Fraction(math.factorial(m), math.factorial(m // 2)) * half ** (m // 2)
    else:
        value = sum(
            Fraction(math.factorial(m), math.factorial(m - 2 * k) * math.factorial(k)) * half**k
            for k in range(m // 2 + 1)
        )
    if value.denominator != 1:
        raise ArithmeticError(f"f({i},{m}) = {value} is not an integer")
    return int(value)


def square_root_count(t: Partition) -> int:
    """card{tau : tau^2 = sigma} for sigma of cycle type ``t``: prod_i f(i, m_i)."""
    out = 1
    for i, m in t.multiplicities().items():
        out *= f_factor(i, m)
        if out == 0:
            break
    return out


def is_square_type(t: Partition) -> bool:
    return all(m % 2 == 0 for i, m in t.multiplicities().items() if i % 2 == 0)


def class_size(t: Partition) -> int:
    """Number of permutations of S_|t| with cycle type ``t``."""
    z = 1
    for i, m in t.multiplicities().items():
        z *= i**m * math.factorial(m)
    return math.factorial(t.size) // z


def representative(t: Partition) -> tuple[int, ...]:
    """A permutation word (0-based images) with cycle type ``t``."""
    word = list(range(t.size))
    start = 0
    for length in t.parts:
        for j in range(length):
            word[start + j] = start + (j + 1) % length
        start += length
    return tuple(word)


def cycle_type(word: Sequence[int]) -> Partition:
    n = len(word)
    seen = [False] * n
    lengths = []
    for i in range(n):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = word[j]
            length += 1
        lengths.append(length)
    return Partition.of(lengths)


def brute_force_square_roots(sigma: Sequence[int]) -> int:
    """Count tau in S_n with tau o tau = sigma by exhaustive search (test oracle).

    ``sigma`` is a 0-based permutation word.
    """
    n = len(sigma)
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma is not a permutation word")
    target = tuple(sigma)
    return sum(1 for tau in itertools.permutations(range(n)) if tuple(tau[tau[i]] for i in range(n)) == target)
