"""Integer partitions and the exact combinatorics of a single Young diagram."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers.

    Instances are immutable and hashable, so they can be used as dictionary
    keys (measure tables, Sigma-basis coefficients).
    """

    parts: tuple[int, ...] = ()
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        for a, b in zip(parts, parts[1:]):
            if b > a:
                raise ValueError(f"parts of {parts} are not weakly decreasing")
        if parts and parts[-1] < 1:
            raise ValueError(f"parts of {parts} must be positive")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "size", sum(parts))

    @classmethod
    def of(cls, parts: Sequence[int]) -> Partition:
        """Build from any iterable of positive parts, sorting them first."""
        return cls(tuple(sorted((int(p) for p in parts), reverse=True)))

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> Partition:
        parts: list[int] = []
        for i in sorted(mult, reverse=True):
            parts.extend([i] * mult[i])
        return cls(tuple(parts))

    @classmethod
    def from_json(cls, text: str) -> Partition:
        return cls(tuple(json.loads(text)))

    def to_json(self) -> str:
        return json.dumps(list(self.parts))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicity(self, i: int) -> int:
        return self.parts.count(i)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def union(self, other: Partition) -> Partition:
        """Disjoint union of parts (the multiset sum)."""
        return Partition.of(self.parts + other.parts)

    def pad_ones(self, n: int) -> Partition:
        """Pad with fixed points up to size ``n``."""
        if n < self.size:
            raise ValueError(f"cannot pad {self} of size {self.size} to {n}")
        return Partition(self.parts + (1,) * (n - self.size))

    def boxes(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.parts):
            for j in range(row):
                yield i, j

    def hook_lengths(self) -> list[int]:
        conj = self.conjugate().parts
        return [
            (row - j - 1) + (conj[j] - i - 1) + 1
            for i, row in enumerate(self.parts)
            for j in range(row)
        ]


@dataclass(frozen=True)
class InterlacingCoordinates:
    """Minima ``x`` and maxima ``y`` of the rotated profile, x_1 < y_1 < ... < x_s."""

    x: tuple[int, ...]
    y: tuple[int, ...]

    def __post_init__(self):
        if len(self.x) != len(self.y) + 1:
            raise ValueError("need exactly one more minimum than maxima")
        merged = [self.x[0]]
        for a, b in zip(self.y, self.x[1:]):
            merged += [a, b]
        if any(b <= a for a, b in zip(merged, merged[1:])):
            raise ValueError(f"coordinates do not interlace: x={self.x}, y={self.y}")

    @property
    def s(self) -> int:
        return len(self.x)

    def moment(self, k: int) -> int:
        return sum(v**k for v in self.x) - sum(v**k for v in self.y)


def interlacing_of(p: Partition) -> InterlacingCoordinates:
    """Contents of addable boxes (minima) and of removable boxes (maxima).

    A box in row i, column j (both 0-based) has content j - i.
    """
    parts = p.parts
    rows = len(parts)
    maxima = [
        parts[i] - 1 - i
        for i in range(rows)
        if i == rows - 1 or parts[i] > parts[i + 1]
    ]
    minima = []
    for i in range(rows + 1):
        row = parts[i] if i < rows else 0
        if i == 0 or parts[i - 1] > row:
            minima.append(row - i)
    return InterlacingCoordinates(tuple(sorted(minima)), tuple(sorted(maxima)))


def moment_p(p: Partition, k: int) -> int:
    """Interlacing moment p_k = sum x_i^k - sum y_i^k (an exact integer)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return interlacing_of(p).moment(k)


def dim_exact(p: Partition) -> int:
    """Number of standard Young tableaux of shape ``p`` by the hook length formula."""
    return math.factorial(p.size) // math.prod(p.hook_lengths())


def log_dim(p: Partition) -> float:
    return math.lgamma(p.size + 1) - math.fsum(math.log(h) for h in p.hook_lengths())


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    return [Partition(t) for t in _partition_tuples(n, n)]


@lru_cache(maxsize=None)
def _partition_tuples(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partition_tuples(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def falling_factorial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out

