"""Central characters as partial permutations: products, Kerov degree, set-partition Moebius sums.

Sigma_mu is the sum, over injective labelings a of the boxes of mu, of the partial
permutation whose cycles are (a_{i,1} ... a_{i,mu_i}) with support the image of a.
The class of a partial permutation (sigma, S) is the partition formed by its cycle
lengths on S, supported fixed points counting as parts equal to 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .partition import Partition
from .square_roots import representative

PRODUCT_SIZE_BOUND = 18
SET_PARTITION_MAX = 10


def kerov_degree(mu: Partition) -> int:
    return mu.size + mu.multiplicity(1)


def weight(mu: Partition) -> int:
    return mu.size + mu.length


class SigmaElement:
    """Finite linear combination of central characters with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Partition, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Partition, Fraction] = {}
        for mu, c in items:
            if not isinstance(mu, Partition):
                mu = Partition.of(mu)
            c = Fraction(c)
            total = clean.get(mu, Fraction(0)) + c
            if total:
                clean[mu] = total
            else:
                clean.pop(mu, None)
        self._terms = clean

    @classmethod
    def sigma(cls, *parts: int) -> SigmaElement:
        return cls({Partition.of(parts): 1})

    @property
    def terms(self) -> dict[Partition, Fraction]:
        return dict(self._terms)

    def __getitem__(self, mu) -> Fraction:
        if not isinstance(mu, Partition):
            mu = Partition.of(mu)
        return self._terms.get(mu, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __eq__(self, other):
        if not isinstance(other, SigmaElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "SigmaElement(0)"
        body = " + ".join(f"{c}*S{mu}" for mu, c in sorted(self._terms.items(), key=lambda t: t[0].parts, reverse=True))
        return f"SigmaElement({body})"

    def __add__(self, other: SigmaElement) -> SigmaElement:
        return SigmaElement(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: SigmaElement) -> SigmaElement:
        return self + other.scale(-1)

    def scale(self, c) -> SigmaElement:
        return SigmaElement({mu: v * c for mu, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, SigmaElement):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __pow__(self, m: int) -> SigmaElement:
        if m < 1:
            raise ValueError("only positive powers are supported")
        out = self
        for _ in range(m - 1):
            out = multiply(out, self)
        return out

    def kerov_degree(self) -> int:
        return max((kerov_degree(mu) for mu in self._terms), default=0)

    def weight(self) -> int:
        return max((weight(mu) for mu in self._terms), default=0)

    def to_json(self) -> str:
        return json.dumps(
            {",".join(map(str, mu.parts)): str(c) for mu, c in sorted(self._terms.items(), key=lambda t: t[0].parts, reverse=True)}
        )

    @classmethod
    def from_json(cls, text: str) -> SigmaElement:
        data = json.loads(text)
        return cls({Partition.of(int(v) for v in key.split(",") if v): Fraction(c) for key, c in data.items()})


def _class_of(sigma: list[int], tau: dict[int, int], support: set[int]) -> Partition:
    """Cycle type of sigma o tau restricted to ``support``."""
    seen = set()
    lengths = []
    size = len(sigma)
    for start in support:
        if start in seen:
            continue
        x, length = start, 0
        while x not in seen:
            seen.add(x)
            y = tau.get(x, x)
            x = sigma[y] if y < size else y
            length += 1
        lengths.append(length)
    return Partition.of(lengths)


@lru_cache(maxsize=None)
def basis_product(lam: Partition, mu: Partition) -> SigmaElement:
    """Sigma_lam * Sigma_mu in the Sigma basis.

    Fixes the canonical partial permutation of class ``lam`` on {0..|lam|-1} and
    enumerates labelings of the boxes of ``mu`` up to renaming of the labels
    outside that support (new labels are taken in order of first use). Each such
    pattern contributes 1 to the coefficient of the class of the product; class
    algebra transitivity makes this the structure constant.
    """
    if lam.size + mu.size > PRODUCT_SIZE_BOUND:
        raise ValueError(
            f"product of Sigma{lam} and Sigma{mu} exceeds the enumeration bound {PRODUCT_SIZE_BOUND}"
        )
    sigma = list(representative(lam))
    base = lam.size
    cycles = mu.parts
    slots = [(i, j) for i, length in enumerate(cycles) for j in range(length)]
    counts: dict[Partition, int] = {}
    labels = [0] * len(slots)
    used = [False] * base

    def finish():
        tau: dict[int, int] = {}
        pos = 0
        for length in cycles:
            for j in range(length):
                tau[labels[pos + j]] = labels[pos + (j + 1) % length]
            pos += length
        support = set(range(base)) | set(labels)
        cls = _class_of(sigma, tau, support)
        counts[cls] = counts.get(cls, 0) + 1

    def assign(pos: int, new_count: int):
        if pos == len(slots):
            finish()
            return
        for v in range(base):
            if not used[v]:
                used[v] = True
                labels[pos] = v
                assign(pos + 1, new_count)
                used[v] = False
        labels[pos] = base + new_count
        assign(pos + 1, new_count + 1)

    assign(0, 0)
    return SigmaElement(counts)


def multiply(a: SigmaElement, b: SigmaElement) -> SigmaElement:
    out: dict[Partition, Fraction] = {}
    for lam, ca in a.terms.items():
        for mu, cb in b.terms.items():
            for nu, c in basis_product(lam, mu).terms.items():
                out[nu] = out.get(nu, Fraction(0)) + ca * cb * c
    return SigmaElement(out)


def sigma_product(a: SigmaElement, k: int) -> SigmaElement:
    """a * Sigma_k."""
    if k < 1:
        raise ValueError("cycle length must be >= 1")
    return multiply(a, SigmaElement.sigma(k))


def cyclic_power(k: int, m: int) -> SigmaElement:
    """(Sigma_k)^m by repeated multiplication with Sigma_k."""
    out = SigmaElement.sigma(k)
    for _ in range(m - 1):
        out = sigma_product(out, k)
    return out


def top_kerov_part(e: SigmaElement, degree: int) -> SigmaElement:
    return SigmaElement({mu: c for mu, c in e.terms.items() if kerov_degree(mu) == degree})


def power_top_formula(k: int, m: int) -> SigmaElement:
    """Top Kerov-degree part of (Sigma_k)^m:
    sum_p m!/((m-2p)! p!) (k/2)^p Sigma_{1^{kp} k^{m-2p}}.
    """
    if k < 2 or m < 1:
        raise ValueError("need k >= 2 and m >= 1")
    terms = {}
    for p in range(m // 2 + 1):
        coef = Fraction(math.factorial(m), math.factorial(m - 2 * p) * math.factorial(p)) * Fraction(k, 2) ** p
        if coef.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {coef} for p={p}")
        terms[Partition.from_multiplicities({1: k * p, k: m - 2 * p})] = coef
    return SigmaElement(terms)


@dataclass(frozen=True)
class SetPartition:
    blocks: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def mobius(self) -> int:
        """(-1)^(l-1) (l-1)!, the Moebius value against the one-block partition."""
        ell = len(self.blocks)
        return (-1) ** (ell - 1) * math.factorial(ell - 1)


def set_partitions(r: int) -> list[SetPartition]:
    """All set partitions of {1..r}, via restricted growth strings."""
    if r < 0 or r > SET_PARTITION_MAX:
        raise ValueError(f"r must be in [0, {SET_PARTITION_MAX}], got {r}")
    if r == 0:
        return [SetPartition(())]
    out = []
    rgs = [0] * r

    def rec(i: int, nblocks: int):
        if i == r:
            blocks = [[] for _ in range(nblocks)]
            for elem, b in enumerate(rgs):
                blocks[b].append(elem + 1)
            out.append(SetPartition(tuple(tuple(b) for b in blocks)))
            return
        for b in range(nblocks + 1):
            rgs[i] = b
            rec(i + 1, max(nblocks, b + 1))

    rgs[0] = 0
    rec(1, 1)
    return out


def mobius_identity_check(F: Callable[[int, int], object] | Mapping, multiplicities: Sequence[int]) -> Fraction:
    """sum over set partitions pi of {1..r} of mu(pi) prod_blocks prod_{r_ij >= 1} F(i, r_ij).

    The sequence is r_1 copies of 1, r_2 copies of 2, ...; the sum vanishes
    whenever at least two distinct labels occur.
    """
    if len(multiplicities) < 2:
        raise ValueError("need at least two distinct labels (s >= 2)")
    if any(r < 1 for r in multiplicities):
        raise ValueError("every multiplicity must be >= 1")
    fn = (lambda i, r: F[(i, r)]) if isinstance(F, Mapping) else F
    labels = [i + 1 for i, r in enumerate(multiplicities) for _ in range(r)]
    total = Fraction(0)
    for pi in set_partitions(len(labels)):
        term = Fraction(pi.mobius)
        for block in pi.blocks:
            counts: dict[int, int] = {}
            for elem in block:
                lab = labels[elem - 1]
                counts[lab] = counts.get(lab, 0) + 1
            for lab, rij in counts.items():
                term *= Fraction(fn(lab, rij))
        total += term
    return total


def empirical_cumulant(samples, subset: Sequence[int]) -> float:
    """Plug-in joint cumulant k(X_i : i in subset) from per-trial value vectors.

    ``samples`` has shape (trials, variables). Uses the Moebius expansion over set
    partitions with empirical mixed moments (1/T normalisation).
    """
    data = np.asarray(samples, dtype=float)
    if data.ndim == 1:
        data = data[:, None]
    r = len(subset)
    if not 1 <= r <= 4:
        raise ValueError("joint cumulants are supported for 1 <= r <= 4")
    if data.shape[0] < 2:
        raise ValueError("need at least two trials")
    total = 0.0
    for pi in set_partitions(r):
        term = float(pi.mobius)
        for block in pi.blocks:
            cols = [subset[e - 1] for e in block]
            term *= float(np.mean(np.prod(data[:, cols], axis=1)))
        total += term
    return total
