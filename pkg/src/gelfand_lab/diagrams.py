"""Continuous Young diagrams: rescaled partition profiles and the LSKV curve."""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from math import comb, isqrt

import numpy as np

from .partition import Partition, interlacing_of


class ContinuousDiagram:
    """A 1-Lipschitz profile equal to |s| outside a compact support."""

    def __call__(self, s):
        raise NotImplementedError

    @property
    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    def breakpoints(self) -> np.ndarray:
        raise NotImplementedError

    def moment(self, k: int):
        raise NotImplementedError

    def area(self) -> float:
        raise NotImplementedError

    def charge(self, s):
        """sigma(s) = (omega(s) - |s|) / 2."""
        s = np.asarray(s, dtype=float)
        return (self(s) - np.abs(s)) / 2


def _exact_sqrt(t: Fraction) -> Fraction | None:
    num, den = isqrt(t.numerator), isqrt(t.denominator)
    if num * num == t.numerator and den * den == t.denominator:
        return Fraction(num, den)
    return None


class PiecewiseLinearDiagram(ContinuousDiagram):
    """Profile with slope -1 left of its first minimum and alternating slopes at
    the interlacing minima/maxima.

    Coordinates are kept exact (``Fraction``) whenever the scaling factor has a
    rational square root, otherwise they are floats.
    """

    def __init__(self, minima, maxima):
        if len(minima) != len(maxima) + 1:
            raise ValueError("need exactly one more minimum than maxima")
        self.minima = tuple(minima)
        self.maxima = tuple(maxima)
        knots = [self.minima[0]]
        for a, b in zip(self.maxima, self.minima[1:]):
            knots += [a, b]
        if any(b <= a for a, b in zip(knots, knots[1:])):
            raise ValueError("minima and maxima do not interlace")
        self._knots = knots
        # profile value at each knot, walking right from omega(x_1) = |x_1|
        values = [abs(knots[0])]
        for i in range(1, len(knots)):
            slope = 1 if i % 2 == 1 else -1
            values.append(values[-1] + slope * (knots[i] - knots[i - 1]))
        self._values = values
        self._s = np.array([float(v) for v in knots])
        self._w = np.array([float(v) for v in values])

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        inside = np.interp(s, self._s, self._w)
        outside = (s <= self._s[0]) | (s >= self._s[-1])
        return np.where(outside, np.abs(s), inside)

    @property
    def support(self):
        return float(self.minima[0]), float(self.minima[-1])

    def breakpoints(self):
        return self._s.copy()

    def knots(self) -> list[tuple]:
        """Exact (s, omega(s)) breakpoints."""
        return list(zip(self._knots, self._values))

    def moment(self, k: int):
        """p_k as the integral of s^k against the second derivative of the charge.

        The charge has point masses +1 at minima, -1 at maxima, and -1 at 0
        (from the kink of |s|), so the k = 0 moment is 0 as it should be.
        """
        if k < 0:
            raise ValueError("k must be >= 0")
        total = sum(v**k for v in self.minima) - sum(v**k for v in self.maxima)
        return total - (1 if k == 0 else 0)

    def area(self):
        # integrate omega - |s| exactly over [x_1, x_s] using the knots plus 0
        pts = sorted(set(self._knots) | {0})
        total = 0
        for a, b in zip(pts, pts[1:]):
            fa = self._value_at(a) - abs(a)
            fb = self._value_at(b) - abs(b)
            total += (fa + fb) * (b - a) / 2
        return total

    def _value_at(self, s):
        ks = self._knots
        if s <= ks[0] or s >= ks[-1]:
            return abs(s)
        for i in range(1, len(ks)):
            if s <= ks[i]:
                slope = 1 if i % 2 == 1 else -1
                return self._values[i - 1] + slope * (s - ks[i - 1])
        raise AssertionError("unreachable")


class LSKVDiagram(ContinuousDiagram):
    """The limit shape Omega(s) = (2/pi)(s arcsin(s/2) + sqrt(4 - s^2)) on [-2, 2]."""

    def __call__(self, s):
        return lskv_profile(s)

    @property
    def support(self):
        return -2.0, 2.0

    def breakpoints(self):
        return np.array([-2.0, 2.0])

    def moment(self, k: int):
        return lskv_moment(k)

    def area(self):
        return 2.0


OMEGA = LSKVDiagram()


def lskv_profile(s):
    """Omega(s); accepts scalars or arrays."""
    arr = np.asarray(s, dtype=float)
    a = np.abs(arr)
    inner = np.clip(arr, -2.0, 2.0)
    closed = (2 / np.pi) * (inner * np.arcsin(inner / 2) + np.sqrt(np.maximum(4 - inner**2, 0.0)))
    out = np.where(a >= 2, a, closed)
    if np.ndim(s) == 0:
        return float(out)
    return out


def lskv_moment(k: int) -> int:
    """p_k(Omega): binomial(k, k/2) for even k, 0 for odd k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 0
    return comb(k, k // 2) if k % 2 == 0 else 0


def rescale(p: Partition, t) -> PiecewiseLinearDiagram:
    """omega^t(s) = omega(sqrt(t) s) / sqrt(t) for the profile of ``p``."""
    if t <= 0:
        raise ValueError(f"scale must be positive, got {t}")
    ic = interlacing_of(p)
    root = _exact_sqrt(Fraction(t)) if not isinstance(t, float) else None
    if root is None:
        root = math.sqrt(t)
        return PiecewiseLinearDiagram([v / root for v in ic.x], [v / root for v in ic.y])
    return PiecewiseLinearDiagram([Fraction(v) / root for v in ic.x], [Fraction(v) / root for v in ic.y])


def normalized(p: Partition) -> PiecewiseLinearDiagram:
    """lambda*, the diagram rescaled by its own size (area 2)."""
    return rescale(p, max(p.size, 1))


def sup_distance_with_bound(d: ContinuousDiagram, reference: ContinuousDiagram, step: float = 1e-3):
    """Return (sup |d - reference|, grid error bound).

    Evaluated on both diagrams' breakpoints plus a uniform grid over the joint
    support. The difference of two 1-Lipschitz profiles is 2-Lipschitz.
    """
    a = min(d.support[0], reference.support[0])
    b = max(d.support[1], reference.support[1])
    grid = np.arange(a, b + step, step)
    pts = np.concatenate([grid, d.breakpoints(), reference.breakpoints(), [0.0]])
    value = float(np.max(np.abs(d(pts) - reference(pts))))
    return value, 2 * step


def sup_distance(d: ContinuousDiagram, reference: ContinuousDiagram, step: float = 1e-3) -> float:
    return sup_distance_with_bound(d, reference, step)[0]


def profile_rows(d: ContinuousDiagram, step: float = 1e-2, pad: float = 0.5) -> list[tuple[float, float]]:
    a, b = d.support
    grid = np.arange(a - pad, b + pad + step / 2, step)
    s = np.unique(np.concatenate([grid, d.breakpoints()]))
    return list(zip(s.tolist(), np.asarray(d(s)).tolist()))


def profile_csv(d: ContinuousDiagram, step: float = 1e-2) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["s", "omega_s"])
    for s, v in profile_rows(d, step):
        w.writerow([repr(s), repr(v)])
    return buf.getvalue()
