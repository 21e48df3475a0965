"""Truncated power series, generating functions, free cumulants and transition measures.

A series is a plain list ``a`` with ``a[i]`` the coefficient of ``w**i``. Coefficients
are ``Fraction`` for exact work and ``float`` for continuous diagrams whose moments
are irrational; the arithmetic below is agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .diagrams import ContinuousDiagram, LSKVDiagram
from .partition import Partition, interlacing_of

DEFAULT_ORDER = 12


def mul(a: list, b: list, order: int) -> list:
    """Product truncated to ``order`` terms (degrees 0..order-1)."""
    out = [0] * order
    for i, ai in enumerate(a[:order]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: order - i]):
            out[i + j] += ai * bj
    return out


def inverse(a: list, order: int) -> list:
    """Multiplicative inverse of a series with invertible constant term."""
    if a[0] == 0:
        raise ZeroDivisionError("series has zero constant term")
    one = Fraction(1) if isinstance(a[0], (int, Fraction)) else 1.0
    inv0 = one / a[0]
    out = [inv0] + [0] * (order - 1)
    for n in range(1, order):
        acc = sum(a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1))
        out[n] = -acc * inv0
    return out


def power(a: list, m: int, order: int) -> list:
    if m < 0:
        return power(inverse(a, order), -m, order)
    out = [Fraction(1)] + [0] * (order - 1)
    base = a[:order]
    while m:
        if m & 1:
            out = mul(out, base, order)
        m >>= 1
        if m:
            base = mul(base, base, order)
    return out


def exp(a: list, order: int) -> list:
    """exp of a series with zero constant term, via f' = a' f."""
    if a and a[0] != 0:
        raise ValueError("exp needs a zero constant term")
    out = [Fraction(1)] + [0] * (order - 1)
    for n in range(1, order):
        out[n] = sum(k * a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1)) / n
    return out


def reversion_coefficients(m: list, order: int) -> list:
    """Compositional inverse h of g(w) = w * m(w), with m(0) = 1.

    Lagrange inversion: [u^k] h = (1/k) [w^(k-1)] m(w)^(-k). Returns
    h[0..order-1] with h[0] = 0, h[1] = 1.
    """
    if m[0] != 1:
        raise ValueError("reversion needs m(0) = 1")
    h = [0] * order
    inv = inverse(m, order)
    pw = [Fraction(1)] + [0] * (order - 1)
    for k in range(1, order):
        pw = mul(pw, inv, order)
        h[k] = pw[k - 1] / k
    return h


def generating_function_series(d, order: int = DEFAULT_ORDER) -> list:
    """Coefficients of z^-1, ..., z^-order in G(z).

    Partitions use the rational product form prod(z - y_i) / prod(z - x_i);
    continuous diagrams use the exponential form (1/z) exp(sum p_k/k z^-k).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if isinstance(d, Partition):
        ic = interlacing_of(d)
        num = [Fraction(1)] + [0] * (order - 1)
        for y in ic.y:
            num = mul(num, [Fraction(1), Fraction(-y)], order)
        den = [Fraction(1)] + [0] * (order - 1)
        for x in ic.x:
            den = mul(den, [Fraction(1), Fraction(-x)], order)
        return mul(num, inverse(den, order), order)
    if isinstance(d, ContinuousDiagram):
        return generating_function_from_moments([d.moment(k) for k in range(1, order)], order)
    raise TypeError(f"cannot build a generating function for {type(d).__name__}")


def generating_function_from_moments(p: list, order: int) -> list:
    """(1/z) exp(sum_k p_k/k z^-k), given p = [p_1, p_2, ...]."""
    log_series = [0] + [_div(p[k - 1], k) for k in range(1, order)]
    return exp(log_series, order)


def _div(v, k):
    return Fraction(v, k) if isinstance(v, int) else v / k


def free_cumulants(d, kmax: int, order: int | None = None) -> dict[int, object]:
    """Free cumulants R_2..R_kmax by Lagrange inversion of G.

    ``order`` is the truncation order of the generating function series; it
    must be at least kmax + 1.
    """
    if kmax < 2:
        raise ValueError("kmax must be >= 2")
    if order is None:
        order = max(DEFAULT_ORDER, kmax + 1)
    if order < kmax + 1:
        raise ValueError(f"series order {order} too small for kmax={kmax} (need {kmax + 1})")
    g = generating_function_series(d, order)
    return _free_cumulants_from_gseries(g, kmax)


def _free_cumulants_from_gseries(g: list, kmax: int) -> dict[int, object]:
    # g[i] is the coefficient of z^-(i+1), i.e. the i-th moment of the transition measure
    moments = g[: kmax + 1]
    h = reversion_coefficients(moments, kmax + 2)
    shifted = h[1 : kmax + 2]  # h(u)/u
    r = inverse(shifted, kmax + 1)  # u / h(u) = 1 + sum R_k u^k
    if isinstance(r[1], Fraction):
        if r[1] != 0:
            raise ArithmeticError(f"first free cumulant should vanish, got {r[1]}")
    return {k: r[k] for k in range(2, kmax + 1)}


def free_cumulants_from_moments(moments: list, kmax: int) -> dict[int, object]:
    """Free cumulants of a probability measure from its moments m_0 = 1, m_1, ...

    Uses the noncrossing moment-cumulant recursion
    m_n = sum_{s=1}^{n} kappa_s [w^(n-s)] M(w)^s, independent of series reversion.
    Returns kappa_1..kappa_kmax.
    """
    if moments[0] != 1:
        raise ValueError("m_0 must be 1")
    order = kmax + 1
    m = list(moments[:order]) + [0] * max(0, order - len(moments))
    powers = [None, m[:]]
    for s in range(2, order):
        powers.append(mul(powers[-1], m, order))
    kappa: dict[int, object] = {}
    for n in range(1, order):
        acc = m[n]
        for s in range(1, n):
            acc -= kappa[s] * powers[s][n - s]
        kappa[n] = acc
    return kappa


@dataclass(frozen=True)
class TransitionMeasure:
    """Atomic probability measure, or the semicircle law when ``kind == 'semicircle'``."""

    atoms: tuple[tuple[Fraction, Fraction], ...] = ()
    kind: str = "atomic"

    def total_mass(self):
        if self.kind == "semicircle":
            return 1
        return sum(w for _, w in self.atoms)

    def moment(self, k: int):
        if self.kind == "semicircle":
            return comb(k, k // 2) // (k // 2 + 1) if k % 2 == 0 else 0
        return sum(w * x**k for x, w in self.atoms)

    def moments(self, kmax: int) -> list:
        return [self.moment(k) for k in range(kmax + 1)]

    def free_cumulants(self, kmax: int) -> dict[int, object]:
        return free_cumulants_from_moments(self.moments(kmax), kmax)


SEMICIRCLE = TransitionMeasure(kind="semicircle")


def transition_measure(d) -> TransitionMeasure:
    """Partial fractions of G_lambda: weight at x_i is prod_j (x_i - y_j) / prod_{j != i} (x_i - x_j)."""
    if isinstance(d, LSKVDiagram):
        return SEMICIRCLE
    ic = interlacing_of(d)
    atoms = []
    for i, xi in enumerate(ic.x):
        num = Fraction(1)
        for y in ic.y:
            num *= xi - y
        den = 1
        for j, xj in enumerate(ic.x):
            if j != i:
                den *= xi - xj
        atoms.append((Fraction(xi), num / den))
    return TransitionMeasure(tuple(atoms))
