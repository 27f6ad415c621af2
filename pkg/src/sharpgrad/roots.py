"""Thresholds in alpha that separate the closed-form branches."""

import math
from dataclasses import dataclass

from .errors import NumericFailure, OutOfRegime
from .specialfn import gamma_ratio

__all__ = [
    "ThresholdPair",
    "AlphaRoot",
    "thm1_thresholds",
    "thm3_thresholds",
    "alpha_root_sides",
    "alpha_root",
    "root_table",
]


@dataclass(frozen=True)
class ThresholdPair:
    alpha1: float
    alpha2: float


@dataclass(frozen=True)
class AlphaRoot:
    n: int
    beta: float
    value: float
    residual: float


def thm1_thresholds(beta):
    """Endpoints of the p = 1 middle branch.

    alpha1 = s/(s+1), alpha2 = s/(s-1) with s = sqrt(1 + beta).
    """
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    s = math.sqrt(1.0 + beta)
    # s - 1 = beta / (s + 1) avoids cancellation for tiny beta
    return ThresholdPair(s / (s + 1.0), s * (s + 1.0) / beta)


def thm3_thresholds(n, beta):
    """Roots of the quadratic deciding between the two p = 2 integrals."""
    if beta < n - 1:
        raise OutOfRegime(f"p = 2 thresholds need beta >= n - 1 = {n - 1}, got {beta!r}")
    a = (beta + 1) * (2 * beta + 1 - n)
    disc = math.sqrt(max(a * (beta + 1 - n), 0.0))
    den = 2 * beta * (beta + 1)
    return ThresholdPair((a - disc) / den, (a + disc) / den)


def alpha_root_sides(n, beta):
    """The decreasing and increasing sides of the threshold equation in alpha.

    Returns two callables ``lhs(alpha)`` and ``rhs(alpha)``.
    """
    ratio = gamma_ratio((beta - n) / 2 + 1, (beta - n + 1) / 2)
    scale = 2.0 * ratio / math.sqrt(math.pi)

    def lhs(alpha):
        return scale / (beta * (alpha - 1) + n - 1)

    def rhs(alpha):
        d = alpha - 1
        return d / (1 + math.sqrt(1 + d * d))

    return lhs, rhs


def alpha_root(n, beta, tol=1e-12):
    """Unique alpha > 1 where the large-alpha p = inf formula starts to hold.

    Bisection down to a 1e-8 bracket, then secant steps kept inside the
    bracket until |lhs - rhs| <= tol.
    """
    if not beta > n - 1:
        raise OutOfRegime(f"alpha root needs beta > n - 1 = {n - 1}, got {beta!r}")
    lhs, rhs = alpha_root_sides(n, beta)

    def h(a):
        return lhs(a) - rhs(a)

    lo, hi = 1.0 + 1e-9, 4.0
    while h(hi) > 0:
        hi = 1.0 + 2.0 * (hi - 1.0)
        if hi > 1e6:
            raise NumericFailure(f"no sign change for alpha root up to 1e6 (n={n}, beta={beta})")
    hlo, hhi = h(lo), h(hi)
    if hlo <= 0:
        raise NumericFailure(f"alpha root bracket has no sign change (n={n}, beta={beta})")

    while hi - lo > 1e-8:
        mid = 0.5 * (lo + hi)
        hm = h(mid)
        if hm > 0:
            lo, hlo = mid, hm
        else:
            hi, hhi = mid, hm

    a0, h0, a1, h1 = lo, hlo, hi, hhi
    best = min(((lo, hlo), (hi, hhi)), key=lambda t: abs(t[1]))
    for _ in range(60):
        if abs(best[1]) <= tol or h1 == h0:
            break
        a2 = a1 - h1 * (a1 - a0) / (h1 - h0)
        if not lo <= a2 <= hi:
            a2 = 0.5 * (lo + hi)
        h2 = h(a2)
        if h2 > 0:
            lo = a2
        else:
            hi = a2
        if abs(h2) < abs(best[1]):
            best = (a2, h2)
        a0, h0, a1, h1 = a1, h1, a2, h2

    if abs(best[1]) > tol:
        raise NumericFailure(f"alpha root residual {best[1]:.3g} above {tol:g}")
    return AlphaRoot(n, beta, best[0], best[1])


def root_table(ns=(3, 4, 5, 6), steps=6):
    """alpha_n(beta) for beta = n - 1/2, n, ..., in half steps; list of (n, beta, AlphaRoot)."""
    rows = []
    for n in ns:
        for j in range(steps):
            beta = n - 0.5 + 0.5 * j
            rows.append((n, beta, alpha_root(n, beta)))
    return rows
