"""Quadrature rules and a golden-section maximizer shared by oracle and harness."""

import functools
import math

import numpy as np
from scipy.special import expit, roots_jacobi

__all__ = ["de_rule", "jacobi_rule", "sphere_rule", "golden_max"]

INV_PHI = (math.sqrt(5) - 1) / 2
DE_HALF_WIDTH = 6.0


@functools.lru_cache(maxsize=64)
def de_rule(n_nodes, half_width=DE_HALF_WIDTH):
    """Tanh-sinh rule on [0, 1] with ``n_nodes`` midpoint-placed nodes.

    Returns ``(x, xc, w)`` where ``xc = 1 - x`` is computed without
    cancellation, so integrands with algebraic endpoint singularities can be
    evaluated from the distance to either end. Doubling ``n_nodes`` halves
    the step.
    """
    h = 2.0 * half_width / n_nodes
    t = -half_width + h * (np.arange(n_nodes) + 0.5)
    u = 0.5 * np.pi * np.sinh(t)
    x = expit(2.0 * u)
    xc = expit(-2.0 * u)
    w = h * np.pi * np.cosh(t) * x * xc
    for arr in (x, xc, w):
        arr.flags.writeable = False
    return x, xc, w


@functools.lru_cache(maxsize=64)
def jacobi_rule(n_nodes, right_exp, left_exp):
    """Gauss-Jacobi rule on [0, 1] for the weight (1 - c)^right_exp c^left_exp."""
    x, w = roots_jacobi(n_nodes, right_exp, left_exp)
    c = 0.5 * (1.0 + x)
    w = w * 0.5 ** (1.0 + right_exp + left_exp)
    c.flags.writeable = False
    w.flags.writeable = False
    return c, w


@functools.lru_cache(maxsize=32)
def sphere_rule(m, n_nodes):
    """Product rule on the unit sphere S^m in R^{m+1}.

    ``n_nodes`` is the per-angle resolution. Returns ``(points, weights)``
    with weights summing to the sphere area. S^1 uses the periodic trapezoid
    rule, higher spheres peel off a polar angle with a Gauss-Jacobi rule.
    """
    if m < 1:
        raise ValueError("sphere_rule needs m >= 1")
    if m == 1:
        phi = 2 * np.pi * (np.arange(n_nodes) + 0.5) / n_nodes
        pts = np.column_stack([np.cos(phi), np.sin(phi)])
        w = np.full(n_nodes, 2 * np.pi / n_nodes)
        return pts, w
    sub_pts, sub_w = sphere_rule(m - 1, n_nodes)
    # t = cos(chi), measure (1 - t^2)^{(m-2)/2} dt on [-1, 1]
    e = 0.5 * (m - 2)
    t, wt = roots_jacobi(n_nodes, e, e)
    r = np.sqrt(1.0 - t * t)
    pts = np.concatenate(
        [np.column_stack([ri * sub_pts, np.full(len(sub_pts), ti)]) for ti, ri in zip(t, r)]
    )
    w = np.concatenate([wi * sub_w for wi in wt])
    return pts, w


def golden_max(f, a, b, tol):
    """Maximize a unimodal ``f`` on [a, b]; returns ``(x, f(x))``."""
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)
