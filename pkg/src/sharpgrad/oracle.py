"""Quadrature and supremum search for C_{alpha,beta,p}, independent of the closed forms.

Finite p > 1 and p = inf go through the reduced double integral

    C = |k| beta omega_{n-2}^{1/q'} sup_{gamma >= 0} (1 + gamma^2)^{-1/2}
        [ int_0^pi dphi int_0^{pi/2} |G|^q cos^lam(theta) sin^{n-2}(theta) sin^{n-3}(phi) dtheta ]^{1/q'}

with G = cos^2 theta - alpha + gamma cos theta sin theta cos phi, q = p/(p-1),
lam = ((beta - n) p + n)/(p - 1), and 1/q' = (p-1)/p (both 1 at p = inf).
The search runs over psi = arctan(gamma) in [0, pi/2]; dividing G by
sqrt(1 + gamma^2) gives the integrand at psi = pi/2 as a plain limit.

G vanishes where cos(2 theta - delta) = (2 alpha - 1) cos psi / R, so the
theta integral is split exactly at its sign changes and every piece is
integrated with a tanh-sinh rule, which also absorbs the cos^lam endpoint
singularity at theta = pi/2.

:func:`sphere_direct` is a second route that evaluates the hemisphere
integral with the full dot product in R^n on a Gauss-Jacobi x product grid,
without the reduction or the splitting.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import InvalidParams, NumericFailure
from .model import Branch, Method, NormIndex, SharpConstant, validate
from .quadrature import de_rule, golden_max, jacobi_rule, sphere_rule
from .specialfn import sphere_area

__all__ = [
    "QuadratureSpec",
    "ObjectiveSample",
    "profile_p1",
    "theta_sign_changes",
    "objective_finite_p",
    "objective_pinf",
    "objective",
    "supremum_over_gamma",
    "direction_constant",
    "sphere_direct",
    "numeric_constant",
]

HALF_PI = 0.5 * np.pi
# relative round-off floor added to every reported error estimate
ROUNDOFF = 1e-13


@dataclass(frozen=True)
class QuadratureSpec:
    """Resolution and tolerance settings for the numeric oracles.

    ``theta_panels`` and ``phi_panels`` are node counts of the tanh-sinh rule
    on each sub-interval between sign changes (theta) or between the critical
    angles (phi). A result is accepted when doubling both changes it by less
    than ``target_tol``.
    """

    theta_panels: int = 64
    phi_panels: int = 64
    gamma_grid: int = 129
    refine_tol: float = 1e-10
    target_tol: float = 1e-8

    def __post_init__(self):
        for name in ("theta_panels", "phi_panels", "gamma_grid"):
            if getattr(self, name) < 8:
                raise ValueError(f"{name} must be >= 8")
        if not (self.refine_tol > 0 and self.target_tol > 0):
            raise ValueError("refine_tol and target_tol must be positive")

    @classmethod
    def default_for(cls, p):
        p = NormIndex.parse(p)
        return cls(target_tol=1e-6) if p.is_inf else cls()

    def doubled(self):
        return QuadratureSpec(
            2 * self.theta_panels, 2 * self.phi_panels, self.gamma_grid, self.refine_tol, self.target_tol
        )


@dataclass(frozen=True)
class ObjectiveSample:
    gamma: float
    value: float
    est_error: float = 0.0


def _spec_for(p, spec):
    return QuadratureSpec.default_for(p) if spec is None else spec


def _profile(alpha, beta, t):
    return np.sqrt(alpha * alpha + (1 - 2 * alpha) * t * t) * t**beta


def profile_p1(params):
    """Maximize (alpha^2 + (1 - 2 alpha) t^2)^{1/2} t^beta over t in [0, 1].

    Dense grid of 10^4 points, then golden-section refinement to 1e-12 in t.
    Returns ``(t_star, SharpConstant)``.
    """
    validate(params, 1)
    a, b = params.alpha, params.beta
    grid = np.linspace(0.0, 1.0, 10_001)
    vals = _profile(a, b, grid)
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    t, v = golden_max(lambda s: float(_profile(a, b, s)), lo, hi, 1e-12)
    if vals[i] > v:
        t, v = float(grid[i]), float(vals[i])
    const = SharpConstant(
        abs(params.k) * b * v, Method.NUMERIC, Branch.NUMERIC_ONLY, est_error=0.0, extra={"t_star": t}
    )
    return t, const


def theta_sign_changes(alpha, psi, phi):
    """Interior zeros in (0, pi/2) of G(phi, theta; alpha, tan psi) / sqrt(1 + tan^2 psi).

    ``phi`` is an array; returns an array of shape ``phi.shape + (2,)`` with
    missing zeros filled by pi/2, sorted along the last axis.
    """
    phi = np.asarray(phi, dtype=float)
    cpsi, spsi = math.cos(psi), math.sin(psi)
    if psi >= HALF_PI:
        cpsi, spsi = 0.0, 1.0
    cphi = np.cos(phi)
    # G = (1/2 - alpha) cos psi + (R/2) cos(2 theta - delta)
    big_r = np.hypot(cpsi, spsi * cphi)
    safe_r = np.where(big_r > 0, big_r, 1.0)
    rho = np.where(big_r > 0, (2 * alpha - 1) * cpsi / safe_r, 2.0)
    delta = np.arctan2(spsi * cphi, cpsi)
    ok = np.abs(rho) <= 1
    acos = np.arccos(np.clip(rho, -1, 1))
    out = []
    for m in (-1, 0, 1):
        for s in (-1, 1):
            th = 0.5 * (delta + s * acos + 2 * np.pi * m)
            out.append(np.where(ok & (th > 0) & (th < HALF_PI), th, HALF_PI))
    return np.sort(np.stack(out, axis=-1), axis=-1)[..., :2]


def _phi_breaks(alpha, psi):
    """Angles where the number of theta sign changes can jump."""
    br = {0.0, HALF_PI, np.pi}
    if alpha > 1 and 0 < psi < HALF_PI:
        ct = 2 * math.sqrt(alpha * (alpha - 1)) / math.tan(psi)
        if ct < 1:
            br.update((math.acos(ct), math.acos(-ct)))
    return sorted(br)


def _exponents(params, p):
    n, beta = params.n, params.beta
    if p.is_inf:
        q, lam = 1.0, beta - n
    else:
        q = p.p / (p.p - 1)
        lam = ((beta - n) * p.p + n) / (p.p - 1)
    if not lam > -1:
        raise InvalidParams("beta", f"theta weight exponent {lam:.6g} is not integrable")
    return q, lam


def _double_integral(params, q, lam, psi, n_theta, n_phi):
    """int_0^pi int_0^{pi/2} |G_psi|^q cos^lam sin^{n-2} sin^{n-3}(phi) dtheta dphi."""
    n, alpha = params.n, params.alpha
    if psi >= HALF_PI:
        cpsi, spsi = 0.0, 1.0
    else:
        cpsi, spsi = math.cos(psi), math.sin(psi)
    xt, xct, wt = de_rule(n_theta)
    xp, _, wp = de_rule(n_phi)
    breaks = _phi_breaks(alpha, psi)
    total = 0.0
    for a, b in zip(breaks[:-1], breaks[1:]):
        phi = a + (b - a) * xp
        cphi = np.cos(phi)[:, None]
        zeros = theta_sign_changes(alpha, psi, phi)
        edges = np.concatenate(
            [np.zeros((len(phi), 1)), zeros, np.full((len(phi), 1), HALF_PI)], axis=1
        )
        inner = np.zeros(len(phi))
        for j in range(3):
            lo, hi = edges[:, j : j + 1], edges[:, j + 1 : j + 2]
            span = hi - lo
            live = span[:, 0] > 0
            if not live.any():
                continue
            lo, hi, span = lo[live], hi[live], span[live]
            theta = lo + span * xt
            # distance to pi/2 from the right end keeps cos accurate near the singular end
            c = np.sin((HALF_PI - hi) + span * xct)
            s = np.sin(theta)
            g = (c * c - alpha) * cpsi + spsi * c * s * cphi[live]
            f = np.abs(g) ** q * c**lam * s ** (n - 2)
            inner[live] += (f * wt).sum(axis=1) * span[:, 0]
        total += (b - a) * float((inner * np.sin(phi) ** (n - 3) * wp).sum())
    return total


def _raw_objective(params, p, psi, n_theta, n_phi):
    q, lam = _exponents(params, p)
    integral = _double_integral(params, q, lam, psi, n_theta, n_phi)
    w = sphere_area(params.n - 2).value
    scale = abs(params.k) * params.beta
    if p.is_inf:
        return scale * w * integral
    frac = (p.p - 1) / p.p
    return scale * (w * integral) ** frac


def _checked(params, p, psi, spec):
    """Objective at psi with the doubling self-check; returns (value, est_error)."""
    cur = spec
    val = _raw_objective(params, p, psi, cur.theta_panels, cur.phi_panels)
    for _ in range(3):
        nxt = cur.doubled()
        val2 = _raw_objective(params, p, psi, nxt.theta_panels, nxt.phi_panels)
        err = abs(val2 - val)
        if err < spec.target_tol:
            return val2, err + ROUNDOFF * abs(val2)
        cur, val = nxt, val2
    raise NumericFailure(
        f"objective did not converge at psi={psi:.6g}: last change {err:.3g} > {spec.target_tol:g}"
    )


def _psi(gamma):
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma!r}")
    return HALF_PI if math.isinf(gamma) else math.atan(gamma)


def objective(params, p, gamma, spec=None):
    """The gamma-objective for any p > 1 (finite or inf)."""
    p = validate(params, p)
    if p.p == 1:
        raise ValueError("p = 1 has no gamma objective; use profile_p1")
    spec = _spec_for(p, spec)
    val, err = _checked(params, p, _psi(gamma), spec)
    return ObjectiveSample(gamma, val, err)


def objective_finite_p(params, p, gamma, spec=None):
    """Objective for 1 < p < inf at tangential ratio ``gamma`` (inf allowed)."""
    p = NormIndex.parse(p)
    if p.is_inf or p.p <= 1:
        raise ValueError(f"objective_finite_p needs 1 < p < inf, got {p}")
    return objective(params, p, gamma, spec)


def objective_pinf(params, gamma, spec=None):
    """Objective for p = inf; the theta integral is split on the zero curve of G."""
    return objective(params, math.inf, gamma, spec)


def supremum_over_gamma(params, p, spec=None):
    """sup over gamma >= 0 of the objective.

    Coarse scan on psi = arctan(gamma) over [0, pi/2] including both ends,
    golden-section refinement around the best node, then a self-checked
    evaluation at the maximizer. Returns ``(SharpConstant, gamma_star)``.
    """
    p = validate(params, p)
    if p.p == 1:
        raise ValueError("p = 1 uses profile_p1")
    spec = _spec_for(p, spec)
    nt, nph = spec.theta_panels, spec.phi_panels

    def f(psi):
        return _raw_objective(params, p, psi, nt, nph)

    grid = np.linspace(0.0, HALF_PI, spec.gamma_grid)
    vals = np.array([f(s) for s in grid])
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    psi_star, v_star = golden_max(f, lo, hi, spec.refine_tol)
    if vals[i] >= v_star:
        psi_star = float(grid[i])

    value, quad_err = _checked(params, p, psi_star, spec)
    step = spec.refine_tol if psi_star + spec.refine_tol <= HALF_PI else -spec.refine_tol
    ref_err = abs(f(psi_star + step) - f(psi_star))
    gamma_star = math.inf if psi_star >= HALF_PI else math.tan(psi_star)
    const = SharpConstant(
        value,
        Method.NUMERIC,
        Branch.NUMERIC_ONLY,
        est_error=quad_err + ref_err + ROUNDOFF * abs(value),
        extra={"gamma_star": gamma_star, "psi_star": psi_star},
    )
    return const, gamma_star


def _direction(n, gamma, tangent=None):
    """Unit z with |z'|/z_n = gamma; ``tangent`` picks the direction of z'."""
    t = np.zeros(n - 1)
    if tangent is None:
        t[0] = 1.0
    else:
        t = np.asarray(tangent, dtype=float)
        t = t / np.linalg.norm(t)
    psi = _psi(gamma)
    return np.concatenate([math.sin(psi) * t, [math.cos(psi)]])


def direction_constant(params, p, z, n_nodes=96):
    """C_{alpha,beta,p}(z) for an explicit unit vector z in R^n.

    Evaluates (alpha e_n - (e_s, e_n) e_s, z) on a hemisphere product grid:
    Gauss-Jacobi in c = (e_s, e_n) carrying the weight c^lam (1 - c)^{(n-3)/2},
    and the product rule on S^{n-2}. Returns ``(value, est_error)`` with the
    error taken from a run at half resolution.
    """
    p = validate(params, p)
    n, alpha = params.n, params.alpha
    z = np.asarray(z, dtype=float)
    z = z / np.linalg.norm(z)
    scale = abs(params.k) * params.beta

    if p.p == 1:
        return _direction_sup_p1(params, z), 0.0

    q, lam = _exponents(params, p)

    def run(m):
        c, wc = jacobi_rule(m, 0.5 * (n - 3), lam)
        ring, wr = sphere_rule(n - 2, m if n == 3 else max(8, m // 4))
        s = np.sqrt(1.0 - c * c)
        # sigma = (s * omega, c); dot with z
        dot_t = ring @ z[:-1]
        e_dot_z = s[:, None] * dot_t[None, :] + c[:, None] * z[-1]
        g = alpha * z[-1] - c[:, None] * e_dot_z
        leftover = (1.0 + c) ** (0.5 * (n - 3))
        integral = float((np.abs(g) ** q * (wc * leftover)[:, None] * wr[None, :]).sum())
        return scale * integral if p.is_inf else scale * integral ** ((p.p - 1) / p.p)

    fine = run(n_nodes)
    coarse = run(max(8, n_nodes // 2))
    return fine, abs(fine - coarse)


def _direction_sup_p1(params, z):
    alpha, beta = params.alpha, params.beta
    zt = z[:-1]
    zt_norm = float(np.linalg.norm(zt))

    def val(theta, phi):
        c, s = np.cos(theta), np.sin(theta)
        dot = s * np.cos(phi) * zt_norm + c * z[-1]
        return np.abs(alpha * z[-1] - c * dot) * np.maximum(c, 0.0) ** beta

    th, ph = np.meshgrid(np.linspace(0, HALF_PI, 201), np.linspace(0, np.pi, 101), indexing="ij")
    grid = val(th, ph)
    i, j = np.unravel_index(int(np.argmax(grid)), grid.shape)
    best = (float(grid[i, j]), float(th[i, j]), float(ph[i, j]))
    res = minimize(
        lambda v: -float(val(min(max(v[0], 0.0), HALF_PI), v[1])),
        x0=[best[1], best[2]],
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000},
    )
    return abs(params.k) * beta * max(best[0], -res.fun)


def sphere_direct(params, p, direction_grid=33, spec=None, n_nodes=96):
    """Max over a grid of directions z = (sin psi e_1, cos psi) of C(z).

    Returns ``(SharpConstant, best_gamma)``.
    """
    p = validate(params, p)
    psis = np.linspace(0.0, HALF_PI, direction_grid)
    results = []
    for psi in psis:
        z = np.zeros(params.n)
        z[0], z[-1] = math.sin(psi), math.cos(psi)
        results.append(direction_constant(params, p, z, n_nodes))
    vals = np.array([r[0] for r in results])
    i = int(np.argmax(vals))
    psi = float(psis[i])
    best_gamma = math.inf if psi >= HALF_PI else math.tan(psi)
    const = SharpConstant(
        float(vals[i]),
        Method.NUMERIC,
        Branch.NUMERIC_ONLY,
        est_error=float(results[i][1]),
        extra={"gamma_star": best_gamma, "grid_values": vals.tolist()},
    )
    return const, best_gamma


def numeric_constant(params, p, spec=None):
    """C_{alpha,beta,p} from the oracle alone."""
    p = validate(params, p)
    if p.p == 1:
        return profile_p1(params)[1]
    return supremum_over_gamma(params, p, spec)[0]
