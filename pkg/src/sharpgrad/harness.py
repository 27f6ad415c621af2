"""Numeric gradients of the generalized Poisson integral for concrete boundary data.

For x = (x', x_n) the integral over the boundary is taken in polar
coordinates centred at x' with r = x_n tan(theta), which turns the kernel
gradient into

    k beta x_n^{alpha beta - beta + n - 2} cos^{beta-n}(theta) sin^{n-2}(theta)
        (cos theta sin theta omega, alpha - cos^2 theta)

against d theta d omega, omega on S^{n-2}. Narrow bumps are integrated on
their own polar grid instead. Everything beyond the truncation radius is
bounded by Hoelder's inequality.
"""

import csv
import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.special import gammaincc

from .constants import best_constant
from .errors import InvalidParams, NumericFailure
from .model import KernelParams, NormIndex, coefficient_at, GradientBound, validate, xn_exponent
from .oracle import QuadratureSpec, objective, profile_p1, supremum_over_gamma, theta_sign_changes
from .quadrature import de_rule, sphere_rule
from .specialfn import sphere_area

__all__ = [
    "EvaluationPoint",
    "BoundaryFunction",
    "Constant",
    "GaussianBump",
    "KernelSign",
    "KernelPower",
    "Tabulated",
    "GradientEstimate",
    "VerificationReport",
    "kernel_gradient",
    "integrate_gradient",
    "numeric_gradient",
    "near_extremal_boundary",
    "verify_bound",
    "DEFAULT_RADIUS_FACTOR",
]

HALF_PI = 0.5 * math.pi
DEFAULT_RADIUS_FACTOR = 200.0


@dataclass(frozen=True)
class EvaluationPoint:
    x_prime: tuple
    x_n: float

    def __post_init__(self):
        object.__setattr__(self, "x_prime", tuple(float(v) for v in np.ravel(self.x_prime)))
        if not self.x_n > 0:
            raise InvalidParams("x_n", f"must be positive, got {self.x_n!r}")

    @property
    def dim(self):
        return len(self.x_prime) + 1

    def shifted(self, shift):
        return EvaluationPoint(tuple(np.add(self.x_prime, shift)), self.x_n)


def _unit(z):
    z = np.asarray(z, dtype=float)
    nz = np.linalg.norm(z)
    if not nz > 0:
        raise InvalidParams("z", "direction must be nonzero")
    return z / nz


# -- boundary data ----------------------------------------------------------


class BoundaryFunction:
    """Boundary data f on R^{n-1}; ``f(y)`` takes an array of shape (..., n-1)."""

    family = "abstract"
    norm_p = NormIndex(math.inf)

    def __call__(self, y):
        raise NotImplementedError

    def norm(self, p=None):
        """||f||_p; ``p`` defaults to the family's own index."""
        raise NotImplementedError

    def shifted(self, shift):
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(BoundaryFunction):
    c: float = 1.0
    family = "constant"
    norm_p = NormIndex(math.inf)

    def __call__(self, y):
        return np.full(np.shape(y)[:-1], float(self.c))

    def norm(self, p=None):
        p = self.norm_p if p is None else NormIndex.parse(p)
        if p.is_inf or self.c == 0:
            return abs(self.c)
        return math.inf

    def shifted(self, shift):
        return self


@dataclass(frozen=True)
class GaussianBump(BoundaryFunction):
    """h exp(-|y - center|^2 / (2 width^2))."""

    center: tuple
    width: float
    height: float = 1.0
    norm_p: NormIndex = field(default=NormIndex(math.inf))
    family = "gaussian"

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(v) for v in np.ravel(self.center)))
        object.__setattr__(self, "norm_p", NormIndex.parse(self.norm_p))
        if not self.width > 0:
            raise InvalidParams("width", f"must be positive, got {self.width!r}")

    def __call__(self, y):
        d2 = ((np.asarray(y) - np.asarray(self.center)) ** 2).sum(axis=-1)
        return self.height * np.exp(-0.5 * d2 / self.width**2)

    def norm(self, p=None):
        p = self.norm_p if p is None else NormIndex.parse(p)
        if p.is_inf:
            return abs(self.height)
        m = len(self.center)
        return abs(self.height) * (2 * math.pi * self.width**2 / p.p) ** (m / (2 * p.p))

    def mass_outside(self, radius):
        """int_{|y - center| > radius} |f| dy."""
        m = len(self.center)
        total = abs(self.height) * (2 * math.pi * self.width**2) ** (m / 2)
        if radius <= 0:
            return total
        return total * float(gammaincc(m / 2, 0.5 * (radius / self.width) ** 2))

    def shifted(self, shift):
        return GaussianBump(tuple(np.add(self.center, shift)), self.width, self.height, self.norm_p)


@dataclass(frozen=True)
class KernelSign(BoundaryFunction):
    """sign of the directional kernel (grad_x K(x, y), z); the p = inf extremal."""

    params: KernelParams
    x: EvaluationPoint
    z: tuple
    family = "kernel_sign"
    norm_p = NormIndex(math.inf)

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(_unit(self.z)))

    def __call__(self, y):
        return np.sign(kernel_gradient(self.params, self.x, y) @ np.asarray(self.z))

    def norm(self, p=None):
        p = self.norm_p if p is None else NormIndex.parse(p)
        return 1.0 if p.is_inf else math.inf

    def shifted(self, shift):
        return KernelSign(self.params, self.x.shifted(shift), self.z)


@dataclass(frozen=True)
class KernelPower(BoundaryFunction):
    """sign(g) |g|^{q-1} / ||g||_q^{q-1} with g the directional kernel, q = p/(p - 1)."""

    params: KernelParams
    x: EvaluationPoint
    z: tuple
    p: NormIndex
    g_norm: float
    family = "kernel_power"

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(_unit(self.z)))
        object.__setattr__(self, "p", NormIndex.parse(self.p))

    @property
    def norm_p(self):
        return self.p

    def __call__(self, y):
        q = self.p.conjugate
        g = kernel_gradient(self.params, self.x, y) @ np.asarray(self.z)
        return np.sign(g) * (np.abs(g) / self.g_norm) ** (q - 1)

    def norm(self, p=None):
        p = self.p if p is None else NormIndex.parse(p)
        if p != self.p:
            raise InvalidParams("p", f"KernelPower norm is only known in closed form for p = {self.p}")
        return 1.0

    def shifted(self, shift):
        return KernelPower(self.params, self.x.shifted(shift), self.z, self.p, self.g_norm)


@dataclass(frozen=True, eq=False)
class Tabulated(BoundaryFunction):
    """Samples on a rectangular grid, multilinear in between and zero outside."""

    axes: tuple
    values: np.ndarray = field(compare=False)
    norm_p: NormIndex = field(default=NormIndex(math.inf))
    family = "tabulated"

    def __post_init__(self):
        axes = tuple(np.asarray(a, dtype=float) for a in self.axes)
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != tuple(len(a) for a in axes):
            raise InvalidParams("values", f"shape {vals.shape} does not match axes")
        if not np.all(np.isfinite(vals)):
            raise InvalidParams("values", "tabulated data must be finite")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "norm_p", NormIndex.parse(self.norm_p))

    @functools.cached_property
    def _interp(self):
        return RegularGridInterpolator(self.axes, self.values, bounds_error=False, fill_value=0.0)

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return self._interp(y.reshape(-1, y.shape[-1])).reshape(y.shape[:-1])

    def norm(self, p=None):
        """Trapezoid estimate of ||f||_p on the grid (exact for p = inf)."""
        p = self.norm_p if p is None else NormIndex.parse(p)
        if p.is_inf:
            return float(np.abs(self.values).max())
        vals = np.abs(self.values) ** p.p
        for a in reversed(self.axes):
            vals = np.trapezoid(vals, a, axis=-1)
        return float(vals) ** (1 / p.p)

    def support_radius(self, center):
        corners = np.array(np.meshgrid(*[(a[0], a[-1]) for a in self.axes])).reshape(len(self.axes), -1).T
        return float(np.linalg.norm(corners - np.asarray(center), axis=1).max())

    def shifted(self, shift):
        return Tabulated(tuple(a + s for a, s in zip(self.axes, shift)), self.values, self.norm_p)

    @classmethod
    def from_csv(cls, path, norm_p=math.inf):
        """Read a ``y1,...,y_{n-1},value`` table listed row-major over a full grid."""
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = [h.strip() for h in next(reader)]
            m = len(header) - 1
            if m < 1 or header != [f"y{i + 1}" for i in range(m)] + ["value"]:
                raise InvalidParams("csv", f"header must be y1,...,y{{n-1}},value, got {header}")
            rows = np.array([[float(v) for v in r] for r in reader if r], dtype=float)
        if rows.ndim != 2 or rows.shape[1] != m + 1:
            raise InvalidParams("csv", "ragged rows")
        axes = tuple(np.unique(rows[:, i]) for i in range(m))
        shape = tuple(len(a) for a in axes)
        if rows.shape[0] != math.prod(shape):
            raise InvalidParams("csv", f"{rows.shape[0]} rows do not fill a {shape} grid")
        order = np.lexsort(rows[:, m - 1 :: -1].T)
        return cls(axes, rows[order, m].reshape(shape), norm_p)


# -- kernel -----------------------------------------------------------------


def kernel_gradient(params, x, y_prime):
    """grad_x of k (x_n^alpha / |y - x|)^beta with y = (y', 0).

    k beta x_n^{alpha beta - 1} (alpha e_n - (e, e_n) e) / |y - x|^beta,
    e = (y - x)/|y - x|. Vectorized over the leading axes of ``y_prime``.
    """
    validate(params, math.inf)
    y = np.asarray(y_prime, dtype=float)
    d_t = y - np.asarray(x.x_prime)
    dist = np.sqrt((d_t**2).sum(axis=-1) + x.x_n**2)
    e_t = d_t / dist[..., None]
    e_n = -x.x_n / dist
    pref = params.k * params.beta * x.x_n ** (params.alpha * params.beta - 1) / dist**params.beta
    tang = -e_n[..., None] * e_t
    norm = params.alpha - e_n * e_n
    return pref[..., None] * np.concatenate([tang, norm[..., None]], axis=-1)


def _kernel_abs(params, x_n, c):
    """|kernel_gradient| at the boundary point with cos(theta) = c."""
    a, b = params.alpha, params.beta
    pref = abs(params.k) * b * x_n ** (a * b - 1 - b)
    return pref * c**b * np.sqrt(a * a + (1 - 2 * a) * c * c)


# -- integration ------------------------------------------------------------


@dataclass(frozen=True)
class GradientEstimate:
    gradient: np.ndarray
    tail_estimate: float
    quad_error: float
    truncation_radius: float


def _angular_rule(n, spec):
    if n == 3:
        return sphere_rule(1, 4 * spec.phi_panels)
    return sphere_rule(n - 2, max(8, spec.phi_panels >> (n - 3)))


def _theta_edges(f, params, x, omega, theta_r):
    """Per-direction theta breakpoints in [0, theta_r], shape (n_dir, n_edges)."""
    n_dir = len(omega)
    lo = np.zeros((n_dir, 1))
    hi = np.full((n_dir, 1), theta_r)
    if isinstance(f, (KernelSign, KernelPower)) and f.x == x and f.params.alpha == params.alpha:
        z = np.asarray(f.z)
        if z[-1] < 0:
            z = -z
        zt = z[:-1]
        zt_norm = float(np.linalg.norm(zt))
        psi = math.atan2(zt_norm, z[-1])
        u = zt / zt_norm if zt_norm > 0 else np.zeros_like(zt)
        phi = np.arccos(np.clip(-(omega @ u), -1.0, 1.0))
        zeros = np.minimum(theta_sign_changes(params.alpha, psi, phi), theta_r)
        return np.concatenate([lo, zeros, hi], axis=1)
    return np.concatenate([lo, hi], axis=1)


def _polar_at_x(params, f, x, radius, n_theta, spec):
    n, a, b = params.n, params.alpha, params.beta
    omega, w_om = _angular_rule(n, spec)
    theta_r = math.atan(radius / x.x_n)
    xt, _, wt = de_rule(n_theta)
    edges = _theta_edges(f, params, x, omega, theta_r)
    xp = np.asarray(x.x_prime)
    acc = np.zeros(n)
    for j in range(edges.shape[1] - 1):
        lo, hi = edges[:, j : j + 1], edges[:, j + 1 : j + 2]
        span = hi - lo
        live = span[:, 0] > 0
        if not live.any():
            continue
        lo, span, om, wo = lo[live], span[live], omega[live], w_om[live]
        theta = lo + span * xt
        c, s = np.cos(theta), np.sin(theta)
        r = x.x_n * np.tan(theta)
        y = xp + r[..., None] * om[:, None, :]
        wgt = c ** (b - n) * s ** (n - 2) * f(y) * wt * span * wo[:, None]
        acc[:-1] += ((wgt * c * s).sum(axis=1)[:, None] * om).sum(axis=0)
        acc[-1] += (wgt * (a - c * c)).sum()
    return params.k * b * x.x_n ** (a * b - b + n - 2) * acc


def _polar_at_bump(params, f, x, n_r, spec):
    n = params.n
    omega, w_om = _angular_rule(n, spec)
    r_max = 10.0 * f.width
    xr, _, wr = de_rule(n_r)
    r = r_max * xr
    y = np.asarray(f.center) + r[None, :, None] * omega[:, None, :]
    vals = f(y) * r ** (n - 2) * (r_max * wr) * w_om[:, None]
    kg = kernel_gradient(params, x, y)
    return (kg * vals[..., None]).sum(axis=(0, 1))


def _tail_q_norm(params, x_n, theta_r, q):
    """|| kernel_gradient 1_{|y'-x'| > R} ||_q with R = x_n tan(theta_r)."""
    n, a, b = params.n, params.alpha, params.beta
    pref = abs(params.k) * b * x_n ** (a * b - 1 - b)
    if math.isinf(q):
        c = np.linspace(0.0, math.cos(theta_r), 2001)
        return float(_kernel_abs(params, x_n, c).max())
    xt, xct, wt = de_rule(128)
    span = HALF_PI - theta_r
    theta = theta_r + span * xt
    c = np.sin(span * xct)
    s = np.sin(theta)
    integrand = c ** (b * q - n) * s ** (n - 2) * (a * a + (1 - 2 * a) * c * c) ** (q / 2)
    integral = span * float((integrand * wt).sum())
    return pref * (x_n ** (n - 1) * sphere_area(n - 1).value * integral) ** (1 / q)


def _tail(params, f, x, radius, bump_plan):
    theta_r = math.atan(radius / x.x_n)
    if isinstance(f, GaussianBump):
        if bump_plan:
            return _tail_q_norm(params, x.x_n, 0.0, math.inf) * f.mass_outside(10 * f.width)
        d = float(np.linalg.norm(np.subtract(f.center, x.x_prime)))
        return _tail_q_norm(params, x.x_n, theta_r, math.inf) * f.mass_outside(radius - d)
    if isinstance(f, Tabulated) and f.support_radius(x.x_prime) <= radius:
        return 0.0
    if isinstance(f, Constant) and f.c == 0:
        return 0.0
    p = f.norm_p
    return _tail_q_norm(params, x.x_n, theta_r, p.conjugate) * f.norm(p)


def integrate_gradient(params, f, x, truncation_radius=None, spec=None):
    """Gradient, tail bound and a doubling-based quadrature error estimate."""
    validate(params, math.inf)
    if x.dim != params.n:
        raise InvalidParams("x", f"point has dimension {x.dim}, kernel has n = {params.n}")
    spec = QuadratureSpec() if spec is None else spec
    radius = DEFAULT_RADIUS_FACTOR * x.x_n if truncation_radius is None else float(truncation_radius)
    if not radius > 0:
        raise InvalidParams("truncation_radius", "must be positive")

    bump_plan = isinstance(f, GaussianBump) and f.width <= x.x_n
    if bump_plan:

        def run(s):
            return _polar_at_bump(params, f, x, 2 * s.theta_panels, s)

    else:

        def run(s):
            return _polar_at_x(params, f, x, radius, 2 * s.theta_panels, s)

    grad = run(spec.doubled())
    err = float(np.linalg.norm(grad - run(spec)))
    tail = _tail(params, f, x, radius, bump_plan)
    return GradientEstimate(grad, float(tail), err, radius)


def numeric_gradient(params, f, x, truncation_radius=None, spec=None, tail_tol=None):
    """Truncated-quadrature gradient of u at x; returns ``(gradient, tail_estimate)``.

    Raises :class:`NumericFailure` if ``tail_tol`` is given and the tail
    bound exceeds it.
    """
    est = integrate_gradient(params, f, x, truncation_radius, spec)
    if tail_tol is not None and est.tail_estimate > tail_tol:
        raise NumericFailure(f"tail estimate {est.tail_estimate:.3g} exceeds {tail_tol:g}")
    return est.gradient, est.tail_estimate


# -- extremal data and verification ------------------------------------------


def _default_direction(params, p):
    if p.p == 1:
        return None
    const, gamma = supremum_over_gamma(params, p)
    psi = HALF_PI if math.isinf(gamma) else math.atan(gamma)
    z = np.zeros(params.n)
    z[0], z[-1] = math.sin(psi), math.cos(psi)
    return z


def near_extremal_boundary(params, p, x, z=None):
    """Boundary data that nearly attains the bound at x in direction z.

    p = inf gives :class:`KernelSign`, 1 < p < inf the normalized
    :class:`KernelPower`, p = 1 a unit-mass Gaussian of width x_n/100 at the
    boundary point where |kernel_gradient| peaks. Without ``z`` the oracle's
    maximizing direction is used.
    """
    p = validate(params, p)
    if z is None:
        z = _default_direction(params, p)
    if p.p == 1:
        t_star = profile_p1(params)[0]
        u = np.zeros(params.n - 1)
        zt = None if z is None else np.asarray(z, dtype=float)[:-1]
        if zt is not None and np.linalg.norm(zt) > 0:
            u = zt / np.linalg.norm(zt)
        else:
            u[0] = 1.0
        r = x.x_n * math.sqrt(max(1.0 - t_star * t_star, 0.0)) / t_star
        width = x.x_n / 100
        m = params.n - 1
        height = (2 * math.pi * width**2) ** (-m / 2)
        return GaussianBump(tuple(np.asarray(x.x_prime) + r * u), width, height, NormIndex(1))
    z = _unit(z)
    if p.is_inf:
        return KernelSign(params, x, tuple(z))
    zz = -z if z[-1] < 0 else z
    gamma = math.inf if zz[-1] == 0 else float(np.linalg.norm(zz[:-1]) / zz[-1])
    g_norm = objective(params, p, gamma).value * x.x_n ** (-xn_exponent(params, p))
    return KernelPower(params, x, tuple(z), p, g_norm)


@dataclass(frozen=True)
class VerificationReport:
    bound: float
    measured: float
    ratio: float
    truncation_radius: float
    tail_estimate: float
    quad_error: float = 0.0
    gradient: tuple = ()
    constant: float = math.nan
    branch: str = ""

    def as_dict(self):
        return {
            "bound": self.bound,
            "measured": self.measured,
            "ratio": self.ratio,
            "truncation_radius": self.truncation_radius,
            "tail_estimate": self.tail_estimate,
            "quad_error": self.quad_error,
            "gradient": list(self.gradient),
            "constant": self.constant,
            "branch": self.branch,
        }


def verify_bound(params, p, f, x, spec=None, truncation_radius=None, tail_tol=None):
    """Compare |grad u(x)| for data f against C(x) ||f||_p."""
    p = validate(params, p)
    norm = f.norm(p)
    if not math.isfinite(norm):
        raise InvalidParams("f", f"boundary data is not in L^{p}")
    const = best_constant(params, p)
    bound = coefficient_at(GradientBound(const, xn_exponent(params, p)), x.x_n) * norm
    est = integrate_gradient(params, f, x, truncation_radius, spec)
    if tail_tol is not None and est.tail_estimate > tail_tol:
        raise NumericFailure(f"tail estimate {est.tail_estimate:.3g} exceeds {tail_tol:g}")
    measured = float(np.linalg.norm(est.gradient))
    ratio = measured / bound if bound > 0 else (0.0 if measured == 0 else math.inf)
    return VerificationReport(
        bound,
        measured,
        ratio,
        est.truncation_radius,
        est.tail_estimate,
        est.quad_error,
        tuple(float(v) for v in est.gradient),
        const.value,
        const.branch.value,
    )

