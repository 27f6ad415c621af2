"""Harmonic and biharmonic specializations.

A harmonic function v in h^p of the half-space is the Poisson integral of its
boundary values. Writing x_n^{n kappa - 1} v(x) with the Poisson kernel gives
the generalized kernel with alpha = kappa, beta = n, k = 2/omega_n, so the
sharp constant for |grad(x_n^{n kappa - 1} v)| is C_{kappa, n, p}.

The biharmonic function w0 with zero boundary trace and normal derivative g
satisfies w0 / x_n^2 = (Poisson integral of g) / x_n up to the same factor,
so the estimate for grad(x_n^{n kappa - 2} w0) in terms of ||dw0/dx_n||_p has
the same constant.
"""

import math
from dataclasses import dataclass, field

from .constants import sharp_constant
from .errors import InvalidParams
from .model import KernelParams, NormIndex, SharpConstant, Variant, validate, xn_exponent
from .specialfn import sphere_area

__all__ = [
    "HarmonicQuery",
    "harmonic_params",
    "harmonic_constant",
    "biharmonic_constant",
    "harmonic_coefficient",
    "printed_cor2_constant",
    "neumann_params",
    "HARMONIC_NOTE",
    "BIHARMONIC_NOTE",
]

HARMONIC_NOTE = "|grad(x_n^{n kappa - 1} v)(x)| <= C x_n^{n kappa - 2 - (n-1)/p} ||v||_{h^p}"
BIHARMONIC_NOTE = (
    "w0 = 0 on the boundary: |grad(x_n^{n kappa - 2} w0)(x)| <= C x_n^{n kappa - 2 - (n-1)/p} ||dw0/dx_n||_p"
)


@dataclass(frozen=True)
class HarmonicQuery:
    n: int
    kappa: float
    p: NormIndex = field(default=NormIndex(math.inf))

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 3:
            raise InvalidParams("n", f"must be an integer >= 3, got {self.n!r}")
        if not self.kappa >= 0:
            raise InvalidParams("kappa", f"must be >= 0, got {self.kappa!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", NormIndex.parse(self.p))

    @property
    def params(self):
        return harmonic_params(self.n, self.kappa)


def harmonic_params(n, kappa):
    """KernelParams(n, kappa, n, 2/omega_n)."""
    return KernelParams(n, kappa, n, 2.0 / sphere_area(n).value)


def neumann_params(n):
    """Kernel of the Neumann problem: alpha = 0, beta = n - 2, k = 2/((n - 2) omega_n)."""
    return KernelParams(n, 0.0, n - 2, 2.0 / ((n - 2) * sphere_area(n).value))


def _tagged(const, **extra):
    return SharpConstant(const.value, const.method, const.branch, const.variant, const.est_error, {**const.extra, **extra})


def harmonic_constant(query, method="auto", spec=None):
    """C_{kappa, n, p} for the harmonic estimate; ``extra`` carries the x_n exponent."""
    params = query.params
    validate(params, query.p)
    const = sharp_constant(params, query.p, method, Variant.CORRECTED, spec)
    return _tagged(const, xn_power=-xn_exponent(params, query.p), interpretation=HARMONIC_NOTE)


def harmonic_coefficient(query, x_n, method="auto"):
    """Pointwise coefficient C x_n^{n kappa - 2 - (n-1)/p}."""
    if not x_n > 0:
        raise ValueError(f"x_n must be positive, got {x_n!r}")
    const = harmonic_constant(query, method)
    return const.value * x_n ** const.extra["xn_power"]


def biharmonic_constant(n, kappa, p, method="auto", spec=None):
    """Same value as :func:`harmonic_constant`, tagged with the biharmonic reading."""
    const = harmonic_constant(HarmonicQuery(n, kappa, p), method, spec)
    return _tagged(const, interpretation=BIHARMONIC_NOTE)


def printed_cor2_constant(n):
    """The printed closed value for kappa = 1, p = 1.

    2(n-2)/(n omega_n) {(n-1)^2/((n-2)(n+1))}^{(n+2)/2}; kept for comparison
    with :func:`harmonic_constant`, which returns the oracle-backed value.
    """
    w = sphere_area(n).value
    return 2 * (n - 2) / (n * w) * ((n - 1) ** 2 / ((n - 2) * (n + 1))) ** ((n + 2) / 2)
