"""Parameter domain, regime classification and the x_n power law.

The generalized Poisson integral is

    u(x) = k * int_{R^{n-1}} (x_n^alpha / |y - x|)^beta f(y') dy',

and the sharp pointwise coefficient factors as C / x_n^e with e given by
:func:`xn_exponent`.
"""

import enum
import math
from dataclasses import dataclass, field

from .errors import InvalidParams

__all__ = [
    "KernelParams",
    "NormIndex",
    "Branch",
    "Method",
    "Variant",
    "Regime",
    "SharpConstant",
    "GradientBound",
    "validate",
    "classify_regime",
    "xn_exponent",
    "coefficient_at",
]


@dataclass(frozen=True)
class KernelParams:
    """The quadruple (n, alpha, beta, k) of the kernel k (x_n^alpha / |y - x|)^beta."""

    n: int
    alpha: float
    beta: float
    k: float = 1.0

    def with_k(self, k):
        return KernelParams(self.n, self.alpha, self.beta, k)


@dataclass(frozen=True)
class NormIndex:
    """Lebesgue exponent p in [1, inf]; ``p == math.inf`` marks L^infinity."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p < 1:
            raise InvalidParams("p", f"must satisfy 1 <= p <= inf, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @classmethod
    def parse(cls, text):
        """Parse ``'inf'``, ``'infinity'`` or a decimal string."""
        if isinstance(text, NormIndex):
            return text
        if isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "oo"):
            return cls(math.inf)
        try:
            return cls(float(text))
        except (TypeError, ValueError):
            raise InvalidParams("p", f"cannot parse {text!r}") from None

    @property
    def is_inf(self):
        return math.isinf(self.p)

    @property
    def conjugate(self):
        """Hoelder conjugate p/(p-1); +inf at p = 1."""
        if self.p == 1:
            return math.inf
        if self.is_inf:
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def inv(self):
        """1/p, read as 0 at p = inf."""
        return 0.0 if self.is_inf else 1.0 / self.p

    @property
    def dual_fraction(self):
        """(p-1)/p, read as 1 at p = inf."""
        return 1.0 - self.inv

    def __str__(self):
        return "inf" if self.is_inf else repr(self.p)


class Branch(str, enum.Enum):
    P1_OUTER = "p1_outer"
    P1_MIDDLE = "p1_middle"
    ALPHA0_CLOSED_FORM = "alpha0_closed_form"
    P2_I1 = "p2_i1"
    P2_I2 = "p2_i2"
    PINF_LARGE_ALPHA = "pinf_large_alpha"
    PINF_ALPHA_ONE = "pinf_alpha1"
    NUMERIC_ONLY = "numeric_only"


class Method(str, enum.Enum):
    CLOSED_FORM = "closed"
    NUMERIC = "numeric"


class Variant(str, enum.Enum):
    AS_PRINTED = "as-printed"
    CORRECTED = "corrected"
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class Regime:
    branch: Branch
    thresholds: tuple = ()

    def threshold(self, name):
        return dict(self.thresholds)[name]


@dataclass(frozen=True)
class SharpConstant:
    """A computed C_{alpha,beta,p} together with how it was obtained."""

    value: float
    method: Method
    branch: Branch
    variant: Variant = Variant.NOT_APPLICABLE
    est_error: float = 0.0
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class GradientBound:
    constant: SharpConstant
    xn_exponent: float

    def at(self, x_n):
        return coefficient_at(self, x_n)


def validate(params, p):
    """Raise :class:`InvalidParams` unless (params, p) lies in the admissible domain.

    Requires n >= 3, alpha >= 0, k != 0 and beta > (n-1)(p-1)/p strictly.
    """
    p = NormIndex.parse(p)
    n = params.n
    if int(n) != n or n < 3:
        raise InvalidParams("n", f"dimension must be an integer >= 3, got {n!r}")
    if not math.isfinite(params.alpha) or params.alpha < 0:
        raise InvalidParams("alpha", f"must be finite and >= 0, got {params.alpha!r}")
    if not math.isfinite(params.k) or params.k == 0:
        raise InvalidParams("k", f"must be finite and nonzero, got {params.k!r}")
    if not math.isfinite(params.beta) or params.beta <= 0:
        raise InvalidParams("beta", f"must be finite and > 0, got {params.beta!r}")
    bound = (n - 1) * p.dual_fraction
    if not params.beta > bound:
        raise InvalidParams(
            "beta", f"must exceed (n-1)(p-1)/p = {bound:.17g} for p = {p}, got {params.beta!r}"
        )
    return p


def classify_regime(params, p):
    """Pick the unique branch whose closed-form hypotheses hold.

    Order of precedence: p = 1, alpha = 0, p = 2, p = inf. Everything else is
    ``NUMERIC_ONLY``. Thresholds are recomputed on every call.
    """
    from . import roots

    p = validate(params, p)
    n, alpha, beta = params.n, params.alpha, params.beta

    if p.p == 1:
        tp = roots.thm1_thresholds(beta)
        th = (("alpha1", tp.alpha1), ("alpha2", tp.alpha2))
        if alpha <= tp.alpha1 or alpha >= tp.alpha2:
            return Regime(Branch.P1_OUTER, th)
        return Regime(Branch.P1_MIDDLE, th)

    if alpha == 0:
        # validity already implies one of the three alpha = 0 conditions
        return Regime(Branch.ALPHA0_CLOSED_FORM, (("n_minus_1", n - 1.0),))

    if p.p == 2:
        if beta > n - 1:
            tp = roots.thm3_thresholds(n, beta)
            th = (("alpha1", tp.alpha1), ("alpha2", tp.alpha2))
            if tp.alpha1 < alpha < tp.alpha2:
                return Regime(Branch.P2_I2, th)
            return Regime(Branch.P2_I1, th)
        return Regime(Branch.P2_I1, (("n_minus_1", n - 1.0),))

    if p.is_inf:
        if alpha == 1 and beta <= n:
            return Regime(Branch.PINF_ALPHA_ONE, (("n_minus_1", n - 1.0), ("n", float(n))))
        root = roots.alpha_root(n, beta).value
        th = (("alpha_root", root),)
        if alpha >= root:
            return Regime(Branch.PINF_LARGE_ALPHA, th)
        return Regime(Branch.NUMERIC_ONLY, th)

    return Regime(Branch.NUMERIC_ONLY)


def xn_exponent(params, p):
    """The power e in C / x_n^e: 2 - n + beta (1 - alpha) + (n-1)/p."""
    p = validate(params, p)
    n = params.n
    return 2 - n + params.beta * (1 - params.alpha) + (n - 1) * p.inv


def coefficient_at(bound, x_n):
    if not x_n > 0:
        raise ValueError(f"x_n must be positive, got {x_n!r}")
    return bound.constant.value / x_n ** bound.xn_exponent
