"""Explicit formulas for the sharp constant C_{alpha,beta,p}.

Two formulas are printed with an outer exponent that disagrees with the
quadrature oracle: the p = 1 middle branch and the alpha = 0 formula for
1 < p < inf. Both are available as ``Variant.AS_PRINTED``; the default
``Variant.CORRECTED`` follows the oracle.
"""

import math

from .errors import OutOfRegime
from .model import Branch, Method, NormIndex, SharpConstant, Variant, classify_regime, validate
from .roots import alpha_root, thm1_thresholds, thm3_thresholds
from .specialfn import gamma_ratio, log_gamma, sphere_area

__all__ = [
    "c_p1",
    "c_alpha0",
    "c_p2",
    "p2_integrals",
    "c_pinf_large_alpha",
    "c_pinf_alpha1",
    "km2_reference",
    "closed_form_constant",
]

_LOG_PI = math.log(math.pi)


def _variant(variant):
    if variant in (None, Variant.NOT_APPLICABLE):
        return Variant.CORRECTED
    return Variant(variant)


def _closed(value, branch, variant=Variant.NOT_APPLICABLE, **extra):
    return SharpConstant(value, Method.CLOSED_FORM, branch, variant, 0.0, extra)


def c_p1(params, variant=Variant.CORRECTED):
    """C_{alpha,beta,1}.

    Outside (alpha1, alpha2) the constant is |k| beta |1 - alpha|. Inside, the
    maximum of (alpha^2 + (1 - 2 alpha) t^2)^{1/2} t^beta over [0, 1] sits at
    t^2 = alpha^2 beta / ((2 alpha - 1)(1 + beta)), which gives outer exponent
    (beta + 1)/2 on alpha^2/(1 + beta). The printed formula uses (beta + 2)/2.
    """
    validate(params, 1)
    variant = _variant(variant)
    k, a, b = abs(params.k), params.alpha, params.beta
    tp = thm1_thresholds(b)
    if a <= tp.alpha1 or a >= tp.alpha2:
        return _closed(k * b * abs(1 - a), Branch.P1_OUTER, variant)
    outer = (b + 2) / 2 if variant is Variant.AS_PRINTED else (b + 1) / 2
    log_val = 0.5 * b * math.log(b / (2 * a - 1)) + outer * math.log(a * a / (1 + b))
    t_star = math.sqrt(a * a * b / ((2 * a - 1) * (1 + b)))
    return _closed(k * b * math.exp(log_val), Branch.P1_MIDDLE, variant, t_star=t_star)


def _alpha0_condition(n, beta, p):
    if p.is_inf:
        return beta > n - 1
    if beta >= n - 1:
        return True
    return p.p < (n - 1) / (n - 1 - beta)


def c_alpha0(params, p, variant=Variant.CORRECTED):
    """C_{0,beta,p}; the sup over directions is attained at e_n.

    With B = pi^{(n-1)/2} Gamma(((beta-n+3)p + n-1)/(2(p-1))) / Gamma((beta+2)p/(2(p-1))),
    the corrected value is |k| beta B^{(p-1)/p}; the printed one raises B to p/(p-1).
    """
    if params.alpha != 0:
        raise OutOfRegime(f"alpha = 0 formula needs alpha == 0, got {params.alpha!r}")
    p = validate(params, p)
    variant = _variant(variant)
    n, b, k = params.n, params.beta, abs(params.k)
    if not _alpha0_condition(n, b, p):
        raise OutOfRegime(f"alpha = 0 formula does not cover (n={n}, beta={b}, p={p})")
    if p.p == 1:
        return _closed(k * b, Branch.ALPHA0_CLOSED_FORM, variant)
    if p.is_inf:
        log_b = 0.5 * (n - 1) * _LOG_PI + log_gamma((b - n + 3) / 2) - log_gamma((b + 2) / 2)
        return _closed(k * b * math.exp(log_b), Branch.ALPHA0_CLOSED_FORM, variant)
    pp = p.p
    num = ((b - n + 3) * pp + n - 1) / (2 * (pp - 1))
    den = (b + 2) * pp / (2 * (pp - 1))
    log_b = 0.5 * (n - 1) * _LOG_PI + log_gamma(num) - log_gamma(den)
    expo = pp / (pp - 1) if variant is Variant.AS_PRINTED else (pp - 1) / pp
    return _closed(k * b * math.exp(expo * log_b), Branch.ALPHA0_CLOSED_FORM, variant)


def p2_integrals(n, alpha, beta):
    """The normal-direction and tangential-direction integrals (I1, I2) for p = 2."""
    common = math.sqrt(math.pi) * math.exp(
        log_gamma((n - 2) / 2) + log_gamma((2 * beta + 3 - n) / 2) - log_gamma(beta + 2)
    )
    bracket = (
        2 * alpha**2 * beta * (beta + 1) / (2 * beta + 1 - n)
        - 2 * alpha * (beta + 1)
        + (2 * beta + 3 - n) / 2
    )
    return common * bracket / 2, common / 4


def c_p2(params):
    """C_{alpha,beta,2} = |k| beta sqrt(omega_{n-2}) max(sqrt(I1), sqrt(I2))."""
    validate(params, 2)
    n, a, b = params.n, params.alpha, params.beta
    i1, i2 = p2_integrals(n, a, b)
    scale = abs(params.k) * b * math.sqrt(sphere_area(n - 2).value)
    if b > n - 1:
        tp = thm3_thresholds(n, b)
        branch = Branch.P2_I2 if tp.alpha1 < a < tp.alpha2 else Branch.P2_I1
    else:
        branch = Branch.P2_I1
    value = scale * math.sqrt(max(i1, i2))
    return _closed(value, branch, I1=i1, I2=i2)


def c_pinf_large_alpha(params):
    """C_{alpha,beta,inf} for alpha at or above the threshold root."""
    validate(params, math.inf)
    n, a, b = params.n, params.alpha, params.beta
    root = alpha_root(n, b).value
    if a < root:
        raise OutOfRegime(f"alpha = {a} is below the threshold root {root:.6f} (n={n}, beta={b})")
    value = (
        abs(params.k)
        * math.pi ** ((n - 1) / 2)
        * gamma_ratio((b - n + 1) / 2, b / 2)
        * ((a - 1) * b + n - 1)
    )
    return _closed(value, Branch.PINF_LARGE_ALPHA, alpha_root=root)


def c_pinf_alpha1(params):
    """C_{1,beta,inf} for n - 1 < beta <= n."""
    n, b = params.n, params.beta
    if params.alpha != 1:
        raise OutOfRegime(f"alpha = 1 formula needs alpha == 1, got {params.alpha!r}")
    if not (n - 1 < b <= n):
        raise OutOfRegime(f"alpha = 1 formula needs n - 1 < beta <= n, got beta = {b!r}")
    validate(params, math.inf)
    value = abs(params.k) * math.pi ** ((n - 1) / 2) * (n - 1) * gamma_ratio((b - n + 1) / 2, b / 2)
    return _closed(value, Branch.PINF_ALPHA_ONE)


def km2_reference(n, p):
    """Reference constants for the gradient of the classical Poisson integral."""
    if int(n) != n or n < 3:
        raise ValueError(f"n must be an integer >= 3, got {n!r}")
    p = NormIndex.parse(p)
    w = sphere_area(n).value
    if p.p == 1:
        return 2 * (n - 1) / w
    if p.p == 2:
        return math.sqrt((n - 1) * n / (2**n * w))
    if p.is_inf:
        return 4 * (n - 1) ** ((n - 1) / 2) * sphere_area(n - 1).value / (n ** (n / 2) * w)
    raise ValueError(f"reference constants exist only for p in {{1, 2, inf}}, got {p}")


def closed_form_constant(params, p, variant=Variant.CORRECTED):
    """Dispatch to the closed form for the regime of (params, p).

    Raises :class:`OutOfRegime` when the regime has no closed form.
    """
    regime = classify_regime(params, p)
    p = NormIndex.parse(p)
    br = regime.branch
    if br in (Branch.P1_OUTER, Branch.P1_MIDDLE):
        return c_p1(params, variant)
    if br is Branch.ALPHA0_CLOSED_FORM:
        return c_alpha0(params, p, variant)
    if br in (Branch.P2_I1, Branch.P2_I2):
        return c_p2(params)
    if br is Branch.PINF_ALPHA_ONE:
        return c_pinf_alpha1(params)
    if br is Branch.PINF_LARGE_ALPHA:
        return c_pinf_large_alpha(params)
    raise OutOfRegime(f"no closed form for (n={params.n}, alpha={params.alpha}, beta={params.beta}, p={p})")

