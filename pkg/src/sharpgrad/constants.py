"""Front door for C_{alpha,beta,p}: closed form when one exists, oracle otherwise."""

import functools

from .closedform import closed_form_constant
from .errors import OutOfRegime
from .model import Branch, GradientBound, NormIndex, Variant, classify_regime, xn_exponent
from .oracle import QuadratureSpec, numeric_constant

__all__ = ["sharp_constant", "gradient_bound", "best_constant"]


def sharp_constant(params, p, method="auto", variant=Variant.CORRECTED, spec=None):
    """Compute C_{alpha,beta,p}.

    ``method`` is ``"auto"``, ``"closed"`` or ``"numeric"``. ``"closed"``
    raises :class:`OutOfRegime` in regimes without a closed form.
    """
    p = NormIndex.parse(p)
    regime = classify_regime(params, p)
    if method == "closed":
        return closed_form_constant(params, p, variant)
    if method == "numeric":
        const = numeric_constant(params, p, spec)
    elif method == "auto":
        if regime.branch is not Branch.NUMERIC_ONLY:
            return closed_form_constant(params, p, variant)
        const = numeric_constant(params, p, spec)
    else:
        raise ValueError(f"unknown method {method!r}")
    # numeric results carry the regime the parameters fall in
    return type(const)(const.value, const.method, regime.branch, const.variant, const.est_error, const.extra)


@functools.lru_cache(maxsize=256)
def best_constant(params, p, spec=None):
    """Cached ``sharp_constant(..., method="auto")``."""
    return sharp_constant(params, p, "auto", Variant.CORRECTED, spec)


def gradient_bound(params, p, method="auto", variant=Variant.CORRECTED, spec=None):
    const = sharp_constant(params, p, method, variant, spec)
    return GradientBound(const, xn_exponent(params, p))


def has_closed_form(params, p):
    try:
        return classify_regime(params, p).branch is not Branch.NUMERIC_ONLY
    except OutOfRegime:
        return False


# keep QuadratureSpec importable from here for callers that only need constants
__all__ += ["QuadratureSpec", "has_closed_form"]
