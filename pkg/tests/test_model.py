import math

import pytest
from hypothesis import given, strategies as st

from sharpgrad.errors import InvalidParams
from sharpgrad.model import (
    Branch,
    GradientBound,
    KernelParams,
    Method,
    NormIndex,
    SharpConstant,
    classify_regime,
    coefficient_at,
    validate,
    xn_exponent,
)


def test_boundary_of_validity_excluded():
    with pytest.raises(InvalidParams) as exc:
        validate(KernelParams(3, 0, 1, 1), 2)
    assert exc.value.field == "beta"


def test_valid_example():
    assert validate(KernelParams(3, 2, 3, 1), "inf").is_inf


@pytest.mark.parametrize(
    "params, field",
    [
        (KernelParams(2, 0, 1, 1), "n"),
        (KernelParams(3, -0.1, 3, 1), "alpha"),
        (KernelParams(3, 0, 3, 0), "k"),
        (KernelParams(3, 0, 0, 1), "beta"),
        (KernelParams(3, 0, math.nan, 1), "beta"),
    ],
)
def test_invalid_fields(params, field):
    with pytest.raises(InvalidParams) as exc:
        validate(params, 1)
    assert exc.value.field == field


def test_norm_index_parsing():
    assert NormIndex.parse("inf").is_inf
    assert NormIndex.parse("2.5").p == 2.5
    assert NormIndex.parse(NormIndex(3)).p == 3
    assert str(NormIndex(math.inf)) == "inf"
    assert NormIndex(1).conjugate == math.inf
    assert NormIndex(math.inf).inv == 0.0
    assert NormIndex(4).conjugate == pytest.approx(4 / 3)
    for bad in ("0.5", "abc", 0, "nan"):
        with pytest.raises(InvalidParams):
            NormIndex.parse(bad)


@pytest.mark.parametrize(
    "params, p, branch",
    [
        (KernelParams(3, 0.5, 3), 1, Branch.P1_OUTER),
        (KernelParams(3, 1.0, 3), 1, Branch.P1_MIDDLE),
        (KernelParams(3, 1.5, 3), "inf", Branch.PINF_LARGE_ALPHA),
        (KernelParams(3, 0.75, 4), 2, Branch.P2_I2),
        (KernelParams(3, 0.2, 4), 2, Branch.P2_I1),
        (KernelParams(3, 0.0, 3), 1.5, Branch.ALPHA0_CLOSED_FORM),
        (KernelParams(3, 1.0, 3), "inf", Branch.PINF_ALPHA_ONE),
        (KernelParams(3, 0.5, 3), "inf", Branch.NUMERIC_ONLY),
        (KernelParams(3, 0.5, 3), 3, Branch.NUMERIC_ONLY),
    ],
)
def test_classify_examples(params, p, branch):
    assert classify_regime(params, p).branch is branch


def test_p2_thresholds_reported():
    reg = classify_regime(KernelParams(3, 0.75, 4), 2)
    assert reg.threshold("alpha1") == pytest.approx(0.55635, abs=1e-5)
    assert reg.threshold("alpha2") == pytest.approx(0.94365, abs=1e-5)


valid_inputs = st.builds(
    lambda n, a, extra, p: (KernelParams(n, a, (n - 1) * (1 - 1 / p) + extra), p),
    st.integers(3, 7),
    st.floats(0, 4),
    st.floats(0.05, 5),
    st.sampled_from([1.0, 1.5, 2.0, 3.0, math.inf]),
)


@given(valid_inputs)
def test_classify_total_and_deterministic(case):
    params, p = case
    a, b = classify_regime(params, p), classify_regime(params, p)
    assert a == b and isinstance(a.branch, Branch)


@pytest.mark.parametrize(
    "params, p, expected",
    [
        (KernelParams(3, 1 / 3, 3), 1, 3.0),
        (KernelParams(3, 1, 3), "inf", -1.0),
        (KernelParams(4, 0, 4), 2, 3.5),
    ],
)
def test_xn_exponent_examples(params, p, expected):
    assert xn_exponent(params, p) == pytest.approx(expected, abs=1e-15)


@given(valid_inputs)
def test_pinf_exponent_form(case):
    params, _ = case
    n, a, b = params.n, params.alpha, params.beta
    if b > n - 1:
        assert xn_exponent(params, "inf") == -(n - 2 + b * (a - 1))


def _bound(c, e):
    return GradientBound(SharpConstant(c, Method.CLOSED_FORM, Branch.P1_OUTER), e)


@pytest.mark.parametrize(
    "c, e, x, expected", [(2 * math.pi, 2, 2, math.pi / 2), (1, 0, 17, 1), (2, -1, 3, 6)]
)
def test_coefficient_examples(c, e, x, expected):
    assert coefficient_at(_bound(c, e), x) == pytest.approx(expected, rel=1e-15)
    assert _bound(c, e).at(x) == pytest.approx(expected, rel=1e-15)


@given(st.floats(0.01, 100), st.floats(-3, 3), st.floats(1e-3, 1e3))
def test_coefficient_law(c, e, x):
    assert coefficient_at(_bound(c, e), x) == pytest.approx(c / x**e, rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_coefficient_rejects_nonpositive(x):
    with pytest.raises(ValueError):
        coefficient_at(_bound(1, 1), x)
