import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from sharpgrad.errors import OutOfRegime
from sharpgrad.roots import alpha_root, alpha_root_sides, root_table, thm1_thresholds, thm3_thresholds
from sharpgrad.specialfn import gamma_ratio

PUBLISHED = {
    3: [1.2865, 1.4101, 1.4788, 1.521, 1.5482, 1.5664],
    4: [1.207, 1.3079, 1.3698, 1.4115, 1.4413, 1.4631],
    5: [1.1623, 1.2469, 1.3016, 1.3403, 1.3693, 1.3917],
    6: [1.1316, 1.2063, 1.2548, 1.2903, 1.3176, 1.3393],
}


def mp_root(n, beta):
    """Independent root at 40 digits with mpmath's own Gamma."""
    mpmath.mp.dps = 40
    ratio = mpmath.gamma(mpmath.mpf(beta - n) / 2 + 1) / mpmath.gamma(mpmath.mpf(beta - n + 1) / 2)
    f = lambda a: 2 * ratio / mpmath.sqrt(mpmath.pi) / (beta * (a - 1) + n - 1) - (a - 1) / (
        1 + mpmath.sqrt(1 + (a - 1) ** 2)
    )
    return float(mpmath.findroot(f, (mpmath.mpf("1.0000001"), mpmath.mpf(4)), solver="anderson"))


@pytest.mark.parametrize("beta, expected", [(3, (2 / 3, 2)), (8, (0.75, 1.5))])
def test_thm1_examples(beta, expected):
    tp = thm1_thresholds(beta)
    assert (tp.alpha1, tp.alpha2) == pytest.approx(expected, rel=1e-14)


def test_thm1_small_beta_limits():
    tp = thm1_thresholds(1e-4)
    assert tp.alpha1 == pytest.approx(0.5, abs=2e-5)
    assert tp.alpha2 > 1e4


@given(st.floats(1e-6, 1e4))
def test_thm1_ratio_relation(beta):
    tp = thm1_thresholds(beta)
    s = math.sqrt(1 + beta)
    assert tp.alpha1 <= tp.alpha2
    # (s + 1)/(s - 1) written as (s + 1)^2 / beta to keep the reference exact for small beta
    assert tp.alpha2 == pytest.approx(tp.alpha1 * (s + 1) ** 2 / beta, rel=1e-12)


@pytest.mark.parametrize(
    "n, beta, expected",
    [(3, 3, (0.5, 5 / 6)), (3, 4, ((30 - math.sqrt(60)) / 40, (30 + math.sqrt(60)) / 40)), (3, 2, (0.5, 0.5))],
)
def test_thm3_examples(n, beta, expected):
    tp = thm3_thresholds(n, beta)
    assert (tp.alpha1, tp.alpha2) == pytest.approx(expected, rel=1e-14)


def test_thm3_below_range():
    with pytest.raises(OutOfRegime):
        thm3_thresholds(3, 1.5)


@pytest.mark.parametrize("n, beta, expected", [(3, 3, 1.4101), (4, 5, 1.4115), (6, 8, 1.3393)])
def test_alpha_root_examples(n, beta, expected):
    r = alpha_root(n, beta)
    assert r.value == pytest.approx(expected, abs=1e-3)
    assert r.value > 1 and abs(r.residual) <= 1e-12


def test_alpha_root_out_of_regime():
    with pytest.raises(OutOfRegime):
        alpha_root(3, 2.0)


@given(st.integers(3, 8), st.floats(0.05, 10))
def test_alpha_root_brackets(n, excess):
    beta = n - 1 + excess
    r = alpha_root(n, beta)
    lhs, rhs = alpha_root_sides(n, beta)
    assert lhs(r.value - 1e-6) > rhs(r.value - 1e-6)
    assert lhs(r.value + 1e-6) < rhs(r.value + 1e-6)
    assert abs(lhs(r.value) - rhs(r.value)) <= 1e-12


@pytest.mark.parametrize("n, beta", [(n, n - 0.5 + 0.5 * j) for n in range(3, 7) for j in range(6)])
def test_root_matches_high_precision(n, beta):
    assert alpha_root(n, beta).value == pytest.approx(mp_root(n, beta), abs=1e-10)


def test_published_table_all_but_one_entry():
    # the n = 6, beta = 5.5 entry is off by ~2e-3; see test_acceptance for the full criterion
    rows = root_table()
    for n, beta, r in rows:
        j = int(round(2 * (beta - n + 0.5)))
        if (n, beta) == (6, 5.5):
            assert r.value == pytest.approx(1.13360, abs=1e-5)
            continue
        assert r.value == pytest.approx(PUBLISHED[n][j], abs=5e-5), (n, beta)


def test_sides_use_gamma_ratio():
    lhs, _ = alpha_root_sides(3, 3)
    expected = 2 * gamma_ratio(1, 0.5) / math.sqrt(math.pi) / (3 * 0.5 + 2)
    assert lhs(1.5) == pytest.approx(expected, rel=1e-14)
