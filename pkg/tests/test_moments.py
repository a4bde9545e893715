from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from sumscore.errors import InvalidScaleError
from sumscore.moments import (
    Dichotomous,
    Likert,
    dichotomous_moments,
    discrete_moments,
    likert_moments,
    symmetric_deviation_sum,
)


def enumerate_variance(values):
    """Brute-force oracle: population variance of equally likely values."""
    n = len(values)
    mean = Fraction(sum(values), n)
    return mean, sum((Fraction(v) - mean) ** 2 for v in values) / n


@pytest.mark.parametrize("k,mean,var", [
    (3, Fraction(2), Fraction(2, 3)),
    (5, Fraction(3), Fraction(2)),
    (7, Fraction(4), Fraction(4)),
])
def test_likert_examples(k, mean, var):
    m = likert_moments(k)
    assert (m.mean, m.variance) == (mean, var)
    assert enumerate_variance(list(range(1, k + 1))) == (mean, var)


def test_likert_definitional_sum_matches_closed_form():
    for k in range(3, 1001):
        by_sum = discrete_moments(range(1, k + 1))
        assert by_sum.variance == Fraction(k * k - 1, 12) == likert_moments(k).variance
        assert by_sum.mean == likert_moments(k).mean


@pytest.mark.parametrize("k", [2, 1, 0, -4, 1001])
def test_likert_rejects_bad_k(k):
    with pytest.raises(InvalidScaleError, match="k must be"):
        likert_moments(k)


def test_likert_rejects_non_integer():
    with pytest.raises(InvalidScaleError):
        likert_moments(5.0)
    with pytest.raises(InvalidScaleError):
        Likert(True)


def test_cap_is_configurable():
    assert likert_moments(2000, max_k=5000).variance == Fraction(2000**2 - 1, 12)


@pytest.mark.parametrize("low,high,var", [(1, 5, 4), (1, 3, 1), (-2, 0, 1)])
def test_dichotomous_examples(low, high, var):
    m = dichotomous_moments(low, high)
    assert m.variance == var
    assert m.mean == Fraction(low + high, 2)
    assert discrete_moments([low, high]).variance == var


@pytest.mark.parametrize("low,high", [(3, 3), (4, 1)])
def test_dichotomous_rejects_collapsed(low, high):
    with pytest.raises(InvalidScaleError, match="high > low"):
        dichotomous_moments(low, high)


def test_dichotomous_rejects_non_integer_endpoint():
    with pytest.raises(InvalidScaleError):
        Dichotomous(1, 2.5)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**4))
def test_dichotomous_variance_is_translation_invariant(a, r):
    assert dichotomous_moments(a, a + r).variance == Fraction(r * r, 4)
    assert dichotomous_moments(a, a + r) .variance == dichotomous_moments(1, 1 + r).variance


@given(st.integers(1, 10**4))
def test_dichotomous_variance_increasing_in_range(r):
    assert dichotomous_moments(1, 2 + r).variance > dichotomous_moments(1, 1 + r).variance


@pytest.mark.parametrize("k,s", [(5, Fraction(5)), (4, Fraction(5, 2)), (7, Fraction(14))])
def test_symmetric_deviation_sum_examples(k, s):
    assert symmetric_deviation_sum(k) == s


def test_symmetric_sum_equals_four_variances_both_parities():
    for k in range(3, 1001):
        assert Fraction(8, k) * symmetric_deviation_sum(k) == 4 * likert_moments(k).variance


def test_symmetric_sum_is_half_of_full_deviation_sum():
    # the lower half mirrors the upper half; odd k's centre adds zero
    for k in range(3, 60):
        full = sum((Fraction(i) - Fraction(k + 1, 2)) ** 2 for i in range(1, k + 1))
        assert 2 * symmetric_deviation_sum(k) == full


def test_weighted_definitional_moments():
    m = discrete_moments([1, 2, 3], [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)])
    # enumerate the 4-point equal-weight multiset {1, 1, 2, 3}
    assert (m.mean, m.variance) == enumerate_variance([1, 1, 2, 3])


def test_scale_supports():
    assert Likert(4).support == (1, 2, 3, 4)
    assert Dichotomous(0, 3).support == (0, 3)
    assert list(product(*[Dichotomous(1, 2).support] * 2)) == [(1, 1), (1, 2), (2, 1), (2, 2)]
