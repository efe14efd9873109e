import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexorder import (
    Affine,
    Angle,
    Monomial,
    ParameterError,
    PiecewiseLinear,
    binomial,
    expectation,
    random_piecewise_linear,
    builtin_family,
)


def test_angle_evaluation():
    f = Angle(F(1, 2))
    assert f(F(1, 4)) == 0
    assert f(F(1, 2)) == 0
    assert f(F(3, 4)) == F(1, 4)
    assert f(F(-3)) == 0


def test_monomial_evaluation_and_validation():
    assert Monomial(2)(F(-2, 3)) == F(4, 9)
    assert Monomial(4)(F(1, 2)) == F(1, 16)
    with pytest.raises(ParameterError):
        Monomial(3)
    with pytest.raises(ParameterError):
        Monomial(0)


def test_affine_evaluation():
    f = Affine(F(1), F(-2))
    assert f(F(1, 2)) == 0
    assert f(F(2)) == -3


def test_piecewise_linear_hand_values():
    f = PiecewiseLinear(F(0), (F(1, 2),), (F(-1), F(2)))
    assert f(F(0)) == 0
    assert f(F(1, 4)) == F(-1, 4)
    assert f(F(1, 2)) == F(-1, 2)
    assert f(F(3, 4)) == 0
    assert f(F(1)) == F(1, 2)
    assert f(F(-1)) == 1  # slope -1 extends left of all breakpoints


def test_piecewise_linear_multiple_breaks():
    f = PiecewiseLinear(F(1), (F(1, 3), F(2, 3)), (F(0), F(1), F(3)))
    assert f(F(1, 3)) == 1
    assert f(F(1, 2)) == 1 + F(1, 6)
    assert f(F(1)) == 1 + F(1, 3) + 3 * F(1, 3)


def test_piecewise_linear_validation():
    with pytest.raises(ParameterError):
        PiecewiseLinear(F(0), (F(1, 2),), (F(2), F(1)))  # slopes decrease
    with pytest.raises(ParameterError):
        PiecewiseLinear(F(0), (F(2, 3), F(1, 3)), (F(0), F(1), F(2)))
    with pytest.raises(ParameterError):
        PiecewiseLinear(F(0), (F(1, 2),), (F(1),))  # wrong slope count


@settings(max_examples=100, derandomize=True)
@given(
    st.integers(min_value=0, max_value=10**6),
    st.fractions(min_value=-2, max_value=3, max_denominator=24),
    st.fractions(min_value=-2, max_value=3, max_denominator=24),
)
def test_random_pwl_midpoint_convexity(seed, a, b):
    f = random_piecewise_linear(random.Random(seed))
    mid = (a + b) / 2
    assert 2 * f(mid) <= f(a) + f(b)


def test_random_pwl_deterministic_by_seed():
    assert random_piecewise_linear(random.Random(7)) == random_piecewise_linear(
        random.Random(7)
    )


def test_expectation_exact():
    d = binomial(2, F(1, 2))
    assert expectation(d, Monomial(2)) == F(1, 4) * 0 + F(1, 2) * 1 + F(1, 4) * 4
    assert expectation(d, Angle(F(1))) == F(1, 4)


def test_family_composition():
    fam = builtin_family(4, random_count=3, seed=11)
    angles = [f for f in fam if isinstance(f, Angle)]
    assert [f.c for f in angles] == [F(k, 4) for k in range(5)]
    assert sum(isinstance(f, Monomial) for f in fam) == 3
    assert sum(isinstance(f, Affine) for f in fam) == 1
    assert sum(isinstance(f, PiecewiseLinear) for f in fam) == 3
    assert fam == builtin_family(4, random_count=3, seed=11)
    assert fam != builtin_family(4, random_count=3, seed=12)
