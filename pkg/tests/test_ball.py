from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpf

from tplab.errors import DomainError
from tplab.numerics.ball import Ball, as_ball, ball_sum, to_mpf

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
radius = st.floats(min_value=0, max_value=1e-3)


def _sample_points(b: Ball):
    # interior points; the reference arithmetic below runs at higher precision
    with mpmath.workdps(80):
        return [b.mid - b.rad / 2, b.mid, b.mid + b.rad / 2]


@settings(max_examples=150, deadline=None)
@given(finite, radius, finite, radius)
def test_arithmetic_encloses_pointwise_results(a, ra, b, rb):
    with mpmath.workdps(30):
        x, y = Ball(a, ra), Ball(b, rb)
        results = {"+": x + y, "-": x - y, "*": x * y}
        if not y.contains_zero():
            results["/"] = x / y
    with mpmath.workdps(80):
        for u in _sample_points(x):
            for v in _sample_points(y):
                assert results["+"].contains(u + v)
                assert results["-"].contains(u - v)
                assert results["*"].contains(u * v)
                if "/" in results:
                    assert results["/"].contains(u / v)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-20, max_value=20), radius)
def test_exp_and_cos_enclose(a, r):
    with mpmath.workdps(30):
        x = Ball(a, r)
        e, c = x.exp(), x.cos()
    with mpmath.workdps(80):
        for u in _sample_points(x):
            assert e.contains(mpmath.exp(u))
            assert c.contains(mpmath.cos(u))


def test_division_by_ball_containing_zero():
    with pytest.raises(ZeroDivisionError):
        Ball(1) / Ball(0, mpf("1e-10"))


def test_negative_radius_rejected():
    with pytest.raises(DomainError):
        Ball(1, -1)


def test_exact_conversions():
    assert as_ball(Fraction(1, 4)).rad == 0
    third = as_ball(Fraction(1, 3))
    assert third.rad > 0 and third.contains(mpf(1) / 3)
    assert to_mpf(Fraction(1, 2)) == mpf(0.5)
    assert to_mpf(Ball(3, 1)) == 3


def test_constants_enclose_reference():
    with mpmath.workdps(60):
        consts = [Ball.pi(), Ball.euler(), Ball.ln2()]
    with mpmath.workdps(100):
        refs = [+mpmath.pi, +mpmath.euler, mpmath.log(2)]
        for b, ref in zip(consts, refs):
            assert b.contains(ref)


def test_three_valued_sign():
    assert Ball(1, mpf("0.5")).sign() == 1
    assert Ball(-1, mpf("0.5")).sign() == -1
    assert Ball(0, mpf("0.5")).sign() is None


def test_ball_sum_encloses():
    with mpmath.workdps(40):
        items = [Ball(mpf(1) / k, mpf("1e-30")) for k in range(1, 50)]
        total = ball_sum(items)
        assert total.contains(mpmath.harmonic(49))


def test_negation_and_abs_are_exact_at_any_context_precision():
    with mpmath.workdps(60):
        b = Ball(mpmath.mpf(1) / 3, mpmath.mpf("1e-55"))
    neg, mag = -b, abs(-b)  # default 15-digit context here
    assert neg.mid + b.mid == 0 and neg.rad == b.rad
    assert mag.mid == b.mid and mag.rad == b.rad
