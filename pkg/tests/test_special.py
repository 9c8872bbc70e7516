"""Gamma, zeta and xi on the real axis."""

from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tplab.errors import PoleProximityError
from tplab.numerics.precision import PrecisionConfig
from tplab.numerics.special import gamma_real, xi_real, zeta_real

TINY = mpmath.mpf("1e-45")


def _close(ball, ref, tol=TINY):
    return ball.contains(ref) and ball.rad < tol


def apery_zeta3(terms: int = 140) -> tuple[Fraction, Fraction]:
    """zeta(3) = 5/2 sum (-1)^(k+1) / (k^3 C(2k, k)), summed exactly.

    Alternating with decreasing terms, so the first omitted term bounds
    the remainder.
    """
    acc = Fraction(0)
    for k in range(1, terms + 1):
        acc += Fraction((-1) ** (k + 1), k**3 * comb(2 * k, k))
    rem = Fraction(1, (terms + 1) ** 3 * comb(2 * terms + 2, terms + 1))
    return Fraction(5, 2) * acc, Fraction(5, 2) * rem


def test_gamma_values(prec):
    with mpmath.workdps(60):
        assert _close(gamma_real(1, prec), 1)
        assert _close(gamma_real(mpmath.mpf(0.5), prec), mpmath.sqrt(mpmath.pi))
        assert _close(gamma_real(5, prec), 24)


def test_gamma_refuses_poles(prec):
    with pytest.raises(PoleProximityError):
        gamma_real(0, prec)
    with pytest.raises(PoleProximityError):
        gamma_real(-3, prec)


def test_zeta_classical_values(prec):
    with mpmath.workdps(60):
        assert _close(zeta_real(2, prec), mpmath.pi**2 / 6)
        assert _close(zeta_real(0, prec), mpmath.mpf(-0.5))


def test_zeta3_against_exact_alternating_series(prec):
    value, rem = apery_zeta3()
    assert rem < Fraction(1, 10**80)
    z = zeta_real(3, prec)
    with mpmath.workdps(80):
        ref = mpmath.mpf(value.numerator) / value.denominator
        # the oracle is itself an interval of half-width rem
        assert abs(z.mid - ref) <= z.rad + mpmath.mpf(rem.numerator) / rem.denominator + mpmath.mpf(10) ** -75
        assert z.rad < TINY


def test_xi_special_points(prec):
    with mpmath.workdps(60):
        assert _close(xi_real(0, prec), mpmath.mpf(0.5))
        assert _close(xi_real(1, prec), mpmath.mpf(0.5))
        assert _close(xi_real(2, prec), mpmath.pi / 6)
    a, b = xi_real(3, prec), xi_real(-2, prec)
    assert abs(a.mid - b.mid) <= a.rad + b.rad
    # rational arguments are accepted like everywhere else
    c, d = xi_real(Fraction(1, 2), prec), xi_real(mpmath.mpf(0.5), prec)
    assert abs(c.mid - d.mid) <= c.rad + d.rad


@settings(max_examples=1000, deadline=None)
@given(st.floats(min_value=-10, max_value=11))
def test_xi_functional_equation(sigma):
    p = PrecisionConfig(digits=20)
    with mpmath.workdps(60):
        mirror = 1 - mpmath.mpf(sigma)  # exact for a double
    a, b = xi_real(sigma, p), xi_real(mirror, p)
    assert abs(a.mid - b.mid) <= a.rad + b.rad


def test_xi_positive_on_sample_grid():
    p = PrecisionConfig(digits=30)
    for k in range(-60, 61):
        assert xi_real(mpmath.mpf(k) / 2 + mpmath.mpf("0.137"), p).is_positive()


def test_xi_growth_rate_approaches_one_half():
    # ln xi(s) / (s ln s) = 1/2 - (ln 2pi + 1) / (2 ln s) + o(1/ln s): the
    # limit 1/2 is approached only logarithmically
    sigmas = [50, 80, 120, 200, 1000, 10**5]
    ratios = []
    for s in sigmas:
        v = xi_real(s, PrecisionConfig(digits=30))
        ratios.append(mpmath.log(v.mid) / (s * mpmath.log(s)))
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert 0.15 < ratios[0] and ratios[-1] < 0.5
    for s, r in zip(sigmas, ratios):
        predicted = 0.5 - (mpmath.log(2 * mpmath.pi) + 1) / (2 * mpmath.log(s))
        assert abs(r - predicted) < mpmath.log(s) / (2 * s)


@pytest.mark.parametrize("func,arg", [(gamma_real, "2.5"), (zeta_real, "1.5"), (zeta_real, "-3.25"), (xi_real, "0.5"), (xi_real, "7.75")])
def test_higher_precision_is_nested(func, arg):
    lo = func(mpmath.mpf(arg), PrecisionConfig(digits=30))
    with mpmath.workdps(90):
        hi = func(mpmath.mpf(arg), PrecisionConfig(digits=70))
        assert hi.lower >= lo.lower and hi.upper <= lo.upper
