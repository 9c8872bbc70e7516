"""Taylor data of xi at 1/2, the Xi_1 reduction and Xi on the real line."""

import mpmath
import pytest

from tplab.errors import LengthError
from tplab.numerics.precision import PrecisionConfig
from tplab.numerics.special import xi_real
from tplab.numerics.xi import big_xi, xi1_series, xi_series_at_half


def mp_xi(s):
    """Reference xi from mpmath's own gamma and zeta."""
    return s * (s - 1) / 2 * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)


def test_constant_term_is_xi_half(prec):
    ps = xi_series_at_half(6, prec)
    v = xi_real(mpmath.mpf(0.5), prec)
    assert abs(ps[0].mid - v.mid) <= ps[0].rad + v.rad


def test_odd_coefficients_vanish(prec):
    ps = xi_series_at_half(9, prec)
    for k in range(1, 10, 2):
        assert ps[k].contains(0)


def test_second_coefficient_against_numerical_derivative(prec):
    ps = xi_series_at_half(4, prec)
    with mpmath.workdps(2 * prec.work_dps):
        ref = mpmath.diff(mp_xi, mpmath.mpf(0.5), 2)
        assert ref > 0
        assert ps[2].contains(ref)
        assert ps[2].rad < mpmath.mpf("1e-30")


def test_xi1_leading_coefficient(prec):
    ps = xi1_series(4, prec)
    v = xi_real(mpmath.mpf(0.5), prec)
    assert abs(ps[0].mid - v.mid) <= ps[0].rad + v.rad


def test_xi1_degenerate_truncation(prec):
    assert len(xi1_series(0, prec)) == 1


def test_xi1_rejects_negative_length(prec):
    with pytest.raises(LengthError):
        xi_series_at_half(-1, prec)


@pytest.mark.parametrize("sigma", ["0.25", "0.5"])
def test_xi1_reproduces_xi_on_both_sides(prec, sigma):
    ps = xi1_series(12, prec)  # truncation error below 1e-30 for sigma <= 1/2
    with mpmath.workdps(70):
        sig = mpmath.mpf(sigma)
        plus = ps.evaluate(sig**2)
        minus = ps.evaluate(-(sig**2))
        # Xi_1(sigma^2) = xi(1/2 + sigma)
        direct = xi_real(mpmath.mpf(0.5) + sig, prec)
        assert abs(plus.mid - direct.mid) < mpmath.mpf("1e-30")
        # Xi_1(-sigma^2) = Xi(sigma) = xi(1/2 + i sigma), which is real
        ref = mp_xi(mpmath.mpf(0.5) + 1j * sig)
        assert abs(ref.imag) < mpmath.mpf("1e-60")
        assert abs(minus.mid - ref.real) < mpmath.mpf("1e-30")
        assert big_xi(sig, prec).contains(ref.real)


def test_xi1_coefficients_positive(prec):
    assert all(c.is_positive() for c in xi1_series(8, prec))


def test_big_xi_is_even_and_below_xi_half(prec):
    a, b = big_xi(mpmath.mpf(1.5), prec), big_xi(mpmath.mpf(-1.5), prec)
    assert abs(a.mid - b.mid) <= a.rad + b.rad
    assert a.upper < xi_real(mpmath.mpf(0.5), prec).lower
