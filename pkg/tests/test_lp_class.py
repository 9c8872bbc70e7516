"""Laguerre-Polya algebra: evaluation, series, reciprocals and coefficient tests."""

import random
from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest

from tplab.errors import DomainError, ZeroAtOriginError
from tplab.lp_class import (
    LPFactorization,
    OneSidedFactorization,
    apply_series_operator,
    hankel_psd,
    jensen,
    lp_eval,
    lp_series,
    lp_truncate,
    multiplier_apply,
    pf_sequence_minors,
    series_reciprocal,
    turan_deltas,
)
from tplab.numerics.ball import Ball
from tplab.numerics.series import PowerSeries
from tplab.pff_catalog import get_entry
from tplab.polyzero import Polynomial, binomial_polynomial, random_exact_polynomial

ONES = PowerSeries([1] * 14)
ONE_PLUS_S = PowerSeries([1, 1] + [0] * 10)


def test_lp_eval_trivial_and_catalog_values(prec):
    assert lp_eval(LPFactorization(gamma=1), 0, prec).contains(1)
    with mpmath.workdps(60):
        gumbel = get_entry("gumbel").factorization
        v = lp_eval(gumbel, 1, prec)
        assert v.contains(1)
        sine = get_entry("logistic").factorization
        w = lp_eval(sine, mpmath.mpf(0.5), prec)
        assert w.contains(1 / mpmath.pi)
    # the stored zeros are finite, so the radius carries the omitted tail
    assert v.rad < 0.05 and w.rad < 0.05


def test_pure_exponential_rejected():
    with pytest.raises(DomainError):
        LPFactorization(delta=1)


def test_paired_zeros_validated():
    with pytest.raises(DomainError):
        LPFactorization(zeros=[1, 1], paired=True)


def test_truncation_examples():
    assert lp_truncate(LPFactorization(C=3, gamma=1), 0).coeffs == (3,)
    sine = LPFactorization(m=1, zeros=[1, -1, Fraction(1, 2), Fraction(-1, 2)], paired=True)
    expected = Polynomial([0, 1]) * Polynomial([1, -1]) * Polynomial([1, 1]) * Polynomial([1, Fraction(-1, 2)]) * Polynomial([1, Fraction(1, 2)])
    assert lp_truncate(sine, 2).coeffs == expected.coeffs


def test_series_examples(prec):
    # a lone factor (1 + s), without the exp(-s) convergence factor
    assert lp_series(OneSidedFactorization(zeros=[1]), 5, prec).coeffs == (1, 1, 0, 0, 0, 0)
    # with it: (1 + s) e^(-s) = sum (-1)^(j+1) (j - 1) s^j / j!
    assert lp_series(LPFactorization(zeros=[1]), 5, prec).coeffs == (1, 0, -1, 2, -3, 4)
    with pytest.raises(ZeroAtOriginError):
        lp_series(LPFactorization(m=1, zeros=[1]), 3, prec)
    with mpmath.workdps(60):
        g = 1 / (4 * mpmath.pi)
        ps = lp_series(LPFactorization(gamma=Ball(g)), 8, prec)
    with mpmath.workdps(120):
        for j in range(9):
            ref = 0 if j % 2 else factorial(j) * (-g) ** (j // 2) / factorial(j // 2)
            assert ps[j].contains(ref)


def test_reciprocal_examples():
    r = series_reciprocal(ONE_PLUS_S)
    assert r.coeffs == tuple((-1) ** j * factorial(j) for j in range(12))
    assert series_reciprocal(ONES).coeffs == tuple((-1) ** j for j in range(14))


def test_jensen_examples():
    assert jensen(ONES, 3)[0].coeffs == (1, 3, 3, 1)
    b = PowerSeries([2, 5, 7])
    assert jensen(b, 1)[0].coeffs == (2, 5)
    for n in range(13):
        assert jensen(ONES, n)[0].coeffs == binomial_polynomial(n).coeffs


def test_turan_examples():
    assert turan_deltas(PowerSeries([1, 1, 0, 0, 0])) == [1, 0, 0]
    d = turan_deltas(PowerSeries([1, 0, 3, 0, 5, 0, 7]))
    assert d[1] == 9 and d[3] == 25


def test_turan_nonnegative_for_class_members(prec):
    rng = random.Random("lp:turan")
    for _ in range(20):
        zeros = [Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 6)) for _ in range(rng.randint(1, 5))]
        ps = lp_series(LPFactorization(C=Fraction(rng.randint(1, 4)), gamma=Fraction(rng.randint(0, 3), 5), zeros=zeros), 8, prec)
        assert all(d >= 0 for d in turan_deltas(ps))


def test_hankel_examples():
    r = series_reciprocal(ONE_PLUS_S)
    v = hankel_psd(r, 2)
    assert v.matrix == ((1, -1), (-1, 2))
    assert v.status == "certified-positive-definite"
    for n in range(1, 5):
        assert hankel_psd(r, n).status == "certified-positive-definite"


def test_multiplier_examples():
    rng = random.Random("lp:multiplier")
    for _ in range(100):
        roots = [Fraction(-rng.randint(0, 9), rng.randint(1, 4)) for _ in range(rng.randint(0, 6))]
        p = Polynomial.from_roots(roots, lead=rng.randint(1, 5))
        assert multiplier_apply(ONES, p).coeffs == p.coeffs
    q = multiplier_apply(ONE_PLUS_S, Polynomial([0, 1, 1]))
    assert q.coeffs == (0, 1)


def test_series_operator_examples():
    shift = apply_series_operator(ONES, Polynomial([0, 0, 1]))
    assert shift.coeffs == (1, 2, 1)
    p = Polynomial([3, -1, 4, 1, -5])
    assert apply_series_operator(PowerSeries([1] + [0] * 6), p).coeffs == p.coeffs


def test_series_operator_inverse_property(prec):
    rng = random.Random("lp:inverse")
    with mpmath.workdps(60):
        ps = lp_series(LPFactorization(gamma=Ball(1 / (4 * mpmath.pi)), zeros=[1, Fraction(-1, 3)]), 9, prec)
        inv = series_reciprocal(ps, prec)
        for _ in range(10):
            p = random_exact_polynomial(rng, 8)
            back = apply_series_operator(ps, apply_series_operator(inv, p.to_balls(), prec), prec)
            for c, ref in zip(back.coeffs, p.coeffs):
                assert c.contains(mpmath.mpf(ref.numerator) / ref.denominator)


def test_reciprocal_times_series_is_one(prec):
    rng = random.Random("lp:recip-eval")
    fac = LPFactorization(gamma=Fraction(1, 7), zeros=[Fraction(1, 2), Fraction(-1, 3)])
    ps = lp_series(fac, 30, prec)
    inv = series_reciprocal(ps, prec).as_balls()
    with mpmath.workdps(60):
        for _ in range(100):
            s = mpmath.mpf(rng.uniform(-0.2, 0.2))
            prod = lp_eval(fac, s, prec) * inv.evaluate(s)
            # truncating the reciprocal at s^30 costs about 0.5^30
            assert abs(prod.mid - 1) <= prod.rad + mpmath.mpf("1e-8")


def test_pf_sequence_examples():
    assert pf_sequence_minors([1, 1, 0, 0, 0], 3).status == "certified-nonnegative"
    v = pf_sequence_minors([1, 0, 1, 0, 0], 2)
    assert v.status == "certified-not" and v.worst_minor == -1
    assert (v.worst_rows, v.worst_cols) == ((0, 1), (1, 2))
    inv_fact = [Fraction(1, factorial(n)) for n in range(7)]
    assert pf_sequence_minors(inv_fact, 3).status == "certified-nonnegative"


def test_one_sided_series_and_eval(prec):
    fac = OneSidedFactorization(zeros=[1])
    assert lp_series(fac, 3, prec).coeffs == (1, 1, 0, 0)
    assert lp_eval(fac, 2, prec).contains(3)
