"""Taylor data of ``u -> xi(1/2 + u)`` from real-axis samples only.

The function is even, so it is sampled on ``[0, h]`` and interpolated at
Chebyshev points of ``[-h, h]``; the Chebyshev expansion is converted to
monomials exactly (integer Chebyshev coefficient tables).  Two fits with
different ``(h, degree)`` are compared and ten times their discrepancy is
used as the coefficient radius.  The fits run at twice the working
precision because the monomial conversion cancels heavily.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

import mpmath
from mpmath import mpf

from ..errors import LengthError, PrecisionExhaustedError
from .ball import Ball
from .precision import PrecisionConfig
from .series import PowerSeries
from .special import xi_real

COEFF_CAP = 24
# Taylor terms used for evaluating Xi on the critical line
BIG_XI_TERMS = 48

__all__ = [
    "COEFF_CAP",
    "chebyshev_taylor",
    "xi_series_at_half",
    "xi1_series",
    "big_xi",
    "xi_even_coefficients",
]


@lru_cache(maxsize=8)
def _chebyshev_monomials(n_max: int) -> tuple:
    """Integer monomial coefficients of T_0 .. T_{n_max}."""
    rows = [[1], [0, 1]]
    for n in range(2, n_max + 1):
        a = [0] + [2 * x for x in rows[n - 1]]
        b = rows[n - 2] + [0] * (len(a) - len(rows[n - 2]))
        rows.append([x - y for x, y in zip(a, b)])
    return tuple(tuple(r) for r in rows[: n_max + 1])


def chebyshev_taylor(func, h, degree: int, dps: int) -> list:
    """Monomial coefficients of the Chebyshev interpolant of an even ``func`` on [-h, h].

    ``func`` receives a non-negative mpf ``u`` and returns an mpf.
    """
    with mpmath.workdps(dps):
        h = mpf(h)
        m1 = degree + 1
        thetas = [mpmath.pi * (j + mpf(0.5)) / m1 for j in range(m1)]
        values = {}
        fs = []
        for j, th in enumerate(thetas):
            # nodes j and m1-1-j are mirror images; evaluate once
            key = min(j, m1 - 1 - j)
            if key not in values:
                values[key] = func(abs(h * mpmath.cos(th)))
            fs.append(values[key])
        cheb = []
        for n in range(m1):
            acc = mpmath.fsum(fs[j] * mpmath.cos(n * thetas[j]) for j in range(m1))
            cheb.append(2 * acc / m1)
        cheb[0] /= 2
        table = _chebyshev_monomials(degree)
        out = []
        hk = mpf(1)
        for k in range(m1):
            acc = mpmath.fsum(cheb[n] * table[n][k] for n in range(k, m1) if k < len(table[n]))
            out.append(acc / hk)
            hk *= h
        return out


def xi_even_coefficients(n: int, digits: int) -> tuple:
    """Balls for ``a_0, a_1, ..., a_n`` with ``xi(1/2+u) = sum a_k u^k``."""
    if n > BIG_XI_TERMS:
        return _fit_coefficients(n, digits)
    return _fit_coefficients(BIG_XI_TERMS, digits)[: n + 1]


@lru_cache(maxsize=16)
def _fit_coefficients(n: int, digits: int) -> tuple:
    prec = PrecisionConfig(digits=digits)
    dps = 2 * prec.work_dps
    sample_prec = PrecisionConfig(digits=dps - prec.guard)
    degree = max(2 * n + 24, int(0.75 * dps))

    def sample(u):
        return xi_real(mpf(0.5) + u, sample_prec).mid

    fit_a = chebyshev_taylor(sample, 2, degree, dps)
    fit_b = chebyshev_taylor(sample, 3, degree + 16, dps)
    out = []
    with mpmath.workdps(dps):
        floor = mpf(10) ** (-(dps - 8))
        for k in range(n + 1):
            if k % 2:
                out.append(Ball(0))
                continue
            diff = abs(fit_a[k] - fit_b[k])
            rad = 10 * diff + floor * abs(fit_a[k])
            if rad >= abs(fit_a[k]):
                raise PrecisionExhaustedError(f"cannot certify Taylor coefficient {k} of xi at 1/2")
            out.append(Ball(fit_a[k], rad))
    return tuple(out)


def xi_series_at_half(N: int, prec: PrecisionConfig | None = None) -> PowerSeries:
    """Factorial-normalized Taylor series of ``u -> xi(1/2 + u)`` up to index N.

    Odd coefficients are exactly zero because ``xi(1/2 + u) = xi(1/2 - u)``.
    """
    prec = prec or PrecisionConfig()
    if N < 0 or N > COEFF_CAP:
        raise LengthError(f"N must lie in [0, {COEFF_CAP}]")
    a = xi_even_coefficients(max(N, 2), prec.digits)
    with mpmath.workdps(2 * prec.work_dps):
        return PowerSeries([a[k] * factorial(k) for k in range(N + 1)])


def xi1_series(N: int, prec: PrecisionConfig | None = None) -> PowerSeries:
    """Series of ``Xi_1`` with ``Xi(s) = Xi_1(-s^2)``: ``beta_m = m! a_{2m}``."""
    prec = prec or PrecisionConfig()
    if 2 * N > COEFF_CAP:
        raise LengthError(f"xi1_series needs 2N <= {COEFF_CAP}")
    a = xi_even_coefficients(max(2 * N, 2), prec.digits)
    with mpmath.workdps(2 * prec.work_dps):
        coeffs = [a[2 * m] * factorial(m) for m in range(N + 1)]
    for m, c in enumerate(coeffs):
        if not c.is_positive():
            raise PrecisionExhaustedError(f"Xi_1 coefficient {m} not certified positive")
    return PowerSeries(coeffs)


def big_xi(t, prec: PrecisionConfig | None = None, rho=20) -> Ball:
    """``Xi(t) = xi(1/2 + i t)`` for real ``t`` via the even Taylor series.

    All even coefficients are positive, so ``a_{2m} rho^{2m} <= xi(1/2 + rho)``
    and the omitted tail is bounded by a geometric series; only real-axis
    values of xi enter.
    """
    prec = prec or PrecisionConfig()
    a = xi_even_coefficients(BIG_XI_TERMS, prec.digits)
    with prec.context():
        t = mpf(t)
        rho = mpf(rho)
        q = (t / rho) ** 2
        if q >= mpf(0.25):
            raise PrecisionExhaustedError("|t| too large for the stored Taylor data")
        acc = Ball(0)
        tt = Ball(-(t * t))
        power = Ball(1)
        for m in range(BIG_XI_TERMS // 2 + 1):
            acc = acc + a[2 * m] * power
            power = power * tt
        bound = xi_real(mpf(0.5) + rho, prec).upper
        tail = bound * q ** (BIG_XI_TERMS // 2 + 1) / (1 - q)
        return acc.inflate(tail)
