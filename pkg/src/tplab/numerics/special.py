"""Real-axis Gamma, zeta and Riemann xi with certified error radii.

* Gamma: Stirling series for ``log Gamma`` after shifting the argument up
  with the recurrence; for real ``z > 0`` the remainder is bounded by the
  first omitted term.  Reflection handles ``sigma < 1/2``.
* zeta: alternating (eta) series with Cohen-Rodriguez Villegas-Zagier
  acceleration on ``(0, 2)``; Euler-Maclaurin on ``[2, oo)``; the
  functional equation for ``sigma <= 0``.
* xi: ``(s - 1) pi^(-s/2) Gamma(s/2 + 1) zeta(s)`` on ``s >= 1/2`` and the
  symmetry ``xi(s) = xi(1 - s)`` elsewhere.  The ``(s - 1) zeta(s)`` pole
  cancellation near ``s = 1`` is done analytically.

Inner loops run on raw ``mpf`` values with an explicit rounding budget
(term count times ulp times the sum of absolute values); the few final
combinations use :class:`Ball` arithmetic.
"""

from __future__ import annotations

from functools import lru_cache

import mpmath
from mpmath import mpf

from ..errors import PoleProximityError, PrecisionExhaustedError
from .ball import Ball, to_mpf
from .precision import PrecisionConfig

__all__ = ["gamma_real", "loggamma_pos", "zeta_real", "eta_real", "xi_real", "xi_lower_bound"]

_DEFAULT = PrecisionConfig()


def _eps() -> mpf:
    return mpmath.ldexp(mpf(1), -mpmath.mp.prec)


def _real(x) -> mpf:
    if isinstance(x, Ball):
        if x.rad:
            raise TypeError("expected an exact real, got a ball with positive radius")
        return x.mid
    return to_mpf(x)


@lru_cache(maxsize=64)
def _bernoulli_even(count: int, dps: int) -> tuple:
    with mpmath.workdps(dps):
        return tuple(mpmath.bernoulli(2 * k) for k in range(1, count + 1))


def loggamma_pos(z: mpf, prec: PrecisionConfig) -> tuple[mpf, mpf]:
    """``(value, abs_error)`` for ``log Gamma(z)``, real ``z >= 1/2``.

    Caller must already be inside the working-precision context.
    """
    eps = _eps()
    target = mpf(10) ** (-(prec.work_dps + 2))
    z0 = max(mpf(10), mpf(prec.work_dps) * mpf("0.55"))
    shift = 0
    zz = z
    if zz < z0:
        shift = int(mpmath.ceil(z0 - zz))
        zz = zz + shift
    # log of the recurrence product z (z+1) ... (z+shift-1)
    logprod = mpf(0)
    if shift:
        prod = mpf(1)
        for k in range(shift):
            prod *= z + k
        logprod = mpmath.log(prod)
    lz = mpmath.log(zz)
    val = (zz - mpf(0.5)) * lz - zz + mpmath.log(2 * mpmath.pi) / 2
    absum = abs(val)
    nterms = max(8, int(prec.work_dps))
    bern = _bernoulli_even(nterms + 1, mpmath.mp.dps)
    zinv = 1 / zz
    zinv2 = zinv * zinv
    zpow = zinv
    remainder = None
    for k in range(1, nterms + 1):
        if k > prec.max_terms:
            break
        term = bern[k - 1] / (2 * k * (2 * k - 1)) * zpow
        val += term
        absum += abs(term)
        zpow *= zinv2
        nxt = abs(bern[k]) / ((2 * k + 2) * (2 * k + 1)) * zpow
        if nxt < target * max(1, abs(val)):
            remainder = nxt
            break
    if remainder is None:
        raise PrecisionExhaustedError("Stirling series did not reach the target at max_terms")
    val -= logprod
    err = remainder + (4 * nterms + 8 + shift) * eps * (absum + abs(logprod) + abs(lz) * abs(zz))
    return val, err


def _check_pole(sigma: mpf, prec: PrecisionConfig):
    if sigma > 0:
        return
    dist = abs(sigma - mpmath.nint(sigma))
    if dist <= mpf(10) ** (-(prec.digits - 5)):
        raise PoleProximityError(f"Gamma has a pole at {mpmath.nint(sigma)} (sigma={sigma})")


def gamma_real(sigma, prec: PrecisionConfig = _DEFAULT) -> Ball:
    """Certified enclosure of ``Gamma(sigma)`` for real ``sigma`` off the poles."""
    with prec.context():
        s = _real(sigma)
        _check_pole(s, prec)
        if s >= mpf(0.5):
            lg, err = loggamma_pos(s, prec)
            return Ball(lg, err).exp()
        # reflection: Gamma(s) = pi / (sin(pi s) Gamma(1 - s))
        lg, err = loggamma_pos(1 - s, prec)
        g1 = Ball(lg, err).exp()
        return Ball.pi() / ((Ball.pi() * s).sin() * g1)


def _eta_crvz(sigma: mpf, prec: PrecisionConfig) -> tuple[mpf, mpf]:
    """``eta(sigma) = sum (-1)^k (k+1)^-sigma`` for ``sigma > 0``.

    The terms are moments of a positive measure on [0, 1], so the
    accelerated sum has error at most ``2 eta(sigma) / (3 + sqrt 8)^n``.
    """
    digits = prec.work_dps + 2
    n = int(mpmath.ceil(digits * mpmath.log(10) / mpmath.log(3 + mpmath.sqrt(8)))) + 2
    if n > prec.max_terms:
        raise PrecisionExhaustedError("eta acceleration needs more than max_terms terms")
    d = (3 + mpmath.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = mpf(-1)
    c = -d
    s = mpf(0)
    absum = mpf(0)
    for k in range(n):
        c = b - c
        term = c * mpmath.power(k + 1, -sigma)
        s += term
        absum += abs(term)
        b = (k + n) * (k - n) * b / ((k + mpf(0.5)) * (k + 1))
    val = s / d
    trunc = 2 / (3 + mpmath.sqrt(8)) ** n
    err = trunc + (8 * n + 8) * _eps() * (absum / d + abs(val))
    return val, err


def eta_real(sigma, prec: PrecisionConfig = _DEFAULT) -> Ball:
    """Dirichlet eta function for real ``sigma > 0``."""
    with prec.context():
        s = _real(sigma)
        if s <= 0:
            raise ValueError("eta_real requires sigma > 0")
        v, e = _eta_crvz(s, prec)
        return Ball(v, e)


def _zeta_em(sigma: mpf, prec: PrecisionConfig) -> tuple[mpf, mpf]:
    """Euler-Maclaurin summation, real ``sigma >= 2`` (any real ``sigma != 1`` works)."""
    eps = _eps()
    target = mpf(10) ** (-(prec.work_dps + 2))
    n_direct = max(10, int(prec.work_dps * 0.4) + 4)
    while True:
        if n_direct > prec.max_terms:
            raise PrecisionExhaustedError("Euler-Maclaurin needs too many direct terms")
        N = mpf(n_direct)
        head = mpf(0)
        absum = mpf(0)
        for k in range(1, n_direct):
            t = mpmath.power(k, -sigma)
            head += t
            absum += t
        npow = mpmath.power(N, -sigma)
        val = head + N * npow / (sigma - 1) + npow / 2
        absum += abs(N * npow / (sigma - 1)) + npow / 2
        kmax = max(8, int(prec.work_dps))
        bern = _bernoulli_even(kmax + 1, mpmath.mp.dps)
        # rising factorial s(s+1)...(s+2k-2) / (2k)!  times  N^(-s-2k+1)
        rising = sigma
        fact = mpf(2)
        npk = npow / N
        remainder = None
        for k in range(1, kmax + 1):
            term = bern[k - 1] * rising / fact * npk
            val += term
            absum += abs(term)
            rising *= (sigma + 2 * k - 1) * (sigma + 2 * k)
            fact *= (2 * k + 1) * (2 * k + 2)
            npk /= N * N
            # real s: remainder bounded by the first omitted term
            bound = abs(bern[k] * rising / fact * npk)
            if bound < target * abs(val):
                remainder = bound
                break
        if remainder is not None:
            err = remainder + (4 * (n_direct + kmax) + 8) * eps * absum
            return val, err
        n_direct *= 2


def zeta_real(sigma, prec: PrecisionConfig = _DEFAULT) -> Ball:
    """Certified enclosure of ``zeta(sigma)`` for real ``sigma != 1``."""
    with prec.context():
        s = _real(sigma)
        if abs(s - 1) <= mpf(10) ** (-(prec.digits - 5)):
            raise PoleProximityError("zeta has a pole at 1")
        if s >= 2:
            v, e = _zeta_em(s, prec)
            return Ball(v, e)
        if s > 0:
            v, e = _eta_crvz(s, prec)
            den = -Ball((1 - s) * mpmath.ln2).expm1()
            return Ball(v, e) / den
        if s == 0:
            return Ball(mpf(-0.5))
        if s == mpmath.nint(s) and int(mpmath.nint(s)) % 2 == 0:
            return Ball(0)  # trivial zeros
        # zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
        one_minus = 1 - s
        z1 = zeta_real(one_minus, prec)
        g1 = gamma_real(one_minus, prec)
        pi = Ball.pi()
        fac = (Ball(s) * Ball.ln2() + (Ball(s) - 1) * pi.log()).exp()
        return fac * (pi * s / 2).sin() * g1 * z1


def _sm1_zeta(s: mpf, prec: PrecisionConfig) -> Ball:
    """``(s - 1) zeta(s)`` for real ``s >= 1/2`` with the pole at 1 removed."""
    if s >= 2:
        v, e = _zeta_em(s, prec)
        return Ball(v, e) * (s - 1)
    v, e = _eta_crvz(s, prec)
    x = (s - 1) * mpmath.ln2
    if x == 0:
        h = 1 / Ball.ln2()
    else:
        # (s-1) / (1 - 2^(1-s)) = (1/ln 2) * x / (1 - e^(-x)), analytic at x = 0
        xb = Ball(x)
        h = xb / (-(-xb).expm1()) / Ball.ln2()
    return Ball(v, e) * h


def xi_real(sigma, prec: PrecisionConfig = _DEFAULT) -> Ball:
    """Riemann xi on the real axis: ``1/2 s (s-1) pi^(-s/2) Gamma(s/2) zeta(s)``."""
    with prec.context():
        s = _real(sigma)
        if s < mpf(0.5):
            s = 1 - s
        sz = _sm1_zeta(s, prec)
        lg, err = loggamma_pos(s / 2 + 1, prec)
        # pi^(-s/2) Gamma(s/2 + 1) folded into one exponential
        logpart = Ball(lg, err) - Ball.pi().log() * (s / 2)
        return logpart.exp() * sz


def xi_lower_bound(sigma) -> mpf:
    """Rigorous lower bound for ``xi(sigma)``, ``sigma >= 2`` (or mirrored).

    Uses ``zeta >= 1`` and ``Gamma(x + 1) >= sqrt(2 pi x) (x/e)^x``.
    """
    s = mpf(sigma)
    if s < mpf(0.5):
        s = 1 - s
    if s < 2:
        raise ValueError("bound valid for sigma >= 2 or sigma <= -1")
    x = s / 2
    return (s - 1) * mpmath.power(mpmath.pi, -x) * mpmath.sqrt(2 * mpmath.pi * x) * mpmath.power(x / mpmath.e, x)
