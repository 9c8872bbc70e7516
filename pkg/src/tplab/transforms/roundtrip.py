"""Consistency checks between ``Lambda`` and ``xi``.

Since ``Lambda`` is the Fourier transform of ``t -> 1/xi(1/2 + t)``,

* Laplace form: ``int Lambda(x) e^(-s x) dx = 1 / Xi(s)``, ``Xi(s) = xi(1/2 + i s)``;
* Fourier form: ``int Lambda(x) cos(t x) dx = 1 / xi(1/2 + t)``.

``Xi(s)`` for real ``s`` comes from the even Taylor series at 1/2 (real-axis
data only).  ``Lambda`` is even, so both integrals are twice the integral
over ``[0, x_max]`` plus an outer tail.
"""

from __future__ import annotations

import mpmath
from mpmath import mpf

from ..errors import StripViolationError
from ..numerics.ball import Ball, to_mpf
from ..numerics.precision import PrecisionConfig
from ..numerics.special import xi_real
from ..numerics.xi import big_xi
from .lambda_xi import EMPIRICAL_RATE, lambda_subject
from .quadrature import QuadratureConfig, integrate

__all__ = ["roundtrip_check", "lambda_integral"]

# accuracy asked of the outer x-integral; the check itself needs ~1e-6
X_TARGET = mpf("1e-16")


def lambda_integral(kernel: str, s, qc: QuadratureConfig | None = None, prec: PrecisionConfig | None = None) -> Ball:
    """``int Lambda(x) K(s x) dx`` with ``K = cosh`` (``"laplace"``) or ``cos`` (``"fourier"``)."""
    prec = prec or PrecisionConfig()
    subj = lambda_subject(prec, qc or QuadratureConfig())
    with prec.context():
        s = to_mpf(s)
        k = mpmath.cosh if kernel == "laplace" else mpmath.cos
        xm = mpf(subj.x_max)

        def integrand(x):
            return subj.eval_mpf(x) * k(s * x)

        res = integrate(integrand, 0, xm, subj.qc.replace(target_abs_err=X_TARGET), X_TARGET)
        # pointwise Lambda radii, integrated against |K| <= cosh(s x_max)
        lam_rad = subj.engine(0).rad * xm * mpmath.cosh(s * xm)
        tail = subj.outer_tail(s if kernel == "laplace" else 0)
        return Ball(2 * res.value, 2 * (res.error + lam_rad) + tail)


def roundtrip_check(s, qc: QuadratureConfig | None = None, prec: PrecisionConfig | None = None, kind: str = "laplace") -> Ball:
    """``(int Lambda(x) e^(-s x) dx) * Xi(s) - 1``; encloses 0 when consistent.

    ``kind="fourier"`` checks ``(int Lambda(x) cos(s x) dx) * xi(1/2 + s) - 1``.
    """
    prec = prec or PrecisionConfig()
    sv = abs(to_mpf(s))
    if sv >= EMPIRICAL_RATE:
        raise StripViolationError(f"|s| must stay below the observed decay rate {EMPIRICAL_RATE} of Lambda")
    integral = lambda_integral(kind, s, qc, prec)
    with prec.context():
        factor = big_xi(sv, prec) if kind == "laplace" else xi_real(mpf(0.5) + sv, prec)
        return integral * factor - 1
