"""Bilateral Laplace transforms and weighted integrals of catalog functions."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf

from ..errors import EnvelopeMissingError
from ..numerics.ball import Ball, to_mpf
from ..numerics.precision import PrecisionConfig
from .quadrature import QuadratureConfig, integrate

__all__ = ["TransformResult", "bilateral_laplace", "weighted_integral"]


@dataclass(frozen=True)
class TransformResult:
    value: Ball
    strip: object
    s: object
    truncation: tuple = (0, 0)  # (left, right) integration limits


def _limits(f, s, power, qc, target):
    """Integration limits from the support and the tail envelopes."""
    envs = f.envelopes(s, power) if f.envelopes else (None, None)
    tails = mpf(0)
    limits = []
    for side, bound, env in (("left", f.support[0], envs[0]), ("right", f.support[1], envs[1])):
        if bound is not None:
            limits.append(to_mpf(bound))
            continue
        if env is None:
            raise EnvelopeMissingError(f"{f.name}: no decay envelope on the {side} side")
        R = env.radius_for(target / 10) if qc.trunc_radius == "auto" else mpf(qc.trunc_radius)
        tails += env.tail(R)
        limits.append(-R if side == "left" else R)
    return limits[0], limits[1], tails


def weighted_integral(f, s, power: int, qc: QuadratureConfig | None = None, prec: PrecisionConfig | None = None) -> Ball:
    """Enclosure of ``int x^power e^(-s x) f(x) dx``."""
    qc = qc or QuadratureConfig()
    prec = prec or PrecisionConfig()
    with prec.context():
        s = to_mpf(s)
        target = qc.target(prec)
        a, b, tails = _limits(f, s, power, qc, target)
        fn = f.eval_mpf

        if power:
            def integrand(x):
                return x**power * mpmath.exp(-s * x) * fn(x)
        else:
            def integrand(x):
                return mpmath.exp(-s * x) * fn(x)

        res = integrate(integrand, a, b, qc, target * mpf(0.8), breakpoints=f.breakpoints)
        return Ball(res.value, res.error + tails)


def _limits_only(f, s, qc, prec):
    with prec.context():
        a, b, _ = _limits(f, to_mpf(s), 0, qc, qc.target(prec))
        return a, b


def bilateral_laplace(f, s, qc: QuadratureConfig | None = None, prec: PrecisionConfig | None = None) -> TransformResult:
    """``int f(x) e^(-s x) dx`` for ``s`` strictly inside ``f.strip``."""
    f.strip.check(s)
    qc = qc or QuadratureConfig()
    prec = prec or PrecisionConfig()
    value = weighted_integral(f, s, 0, qc, prec)
    return TransformResult(value, f.strip, s, _limits_only(f, s, qc, prec))
