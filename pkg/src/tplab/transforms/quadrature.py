"""Adaptive quadrature on finite intervals plus tail bounds for truncation.

Two schemes:

* ``gauss-legendre``: adaptive bisection with a fixed Gauss-Legendre rule
  per panel.  A panel is accepted when the rule on the panel and the sum of
  the rule on its two halves agree; the halves' sum is kept and the
  difference becomes the panel's error term.
* ``double-exponential``: mpmath's tanh-sinh rule with its own error
  estimate.

Both error terms are a-posteriori estimates; they are reliable for the
analytic integrands used here but are not proofs.  Truncation of infinite
ranges is rigorous whenever the supplied :class:`DecayEnvelope` is.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import mpmath
from mpmath import mpf
from mpmath.calculus.quadrature import GaussLegendre

from ..errors import DomainError, TargetErrorUnreachable
from ..numerics.ball import to_mpf
from ..numerics.precision import PrecisionConfig

__all__ = ["QuadratureConfig", "DecayEnvelope", "integrate", "gl_nodes", "QuadResult"]

SCHEMES = ("gauss-legendre", "double-exponential")


@dataclass(frozen=True)
class QuadratureConfig:
    """``level`` sets the rule size: ``3 * 2^(level-1)`` Gauss-Legendre points
    per panel, or the tanh-sinh degree cap.  ``target_abs_err=None`` means
    ``10^-(digits-10)``."""

    scheme: str = "gauss-legendre"
    level: int = 4
    trunc_radius: object = "auto"
    target_abs_err: object = None
    max_depth: int = 48

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown quadrature scheme {self.scheme!r}")
        if self.level < 1:
            raise DomainError("level must be >= 1")
        if self.target_abs_err is not None and not to_mpf(self.target_abs_err) > 0:
            raise DomainError("target_abs_err must be positive")
        if self.trunc_radius != "auto" and not to_mpf(self.trunc_radius) > 0:
            raise DomainError("trunc_radius must be positive or 'auto'")

    def target(self, prec: PrecisionConfig) -> mpf:
        if self.target_abs_err is None:
            return mpf(10) ** (-(prec.digits - 10))
        return to_mpf(self.target_abs_err)

    def replace(self, **kw) -> "QuadratureConfig":
        fields = dict(
            scheme=self.scheme,
            level=self.level,
            trunc_radius=self.trunc_radius,
            target_abs_err=self.target_abs_err,
            max_depth=self.max_depth,
        )
        fields.update(kw)
        return QuadratureConfig(**fields)


FORMS = ("exponential", "gaussian", "double-exponential", "super-exponential", "compact", "custom")


@dataclass(frozen=True)
class DecayEnvelope:
    """Bound ``|g(u)| <= env(u)`` for ``u >= start`` on one side of the line.

    ``u`` is the distance along the side (``u = x`` on the right, ``u = -x``
    on the left).  With power factor ``u^p``:

    * exponential: ``c u^p e^(-a u)``
    * gaussian: ``c u^p e^(-a u^2 + b u)``
    * double-exponential: ``c u^p e^(-e^u + b u)``
    * super-exponential: ``c u^p e^(-a u ln u)``
    * compact: zero for ``u >= a``
    * custom: ``tail_fn(R)`` bounds the tail integral directly

    Tail integrals use tangent-line bounds of the convex exponent and
    ``u^p <= R^p e^(p (u - R) / R)``.
    """

    form: str
    a: object = 1
    c: object = 1
    b: object = 0
    p: int = 0
    start: object = 0
    tail_fn: Callable | None = None

    def __post_init__(self):
        if self.form not in FORMS:
            raise DomainError(f"unknown envelope form {self.form!r}")
        if self.form == "custom" and self.tail_fn is None:
            raise DomainError("custom envelope needs tail_fn")

    def value(self, u) -> mpf:
        u = mpf(u)
        a, b, c = to_mpf(self.a), to_mpf(self.b), to_mpf(self.c)
        pw = u**self.p if self.p else mpf(1)
        if self.form == "exponential":
            return c * pw * mpmath.exp(-a * u)
        if self.form == "gaussian":
            return c * pw * mpmath.exp(-a * u * u + b * u)
        if self.form == "double-exponential":
            return c * pw * mpmath.exp(-mpmath.exp(u) + b * u)
        if self.form == "super-exponential":
            return c * pw * mpmath.exp(-a * u * mpmath.log(u))
        if self.form == "compact":
            return mpf(0) if u >= a else mpf("inf")
        raise DomainError("custom envelope has no pointwise value")

    def tail(self, R) -> mpf:
        """Upper bound for ``int_R^oo env(u) du`` (``inf`` if the bound fails)."""
        R = mpf(R)
        if R < to_mpf(self.start):
            return mpf("inf")
        if self.form == "custom":
            return to_mpf(self.tail_fn(R))
        if self.form == "compact":
            return mpf(0) if R >= to_mpf(self.a) else mpf("inf")
        if R <= 0:
            return mpf("inf")
        a, b, c = to_mpf(self.a), to_mpf(self.b), to_mpf(self.c)
        extra = to_mpf(self.p) / R
        pw = R**self.p if self.p else mpf(1)
        if self.form == "exponential":
            rate, log_head = a - extra, -a * R
        elif self.form == "gaussian":
            rate, log_head = 2 * a * R - b - extra, -a * R * R + b * R
        elif self.form == "double-exponential":
            rate, log_head = mpmath.exp(R) - b - extra, -mpmath.exp(R) + b * R
        else:  # super-exponential
            if R < 1:
                return mpf("inf")
            rate, log_head = a * (1 + mpmath.log(R)) - extra, -a * R * mpmath.log(R)
        if rate <= 0:
            return mpf("inf")
        return c * pw * mpmath.exp(log_head) / rate

    def radius_for(self, target) -> mpf:
        """Smallest (up to bisection) ``R`` with ``tail(R) <= target``."""
        target = mpf(target)
        if self.form == "compact":
            return max(to_mpf(self.a), to_mpf(self.start))
        lo = max(to_mpf(self.start), mpf(0))
        hi = max(lo, mpf(1))
        while self.tail(hi) > target:
            hi *= 2
            if hi > 10**7:
                raise TargetErrorUnreachable("decay envelope too slow for the requested target")
        for _ in range(40):
            mid = (lo + hi) / 2
            if self.tail(mid) <= target:
                hi = mid
            else:
                lo = mid
        return hi


@lru_cache(maxsize=32)
def _standard_nodes(level: int, prec: int) -> tuple:
    nodes = GaussLegendre(mpmath.mp).calc_nodes(level, prec)
    return tuple(sorted(nodes, key=lambda xw: xw[0]))


def gl_nodes(level: int) -> tuple:
    """Gauss-Legendre nodes/weights on [-1, 1] at the current precision."""
    with mpmath.workprec(mpmath.mp.prec + 20):
        nodes = _standard_nodes(level, mpmath.mp.prec)
    return nodes


@dataclass(frozen=True)
class QuadResult:
    value: mpf
    error: mpf
    evaluations: int


def _gl_panel(f, a, b, nodes):
    h = (b - a) / 2
    c = (a + b) / 2
    vals = [w * f(c + h * x) for x, w in nodes]
    s = mpmath.fsum(vals)
    return s * h, mpmath.fsum(abs(v) for v in vals) * abs(h)


def _adaptive_gl(f, a, b, tol, level, max_depth):
    nodes = gl_nodes(level)
    width = b - a
    whole, _ = _gl_panel(f, a, b, nodes)
    evals = len(nodes)
    stack = [(a, b, whole, 0)]
    total = []
    err = []
    absum = mpf(0)
    floor = mpmath.ldexp(mpf(1), -mpmath.mp.prec + 8)
    while stack:
        lo, hi, est, depth = stack.pop()
        mid = (lo + hi) / 2
        left, la = _gl_panel(f, lo, mid, nodes)
        right, ra = _gl_panel(f, mid, hi, nodes)
        evals += 2 * len(nodes)
        fine = left + right
        diff = abs(fine - est)
        local = tol * (hi - lo) / width
        if diff <= local or diff <= floor * (la + ra):
            total.append(fine)
            err.append(diff)
            absum += la + ra
            continue
        if depth >= max_depth:
            raise TargetErrorUnreachable(f"quadrature did not converge on [{mpmath.nstr(lo, 8)}, {mpmath.nstr(hi, 8)}]")
        stack.append((mid, hi, right, depth + 1))
        stack.append((lo, mid, left, depth + 1))
    rounding = (len(nodes) + 16) * mpmath.ldexp(absum, -mpmath.mp.prec + 4)
    return mpmath.fsum(total), mpmath.fsum(err) + rounding, evals


def integrate(f: Callable, a, b, qc: QuadratureConfig, tol, breakpoints=()) -> QuadResult:
    """``int_a^b f`` with an error bound; ``f`` takes and returns ``mpf``.

    The reported error is the tolerance the adaptive rule accepted against
    (or the realized estimate, if rounding pushed that higher).  Realized
    estimates wobble under refinement; the tolerance does not, so a finer
    rule never reports a wider result.
    """
    a, b = mpf(a), mpf(b)
    if b <= a:
        return QuadResult(mpf(0), mpf(0), 0)
    pts = [a] + sorted(mpf(p) for p in breakpoints if a < p < b) + [b]
    tol = mpf(tol)
    width = b - a
    value = mpf(0)
    error = mpf(0)
    evals = 0
    for lo, hi in zip(pts, pts[1:]):
        share = tol * (hi - lo) / width
        if qc.scheme == "gauss-legendre":
            v, e, n = _adaptive_gl(f, lo, hi, share, qc.level, qc.max_depth)
        else:
            v, e = mpmath.quad(f, [lo, hi], method="tanh-sinh", error=True, maxdegree=qc.level + 4)
            n = 0
            if e > share:
                raise TargetErrorUnreachable("tanh-sinh error estimate above target")
        value += v
        error += e
        evals += n
    return QuadResult(value, max(tol, error), evals)
