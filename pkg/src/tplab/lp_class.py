"""Laguerre-Polya class: factorization data and the coefficient-side tests.

Zeros are stored as reciprocal zeros ``delta_j`` (the factor is
``1 + delta_j s``).  Power series use factorial normalization throughout:
``PowerSeries([b0, b1, ...])`` is ``sum b_j s^j / j!``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

import mpmath
from mpmath import mpf

from .errors import (
    DivergentTailError,
    DomainError,
    LengthError,
    PrecisionExhaustedError,
    PreconditionViolation,
    WindowTooSmallError,
    ZeroAtOriginError,
    ZeroConstantTermError,
)
from .linalg import PDVerdict, det, psd_verdict
from .numerics.ball import Ball, as_ball
from .numerics.precision import PrecisionConfig
from .numerics.series import PowerSeries, is_exact_number
from .polyzero import Polynomial, nonpositive_real_rooted

__all__ = [
    "LPFactorization",
    "OneSidedFactorization",
    "lp_eval",
    "lp_truncate",
    "lp_series",
    "series_reciprocal",
    "jensen",
    "turan_deltas",
    "hankel_psd",
    "HankelVerdict",
    "multiplier_apply",
    "apply_series_operator",
    "pf_sequence_minors",
    "PFSequenceVerdict",
]


def _num(x):
    """Keep exact numbers exact, convert everything else to mpf."""
    if is_exact_number(x):
        return Fraction(x)
    if isinstance(x, Ball):
        return x
    return mpf(x)


def _positive(x) -> bool:
    return x.is_positive() if isinstance(x, Ball) else x > 0


def _negative(x) -> bool:
    """Possibly negative: a Ball reaching below 0 is not admissible."""
    return x.lower < 0 if isinstance(x, Ball) else x < 0


def _zero(x) -> bool:
    return x.contains_zero() if isinstance(x, Ball) else x == 0


@dataclass(frozen=True)
class LPFactorization:
    """``C s^m exp(-gamma s^2 + delta s) prod (1 + d_j s) exp(-d_j s)``.

    ``tail_sq_bound`` bounds the sum of ``d_j^2`` over the omitted zeros.
    With ``paired`` set, ``zeros`` lists ``+d, -d`` pairs consecutively and
    truncation counts pairs.
    """

    C: object = 1
    m: int = 0
    gamma: object = 0
    delta: object = 0
    zeros: tuple = ()
    tail_sq_bound: object = 0
    paired: bool = False

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(_num(z) for z in self.zeros))
        for name in ("C", "gamma", "delta", "tail_sq_bound"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if not _positive(self.C):
            raise DomainError("C must be positive")
        if self.m < 0:
            raise DomainError("m must be non-negative")
        if _negative(self.gamma):
            raise DomainError("gamma must be non-negative")
        if any(_zero(z) for z in self.zeros):
            raise DomainError("reciprocal zeros must be nonzero")
        if _negative(self.tail_sq_bound):
            raise DomainError("tail bound must be non-negative")
        if not (_positive(self.gamma) or self.zeros or _positive(self.tail_sq_bound)):
            raise DomainError("pure exponential C exp(delta s) is excluded from the class")
        if self.paired and (len(self.zeros) % 2 or any(not _zero(a + b) for a, b in zip(self.zeros[::2], self.zeros[1::2]))):
            raise DomainError("paired zeros must be listed as consecutive +d, -d")

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in (self.C, self.gamma, self.delta, *self.zeros)) and self.tail_sq_bound == 0


@dataclass(frozen=True)
class OneSidedFactorization:
    """``C s^m exp(delta s) prod (1 + d_j s)`` with all ``d_j >= 0``.

    ``tail_sum_bound`` bounds the sum of the omitted ``d_j``.
    """

    C: object = 1
    delta: object = 0
    zeros: tuple = ()
    tail_sum_bound: object = 0
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(_num(z) for z in self.zeros))
        for name in ("C", "delta", "tail_sum_bound"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if not _positive(self.C):
            raise DomainError("C must be positive")
        if any(_negative(z) for z in self.zeros):
            raise DomainError("one-sided reciprocal zeros must be non-negative")
        if _negative(self.tail_sum_bound):
            raise DomainError("tail bound must be non-negative")
        if self.m < 0:
            raise DomainError("m must be non-negative")

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in (self.C, self.delta, *self.zeros)) and self.tail_sum_bound == 0


Factorization = LPFactorization | OneSidedFactorization


def _check_tail(bound):
    if isinstance(bound, Ball):
        bound = bound.upper
    elif isinstance(bound, Fraction):
        bound = mpf(bound.numerator) / bound.denominator
    if not mpmath.isfinite(mpf(bound)):
        raise DivergentTailError("tail bound on the omitted zeros is infinite")
    return mpf(bound)


def lp_eval(fac: Factorization, s, prec: PrecisionConfig | None = None) -> Ball:
    """Enclosure of ``Psi(s)`` with the omitted zeros folded into the radius.

    Omitted LP factors satisfy ``|log((1+x)e^-x)| <= x^2`` for ``|x| <= 1/2``,
    so their product lies in ``exp([-s^2 T, s^2 T])``.  Omitted one-sided
    factors satisfy ``|log(1+x)| <= 2|x|``, giving ``exp([-2|s|S, 2|s|S])``.
    """
    prec = prec or PrecisionConfig()
    with prec.context():
        sb = as_ball(s)
        sv = sb.magnitude()
        if isinstance(fac, LPFactorization):
            tail = _check_tail(fac.tail_sq_bound)
            if tail and sv * mpmath.sqrt(tail) > mpf(0.5):
                raise PrecisionExhaustedError("|s| too large for the stored zeros and tail bound")
            val = as_ball(fac.C) * sb**fac.m
            val = val * (sb * fac.delta - sb * sb * fac.gamma).exp()
            for d in fac.zeros:
                x = sb * d
                val = val * (1 + x) * (-x).exp()
            log_err = sv * sv * tail
        else:
            tail = _check_tail(fac.tail_sum_bound)
            if tail and sv * tail > mpf(0.5):
                raise PrecisionExhaustedError("|s| too large for the stored zeros and tail bound")
            val = as_ball(fac.C) * sb**fac.m * (sb * fac.delta).exp()
            for d in fac.zeros:
                val = val * (1 + sb * d)
            log_err = 2 * sv * tail
        if log_err:
            # val * exp(E) with |E| <= log_err
            spread = mpmath.expm1(log_err) * (1 + mpf(10) ** (-prec.work_dps + 3))
            val = val.inflate(val.magnitude() * spread)
        return val


def lp_truncate(fac: Factorization, n: int) -> Polynomial:
    """``C s^m prod_{j<=n} (1 + d_j s)``; exponential factors are dropped.

    For paired factorizations ``n`` counts ``(1 + d s)(1 - d s)`` pairs.
    """
    width = 2 if getattr(fac, "paired", False) else 1
    if n < 0 or n * width > len(fac.zeros):
        raise LengthError(f"n must lie in [0, {len(fac.zeros) // width}]")
    p = Polynomial.monomial(fac.m, fac.C)
    for d in fac.zeros[: n * width]:
        p = p * Polynomial([1, d])
    return p


def _exp_series(logc: list, N: int):
    """Ordinary coefficients of ``exp(sum_{k>=1} c_k s^k)`` up to ``s^N``."""
    b = [Fraction(1) if all(isinstance(c, Fraction) for c in logc[1:]) else Ball(1)]
    for n in range(1, N + 1):
        acc = b[0] * 0  # typed zero: int 0 / n would turn into a float
        for k in range(1, n + 1):
            if logc[k] != 0:
                acc = acc + k * logc[k] * b[n - k]
        b.append(acc / n)
    return b


def lp_series(fac: Factorization, N: int, prec: PrecisionConfig | None = None) -> PowerSeries:
    """Factorial-normalized Taylor coefficients of ``Psi`` through index N.

    Built from the logarithm: ``log Psi = log C + delta s - gamma s^2 + sum_j L(d_j s)``
    with ``L(x) = log(1+x) - x`` (LP) or ``log(1+x)`` (one-sided), then
    exponentiated.  Omitted zeros add ``T^(k/2)/k`` (LP) or ``S^k/k``
    (one-sided) to the radius of the ``s^k`` log coefficient.
    """
    prec = prec or PrecisionConfig()
    if fac.m > 0:
        raise ZeroAtOriginError("Psi vanishes at 0; series needs a nonzero constant term")
    if N < 0:
        raise LengthError("N must be non-negative")
    one_sided = isinstance(fac, OneSidedFactorization)
    exact = fac.exact
    with prec.context():
        logc = [Fraction(0)] * (N + 2)
        logc[1] = fac.delta
        if not one_sided and N >= 2:
            logc[2] = -fac.gamma
        start = 1 if one_sided else 2
        for d in fac.zeros:
            pw = d
            for k in range(1, N + 1):
                if k >= start:
                    term = pw * Fraction((-1) ** (k + 1), k) if exact else as_ball(pw) * ((-1) ** (k + 1)) / k
                    logc[k] = logc[k] + term
                pw = pw * d
        tail = mpf(0)
        if one_sided:
            tail = _check_tail(fac.tail_sum_bound)
        else:
            tail = _check_tail(fac.tail_sq_bound)
        if tail:
            for k in range(start, N + 1):
                extra = tail**k / k if one_sided else tail ** (mpf(k) / 2) / k
                logc[k] = as_ball(logc[k]).inflate(extra)
        if not exact:
            logc = [as_ball(c) for c in logc]
        b = _exp_series(logc, N)
        C = fac.C if exact else as_ball(fac.C)
        return PowerSeries([C * b[j] * factorial(j) for j in range(N + 1)])


def series_reciprocal(ps: PowerSeries, prec: PrecisionConfig | None = None) -> PowerSeries:
    """``1/F`` in factorial normalization, to the same length."""
    with (prec or PrecisionConfig()).context():
        return _reciprocal(ps)


def _reciprocal(ps: PowerSeries) -> PowerSeries:
    b0 = ps[0]
    if (b0 == 0) if ps.exact else not b0.is_nonzero():
        raise ZeroConstantTermError("constant term not certified nonzero")
    r = [1 / b0 if not ps.exact else Fraction(1) / b0]
    for n in range(1, len(ps)):
        acc = 0
        for k in range(1, n + 1):
            acc = acc + comb(n, k) * ps[k] * r[n - k]
        r.append(-acc / b0)
    return PowerSeries(r)


def jensen(ps: PowerSeries, n: int, prec: PrecisionConfig | None = None) -> tuple[Polynomial, Polynomial]:
    """Jensen polynomial ``sum b_j C(n,j) x^j`` and its reversal."""
    if n < 0 or n > ps.order:
        raise LengthError(f"n must lie in [0, {ps.order}]")
    with (prec or PrecisionConfig()).context():
        coeffs = [ps[j] * comb(n, j) for j in range(n + 1)]
    return Polynomial(coeffs), Polynomial(list(reversed(coeffs)))


def turan_deltas(ps: PowerSeries, prec: PrecisionConfig | None = None) -> list:
    """``b_n^2 - b_{n-1} b_{n+1}`` for ``1 <= n <= N-1``."""
    if len(ps) < 3:
        raise LengthError("Turan differences need at least three coefficients")
    with (prec or PrecisionConfig()).context():
        return [ps[n] * ps[n] - ps[n - 1] * ps[n + 1] for n in range(1, ps.order)]


@dataclass(frozen=True)
class HankelVerdict:
    status: str
    min_eigenvalue: Ball
    matrix: tuple = field(repr=False)


def hankel_psd(ps: PowerSeries, n: int, prec: PrecisionConfig | None = None) -> HankelVerdict:
    """Positive-definiteness of ``(g_{j+k})_{j,k<n}`` for the reciprocal series.

    ``g_j`` is the stored (factorial-normalized) coefficient ``ps[j]``; with
    ``Psi = 1 + s`` this yields ``[[1, -1], [-1, 2]]``.
    """
    prec = prec or PrecisionConfig()
    if n < 1 or 2 * n - 1 > len(ps):
        raise LengthError(f"a {n}x{n} Hankel matrix needs {2 * n - 1} coefficients, have {len(ps)}")
    mat = tuple(tuple(ps[j + k] for k in range(n)) for j in range(n))
    with prec.context():
        v: PDVerdict = psd_verdict(mat)
    return HankelVerdict(v.status, v.min_eigenvalue, mat)


def multiplier_apply(ps: PowerSeries, p: Polynomial, prec: PrecisionConfig | None = None) -> Polynomial:
    """``sum b_j c_j x^j`` for ``p = sum c_j x^j`` (multiplier sequence action)."""
    if p.degree > ps.order:
        raise LengthError(f"series too short for degree {p.degree}")
    if p.exact and not nonpositive_real_rooted(p):
        raise PreconditionViolation("p must have only real, non-positive zeros")
    with (prec or PrecisionConfig()).context():
        return Polynomial([ps[j] * c for j, c in enumerate(p.coeffs)])


def apply_series_operator(ps: PowerSeries, p: Polynomial, prec: PrecisionConfig | None = None) -> Polynomial:
    """``F(D) p = sum_j b_j p^(j) / j!`` (factorial normalization)."""
    if p.degree > ps.order:
        raise LengthError(f"series too short for degree {p.degree}")
    out = Polynomial([0])
    deriv = p
    with (prec or PrecisionConfig()).context():
        for j in range(p.degree + 1):
            out = out + deriv * (ps[j] / factorial(j))
            deriv = deriv.derivative()
    return out


# ---------------------------------------------------------------------------
# Polya frequency sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PFSequenceVerdict:
    status: str  # "certified-nonnegative" | "certified-not" | "undecided"
    worst_minor: object
    worst_rows: tuple
    worst_cols: tuple
    evaluated: int
    exhaustive: bool


_EXHAUSTIVE_CAP = 20000


def _toeplitz_minor(a, rows, cols):
    m = [[a[c - r] if 0 <= c - r < len(a) else 0 for c in cols] for r in rows]
    return det(m)


def pf_sequence_minors(
    a: Sequence,
    max_order: int,
    trials: int = 2000,
    seed: int = 0,
    prec: PrecisionConfig | None = None,
) -> PFSequenceVerdict:
    """Minors of order ``<= max_order`` of the Toeplitz matrix ``A_jk = a_{k-j}``.

    Rows and columns range over ``0 .. len(a)-1``.  All minors are used when
    there are at most a few ten thousand; otherwise ``trials`` seeded draws
    per order.  The worst minor is the minimum in a canonical ordering.
    """
    prec = prec or PrecisionConfig()
    if max_order < 1 or max_order > 6:
        raise DomainError("max_order must lie in [1, 6]")
    W = len(a)
    if W < max_order or W < 2:
        raise WindowTooSmallError(f"window of {W} coefficients is too small for order {max_order}")
    exact = all(is_exact_number(x) for x in a)
    a = [Fraction(x) for x in a] if exact else [as_ball(x) for x in a]
    total = sum(comb(W, r) ** 2 for r in range(1, max_order + 1))
    exhaustive = total <= _EXHAUSTIVE_CAP
    rng = random.Random(seed)

    def index_sets():
        for r in range(1, max_order + 1):
            if exhaustive:
                for rows in itertools.combinations(range(W), r):
                    for cols in itertools.combinations(range(W), r):
                        yield rows, cols
            else:
                for _ in range(trials):
                    yield tuple(sorted(rng.sample(range(W), r))), tuple(sorted(rng.sample(range(W), r)))

    worst = None
    status = "certified-nonnegative"
    count = 0
    with prec.context():
        for rows, cols in index_sets():
            v = _toeplitz_minor(a, rows, cols)
            count += 1
            key = v if exact else v.mid
            if worst is None or key < worst[0]:
                worst = (key, v, rows, cols)
            if (v < 0) if exact else v.upper < 0:
                status = "certified-not"
            elif status != "certified-not" and not exact and v.lower < 0:
                status = "undecided"
    return PFSequenceVerdict(status, worst[1], worst[2], worst[3], count, exhaustive)
