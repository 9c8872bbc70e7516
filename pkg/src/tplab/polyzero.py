"""Real-zero counting and the zero-decreasing test for convolution with a PFF.

Exact polynomials (``Fraction`` coefficients) get an exact count of real
zeros with multiplicity: square-free decomposition (Yun) followed by a
Sturm sequence on each square-free factor.  Polynomials with
:class:`~tplab.numerics.Ball` coefficients get a certified count interval
from Rouche discs around approximate roots of the midpoint polynomial.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import comb, factorial
from typing import Sequence

import mpmath
from mpmath import mpf

from .errors import InsufficientMomentsError, UndecidableError
from .numerics.ball import Ball, as_ball
from .numerics.series import is_exact_number

__all__ = [
    "Polynomial",
    "CountInterval",
    "SignSampling",
    "real_root_count",
    "certified_real_root_count",
    "sturm_sequence",
    "count_roots_in",
    "squarefree_decomposition",
    "sign_changes",
    "convolve_moments",
    "zero_decreasing_check",
    "ZeroDecreasingResult",
    "random_exact_polynomial",
]


# ---------------------------------------------------------------------------
# Polynomial type
# ---------------------------------------------------------------------------


class Polynomial:
    """Dense univariate polynomial, coefficients in ascending order.

    Coefficients are either all exact rationals or all Balls.  Exact zero
    leading coefficients are trimmed; a Ball leading coefficient that merely
    contains zero is kept (the degree is then only an upper bound).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        items = list(coeffs) or [0]
        if all(is_exact_number(c) for c in items):
            items = [Fraction(c) for c in items]
            while len(items) > 1 and items[-1] == 0:
                items.pop()
        else:
            items = [as_ball(c) for c in items]
            while len(items) > 1 and items[-1].mid == 0 and items[-1].rad == 0:
                items.pop()
        self.coeffs = tuple(items)

    @classmethod
    def monomial(cls, n: int, c=1) -> "Polynomial":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Sequence, lead=1) -> "Polynomial":
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def exact(self) -> bool:
        return isinstance(self.coeffs[0], Fraction)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.degree == 0 and _is_exact_zero(self.coeffs[0])

    def leading_certified_nonzero(self) -> bool:
        lead = self.leading
        return lead != 0 if self.exact else lead.is_nonzero()

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, k: int = 1) -> "Polynomial":
        coeffs = list(self.coeffs)
        for _ in range(k):
            if len(coeffs) <= 1:
                return Polynomial([0])
            coeffs = [coeffs[j] * j for j in range(1, len(coeffs))]
        return Polynomial(coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, other: "Polynomial"):
        """Exact polynomial long division."""
        if not (self.exact and other.exact):
            raise TypeError("divmod requires exact coefficients")
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.leading
        if self.degree < d:
            return Polynomial([0]), Polynomial(rem)
        quo = [Fraction(0)] * (self.degree - d + 1)
        for k in range(self.degree - d, -1, -1):
            q = rem[k + d] / lead
            quo[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return Polynomial(quo), Polynomial(rem[:d] or [0])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        return Polynomial([c / self.leading for c in self.coeffs])

    def primitive(self) -> "Polynomial":
        """Positive rescaling to coprime integer coefficients (exact mode)."""
        if self.is_zero():
            return self
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints, 0) or 1
        return Polynomial([Fraction(v // g) for v in ints])

    def to_balls(self) -> "Polynomial":
        return Polynomial([as_ball(c) for c in self.coeffs])

    def __repr__(self):
        if self.exact:
            return f"Polynomial({[str(c) for c in self.coeffs]})"
        return f"Polynomial({list(self.coeffs)!r})"


def _is_exact_zero(c) -> bool:
    if isinstance(c, Ball):
        return c.mid == 0 and c.rad == 0
    return c == 0


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


# ---------------------------------------------------------------------------
# Exact counting
# ---------------------------------------------------------------------------


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.primitive()
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``p = c * prod f_i^i`` with square-free, coprime ``f_i``."""
    if not p.exact:
        raise TypeError("square-free decomposition needs exact coefficients")
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a if not d.is_zero() else d
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
        d = c - b.derivative()
    return out


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p.primitive(), p.derivative().primitive()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append((-r).primitive())
    return seq


def _sign_variations(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _signs_at_infinity(seq: list[Polynomial], positive: bool) -> list[int]:
    out = []
    for q in seq:
        if q.is_zero():
            continue
        s = 1 if q.leading > 0 else -1
        if not positive and q.degree % 2:
            s = -s
        out.append(s)
    return out


def count_roots_in(p: Polynomial, a=None, b=None) -> int:
    """Distinct real roots of a square-free exact ``p`` in ``(a, b]`` (``None`` = infinite)."""
    seq = sturm_sequence(p)
    va = _sign_variations(_signs_at_infinity(seq, False) if a is None else [q(Fraction(a)) for q in seq])
    vb = _sign_variations(_signs_at_infinity(seq, True) if b is None else [q(Fraction(b)) for q in seq])
    return va - vb


def _exact_real_root_count(p: Polynomial, a=None, b=None) -> int:
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    total = 0
    for f, mult in squarefree_decomposition(p):
        total += mult * count_roots_in(f, a, b)
    return total


# ---------------------------------------------------------------------------
# Ball-mode counting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CountInterval:
    lo: int
    hi: int

    @property
    def decided(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.decided:
            raise UndecidableError(f"real root count only known to lie in [{self.lo}, {self.hi}]")
        return self.lo

    def __contains__(self, n):
        return self.lo <= n <= self.hi


def _poly_eval_c(coeffs, z):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _abs_poly(coeffs, r):
    acc = mpf(0)
    for c in reversed(coeffs):
        acc = acc * r + abs(c)
    return acc


def _abs_deriv_poly(coeffs, r):
    return _abs_poly([k * c for k, c in enumerate(coeffs)][1:], r) if len(coeffs) > 1 else mpf(0)


def _expand_roots(roots, lead):
    out = [mpmath.mpc(lead)]
    for z in roots:
        nxt = [mpmath.mpc(0)] * (len(out) + 1)
        for k, c in enumerate(out):
            nxt[k + 1] += c
            nxt[k] -= c * z
        out = nxt
    return out


def _rouche_disc(center, rho, mids, rads, approx_roots, lead, q_coeffs) -> bool:
    """Certify that every polynomial in the ball family has exactly as many
    roots in the closed disc as the approximate factorization ``Q``."""
    diff = [m - q for m, q in zip(mids, q_coeffs)]
    rmax = abs(center) + rho
    lip_q = mpf(0)
    for i in range(len(approx_roots)):
        prod = abs(lead)
        for j, z in enumerate(approx_roots):
            if j != i:
                prod *= abs(center - z) + rho
        lip_q += prod
    lip = lip_q + _abs_deriv_poly(diff, rmax) + _abs_deriv_poly(rads, rmax)
    for samples in (64, 256):
        arc = 2 * mpmath.pi * rho / samples
        need = lip * arc / 2
        ok = True
        for s in range(samples):
            z = center + rho * mpmath.expjpi(mpf(2 * s) / samples)
            qv = abs(lead)
            for w in approx_roots:
                qv *= abs(z - w)
            g = qv - abs(_poly_eval_c(diff, z)) - _abs_poly(rads, abs(z))
            if g <= need * (1 + mpf(10) ** (-10)):
                ok = False
                break
        if ok:
            return True
    return False


def _clusters(roots, tol):
    groups: list[list] = []
    for z in roots:
        for g in groups:
            if any(abs(z - w) <= tol * (1 + abs(w)) for w in g):
                g.append(z)
                break
        else:
            groups.append([z])
    merged = True
    while merged:
        merged = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                if any(abs(a - b) <= tol * (1 + abs(b)) for a in groups[i] for b in groups[j]):
                    groups[i].extend(groups.pop(j))
                    merged = True
                    break
            if merged:
                break
    return groups


def _ball_root_count(p: Polynomial) -> CountInterval:
    n = p.degree
    if n == 0:
        if p.coeffs[0].contains_zero():
            raise UndecidableError("constant polynomial not certified nonzero")
        return CountInterval(0, 0)
    if not p.leading.is_nonzero():
        return CountInterval(0, n)
    mids = [c.mid for c in p.coeffs]
    rads = [c.rad for c in p.coeffs]
    dps = mpmath.mp.dps
    try:
        roots = mpmath.polyroots(list(reversed(mids)), maxsteps=400, extraprec=4 * mpmath.mp.prec)
    except mpmath.libmp.NoConvergence:
        return CountInterval(_sign_change_lower_bound(p, []), n)
    roots = [mpmath.mpc(z) for z in roots]
    q_coeffs = _expand_roots(roots, mids[-1])
    tol = mpf(10) ** (-(dps // 3))
    groups = _clusters(roots, tol)
    centers = []
    for g in groups:
        c = mpmath.fsum(g) / len(g)
        spread = max(abs(z - c) for z in g)
        real = abs(c.imag) <= max(4 * spread, tol * (1 + abs(c)))
        centers.append((mpmath.mpc(c.real, 0) if real else c, spread, real, len(g)))
    lo = hi = 0
    real_centers = []
    for i, (c, spread, real, k) in enumerate(centers):
        if not real and c.imag < 0:
            continue  # mirror image of an upper cluster
        others = [abs(c - d[0]) for j, d in enumerate(centers) if j != i]
        if not real:
            others.append(2 * abs(c.imag))
        sep = min(others) if others else mpf(1) + abs(c)
        rho = sep * mpf(0.4)
        if not real:
            rho = min(rho, abs(c.imag) * mpf(0.9))
        verified = rho > 2 * spread and _rouche_disc(c, rho, mids, rads, roots, mids[-1], q_coeffs)
        if real:
            real_centers.append(c.real)
            if verified and k == 1:
                lo += 1
                hi += 1
            else:
                lo += k % 2 if verified else 0
                hi += k
        elif not verified:
            hi += 2 * k
    lo = max(lo, _sign_change_lower_bound(p, sorted(real_centers)))
    return CountInterval(lo, min(hi, n))


def _sign_change_lower_bound(p: Polynomial, real_points) -> int:
    """Certified sign changes at points separating approximate real roots."""
    if not real_points:
        return 0
    pts = []
    span = max(mpf(1), max(abs(x) for x in real_points))
    pts.append(real_points[0] - span)
    for a, b in zip(real_points, real_points[1:]):
        pts.append((a + b) / 2)
    pts.append(real_points[-1] + span)
    vals = [p(Ball(x)) for x in pts]
    return sign_changes(SignSampling(pts, vals)).count


def real_root_count(p: Polynomial):
    """``N(p)``: real zeros with multiplicity.

    Exact coefficients give an ``int``; Ball coefficients give a
    :class:`CountInterval`.
    """
    if p.exact:
        return _exact_real_root_count(p)
    return _ball_root_count(p)


def certified_real_root_count(p: Polynomial) -> int:
    r = real_root_count(p)
    return r if isinstance(r, int) else r.value


def nonpositive_real_rooted(p: Polynomial) -> bool:
    """True iff exact ``p`` has only real zeros, all of them ``<= 0``."""
    if p.degree == 0:
        return True
    return _exact_real_root_count(p) == p.degree and _exact_real_root_count(p, 0, None) == 0


# ---------------------------------------------------------------------------
# Sign changes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignSampling:
    grid: Sequence
    values: Sequence

    def __post_init__(self):
        if not self.grid:
            raise ValueError("empty sampling grid")
        if len(self.grid) != len(self.values):
            raise ValueError("grid and values differ in length")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")


@dataclass(frozen=True)
class SignChangeCount:
    count: int
    skipped: int

    @property
    def undecided(self) -> bool:
        return self.skipped > 0

    def __int__(self):
        return self.count

    def __eq__(self, other):
        if isinstance(other, int):
            return self.count == other
        return NotImplemented


def sign_changes(samples: SignSampling) -> SignChangeCount:
    """Certified sign flips of consecutive nonzero samples.

    A lower bound for the supremum over all grids; samples whose sign is
    not certified are skipped and counted in ``skipped``.
    """
    signs = []
    skipped = 0
    for v in samples.values:
        if isinstance(v, Ball):
            s = v.sign()
            if s is None:
                skipped += 1
                continue
        else:
            s = (v > 0) - (v < 0)
        if s:
            signs.append(s)
    count = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return SignChangeCount(count, skipped)


# ---------------------------------------------------------------------------
# Convolution with moments and the zero-decreasing test
# ---------------------------------------------------------------------------


def convolve_moments(ms, p: Polynomial) -> Polynomial:
    """``(Lambda * p)(x) = sum_j (-1)^j mu_j p^(j)(x) / j!`` (finite, exact)."""
    mu = list(ms.mu) if hasattr(ms, "mu") else list(ms)
    if len(mu) <= p.degree:
        raise InsufficientMomentsError(f"need {p.degree + 1} moments, have {len(mu)}")
    exact = p.exact and all(is_exact_number(m) for m in mu[: p.degree + 1])
    out = Polynomial([0]) if exact else Polynomial([Ball(0)])
    deriv = p
    for j in range(p.degree + 1):
        coef = mu[j] * Fraction((-1) ** j, factorial(j)) if exact else as_ball(mu[j]) * ((-1) ** j) / factorial(j)
        out = out + deriv * coef
        deriv = deriv.derivative()
    if not exact:
        out = Polynomial(list(out.coeffs) + [Ball(0)] * (p.degree + 1 - len(out.coeffs)))
    return out


@dataclass(frozen=True)
class ZeroDecreasingResult:
    status: str  # "holds" | "violated" | "undecided"
    n_p: int
    n_q: object  # int or CountInterval
    q: Polynomial = field(compare=False, repr=False)

    def n_q_json(self):
        if isinstance(self.n_q, CountInterval):
            return self.n_q.lo if self.n_q.decided else [self.n_q.lo, self.n_q.hi]
        return self.n_q


def zero_decreasing_check(ms, p: Polynomial) -> ZeroDecreasingResult:
    """Compare ``N(Lambda * p)`` against ``N(p)``."""
    if not p.exact:
        raise TypeError("zero_decreasing_check expects an exact polynomial p")
    n_p = _exact_real_root_count(p)
    q = convolve_moments(ms, p)
    n_q = real_root_count(q)
    if isinstance(n_q, int):
        return ZeroDecreasingResult("holds" if n_q <= n_p else "violated", n_p, n_q, q)
    if n_q.hi <= n_p:
        status = "holds"
    elif n_q.lo > n_p:
        status = "violated"
    else:
        status = "undecided"
    return ZeroDecreasingResult(status, n_p, n_q, q)


def random_exact_polynomial(rng: random.Random, max_degree: int) -> Polynomial:
    """Seeded random exact polynomial with a spread of real-root counts.

    Half the draws are products of rational linear and irreducible-looking
    quadratic factors (so N(p) is controlled); the rest have small random
    integer coefficients.
    """
    deg = rng.randint(1, max_degree)
    if rng.random() < 0.5:
        p = Polynomial([rng.choice([-3, -2, -1, 1, 2, 3])])
        remaining = deg
        while remaining > 0:
            if remaining >= 2 and rng.random() < 0.4:
                b = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                c = b * b / 4 + Fraction(rng.randint(1, 9), rng.randint(1, 4))
                p = p * Polynomial([c, b, 1])
                remaining -= 2
            else:
                r = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
                p = p * Polynomial([-r, 1])
                remaining -= 1
        return p
    coeffs = [rng.randint(-5, 5) for _ in range(deg)] + [rng.choice([-4, -3, -2, -1, 1, 2, 3, 4])]
    return Polynomial(coeffs)


def binomial_polynomial(n: int) -> Polynomial:
    return Polynomial([comb(n, j) for j in range(n + 1)])
