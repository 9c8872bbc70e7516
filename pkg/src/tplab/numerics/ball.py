"""Midpoint-radius (ball) arithmetic over mpmath multiprecision floats.

A :class:`Ball` ``[m +/- r]`` is an enclosure of a real number.  Every
operation computes the midpoint at the current ``mpmath.mp.prec`` and
inflates the radius by a bound on the rounding error of that midpoint, so
results stay enclosures (inclusion monotonicity).  Radii are themselves
rounded upward by a relative factor of a few ulps.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath import mpf

from ..errors import DomainError

__all__ = ["Ball", "as_ball", "ball_sum", "to_mpf"]


def _eps() -> mpf:
    return mpmath.ldexp(mpf(1), -mpmath.mp.prec)


def _up(x: mpf) -> mpf:
    # radius arithmetic is itself rounded; push it outward
    return x * (1 + 4 * _eps())


def _slack(m: mpf, ulps: int = 2) -> mpf:
    return abs(m) * ulps * _eps()


class Ball:
    """Real enclosure ``mid +/- rad`` with ``rad >= 0``."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid=0, rad=0):
        if isinstance(mid, Ball):
            self.mid = mid.mid
            self.rad = mid.rad + mpf(rad)
            return
        b = _convert(mid)
        r = mpf(rad)
        if r < 0 or not mpmath.isfinite(r):
            raise DomainError(f"invalid radius {rad!r}")
        self.mid = b.mid
        self.rad = b.rad + r if b.rad else r

    # -- construction -------------------------------------------------
    @classmethod
    def exact(cls, value) -> "Ball":
        return _convert(value)

    @classmethod
    def from_interval(cls, lo, hi) -> "Ball":
        lo, hi = mpf(lo), mpf(hi)
        if lo > hi:
            raise DomainError("empty interval")
        mid = (lo + hi) / 2
        rad = _up(max(hi - mid, mid - lo)) + _slack(mid)
        return cls._raw(mid, rad)

    @classmethod
    def _raw(cls, mid: mpf, rad: mpf) -> "Ball":
        obj = object.__new__(cls)
        obj.mid = mid
        obj.rad = rad
        return obj

    @classmethod
    def pi(cls) -> "Ball":
        m = +mpmath.pi
        return cls._raw(m, _slack(m))

    @classmethod
    def euler(cls) -> "Ball":
        m = +mpmath.euler
        return cls._raw(m, _slack(m))

    @classmethod
    def ln2(cls) -> "Ball":
        m = +mpmath.ln2
        return cls._raw(m, _slack(m))

    # -- queries -------------------------------------------------------
    @property
    def lower(self) -> mpf:
        return self.mid - self.rad

    @property
    def upper(self) -> mpf:
        return self.mid + self.rad

    def contains(self, x) -> bool:
        other = _convert(x)
        return abs(other.mid - self.mid) + other.rad <= self.rad

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def overlaps(self, other) -> bool:
        other = _convert(other)
        return abs(other.mid - self.mid) <= self.rad + other.rad

    def subset_of(self, other) -> bool:
        other = _convert(other)
        return abs(self.mid - other.mid) + self.rad <= other.rad

    def is_positive(self) -> bool:
        return self.mid - self.rad > 0

    def is_negative(self) -> bool:
        return self.mid + self.rad < 0

    def is_nonzero(self) -> bool:
        return abs(self.mid) > self.rad

    def is_exact(self) -> bool:
        return self.rad == 0

    def sign(self) -> int | None:
        """+1 / -1 when certified, 0 for the exact zero ball, ``None`` otherwise."""
        if self.is_positive():
            return 1
        if self.is_negative():
            return -1
        if self.mid == 0 and self.rad == 0:
            return 0
        return None

    def magnitude(self) -> mpf:
        """Upper bound for ``|x|``."""
        return abs(self.mid) + self.rad

    def mignitude(self) -> mpf:
        """Lower bound for ``|x|``."""
        return max(abs(self.mid) - self.rad, mpf(0))

    def rel_accuracy_bits(self) -> float:
        if self.rad == 0:
            return math.inf
        if self.mid == 0:
            return -math.inf
        return float(mpmath.log(abs(self.mid) / self.rad, 2))

    # -- arithmetic ----------------------------------------------------
    def __neg__(self):
        # plain -mpf rounds to the context precision; negation must not
        return Ball._raw(mpmath.fneg(self.mid, exact=True), self.rad)

    def __pos__(self):
        return self

    def __abs__(self):
        if self.mid >= self.rad:
            return self
        if self.mid <= -self.rad:
            return -self
        return Ball.from_interval(0, self.magnitude())

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m = self.mid + other.mid
        return Ball._raw(m, _up(self.rad + other.rad) + _slack(m, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m = self.mid - other.mid
        return Ball._raw(m, _up(self.rad + other.rad) + _slack(m, 1))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m = self.mid * other.mid
        r = abs(self.mid) * other.rad + abs(other.mid) * self.rad + self.rad * other.rad
        return Ball._raw(m, _up(r) + _slack(m, 1))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        den_low = abs(other.mid) - other.rad
        if den_low <= 0:
            raise ZeroDivisionError("division by a ball containing zero")
        m = self.mid / other.mid
        r = (self.rad + abs(m) * other.rad) / den_low
        return Ball._raw(m, _up(r) + _slack(m, 1))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("Ball ** only supports integer exponents; use exp/log")
        if n < 0:
            return 1 / (self ** (-n))
        result = Ball._raw(mpf(1), mpf(0))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def square(self) -> "Ball":
        a = abs(self)
        return a * a

    # -- elementary functions -----------------------------------------
    def exp(self) -> "Ball":
        m = mpmath.exp(self.mid)
        r = self.rad * mpmath.exp(self.mid + self.rad) if self.rad else mpf(0)
        return Ball._raw(m, _up(r) + _slack(m, 4))

    def expm1(self) -> "Ball":
        m = mpmath.expm1(self.mid)
        r = self.rad * mpmath.exp(self.mid + self.rad) if self.rad else mpf(0)
        return Ball._raw(m, _up(r) + _slack(m, 4))

    def log(self) -> "Ball":
        low = self.mid - self.rad
        if low <= 0:
            raise DomainError("log of a ball not certified positive")
        m = mpmath.log(self.mid)
        r = self.rad / low if self.rad else mpf(0)
        return Ball._raw(m, _up(r) + _slack(m, 4))

    def sqrt(self) -> "Ball":
        low = self.mid - self.rad
        if low < 0:
            raise DomainError("sqrt of a ball not certified non-negative")
        if low == 0 and self.rad:
            return Ball.from_interval(0, mpmath.sqrt(self.upper) * (1 + 4 * _eps()))
        m = mpmath.sqrt(self.mid)
        r = self.rad / (2 * mpmath.sqrt(low)) if self.rad else mpf(0)
        return Ball._raw(m, _up(r) + _slack(m, 4))

    def sin(self) -> "Ball":
        m = mpmath.sin(self.mid)
        return Ball._raw(m, _up(min(self.rad, mpf(2))) + _slack(m, 4) + 4 * _eps())

    def cos(self) -> "Ball":
        m = mpmath.cos(self.mid)
        return Ball._raw(m, _up(min(self.rad, mpf(2))) + _slack(m, 4) + 4 * _eps())

    def sinh(self) -> "Ball":
        m = mpmath.sinh(self.mid)
        r = self.rad * mpmath.cosh(abs(self.mid) + self.rad) if self.rad else mpf(0)
        return Ball._raw(m, _up(r) + _slack(m, 4))

    def cosh(self) -> "Ball":
        m = mpmath.cosh(self.mid)
        r = self.rad * mpmath.sinh(abs(self.mid) + self.rad) if self.rad else mpf(0)
        return Ball._raw(m, _up(r) + _slack(m, 4))

    def mul_2exp(self, k: int) -> "Ball":
        return Ball._raw(mpmath.ldexp(self.mid, k), mpmath.ldexp(self.rad, k))

    def inflate(self, extra) -> "Ball":
        return Ball._raw(self.mid, _up(self.rad + mpf(extra)))

    # -- comparisons are deliberately partial -------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.mid == other.mid and self.rad == other.rad

    def __hash__(self):
        return hash((self.mid, self.rad))

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"Ball({mpmath.nstr(self.mid, 20)} +/- {mpmath.nstr(self.rad, 3)})"

    def str(self, digits: int | None = None) -> str:
        digits = digits or mpmath.mp.dps
        return f"[{mpmath.nstr(self.mid, digits)} +/- {mpmath.nstr(self.rad, 3)}]"


_MP_CONSTANT = type(mpmath.pi)  # pi, e, euler, ... evaluated at the working precision


def _convert(x) -> Ball:
    if isinstance(x, Ball):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        m = mpf(x)
        return Ball._raw(m, mpf(0) if m == x else _slack(m))
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError("non-finite value")
        return Ball._raw(mpf(x), mpf(0))
    if isinstance(x, (Fraction, Rational)):
        num, den = x.numerator, x.denominator
        m = mpf(num) / den
        exact = den & (den - 1) == 0 and mpf(num) == num
        return Ball._raw(m, mpf(0) if exact else _slack(m))
    if isinstance(x, mpf):
        return Ball._raw(+x, mpf(0) if +x == x else _slack(x))
    if isinstance(x, (str, _MP_CONSTANT)):
        m = +x if not isinstance(x, str) else mpf(x)
        return Ball._raw(m, _slack(m))
    raise TypeError(f"cannot convert {type(x).__name__} to Ball")


def _coerce(x):
    try:
        return _convert(x)
    except TypeError:
        return NotImplemented


def to_mpf(x) -> mpf:
    """Nearest mpf at the current precision (accepts Fraction and Ball midpoints)."""
    if isinstance(x, Ball):
        return x.mid
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def as_ball(x) -> Ball:
    return _convert(x)


def ball_sum(items) -> Ball:
    """Sum with a single rounding-error term for the whole accumulation."""
    mid = mpf(0)
    rad = mpf(0)
    absum = mpf(0)
    n = 0
    for it in items:
        b = _convert(it)
        mid += b.mid
        rad += b.rad
        absum += abs(b.mid)
        n += 1
    return Ball._raw(mid, _up(rad) + (n + 1) * absum * _eps())
