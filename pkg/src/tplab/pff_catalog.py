"""Closed-form Polya frequency functions with transforms and zero data.

Each entry carries two evaluators: ``eval`` returns a certified Ball, and
``eval_mpf`` is a fast point evaluator used inside quadrature.  Convergence
strips are hard-coded open intervals.  For entries that are not integrable
(gumbel, logistic, jacobi_theta) ``moment_tilt`` is the exponent ``c`` of
the integrable tilt ``e^(-c x) Lambda(x)`` used for moments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import mpf

from .errors import DomainError, PrecisionExhaustedError, StripViolationError
from .lp_class import LPFactorization, OneSidedFactorization
from .numerics.ball import Ball, as_ball, to_mpf
from .numerics.precision import PrecisionConfig
from .numerics.special import gamma_real
from .transforms.quadrature import DecayEnvelope

__all__ = [
    "CatalogEntry",
    "catalog_list",
    "get_entry",
    "theta_eval",
    "gaussian",
    "one_sided_exp",
    "gumbel",
    "gumbel_normalized",
    "logistic",
    "jacobi_theta",
    "indicator",
    "CATALOG_NAMES",
]

# number of explicit zeros kept in the factorization data
ZERO_COUNT = 64

INF = mpf("inf")


@dataclass(frozen=True)
class Strip:
    lo: object  # None for -infinity
    hi: object  # None for +infinity

    def contains(self, s) -> bool:
        s = to_mpf(s)
        return (self.lo is None or s > to_mpf(self.lo)) and (self.hi is None or s < to_mpf(self.hi))

    def check(self, s):
        if not self.contains(s):
            raise StripViolationError(f"s={mpmath.nstr(to_mpf(s), 10)} outside the strip {self}")

    def __str__(self):
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"({lo}, {hi})"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    eval: Callable  # x -> Ball
    eval_mpf: Callable  # x -> mpf at the current precision
    support: tuple  # (lo, hi), None = unbounded
    strip: Strip
    psi_description: str
    psi: Callable  # s -> Ball, closed form of Psi
    factorization_fn: Callable | None  # built on demand at the caller's precision
    envelopes: Callable  # (s, p) -> (left, right) DecayEnvelope or None
    breakpoints: tuple = ()
    moments_closed_form: Callable | None = None  # (j, prec) -> Fraction | Ball
    moment_tilt: object = 0
    tilted_even: bool = False  # e^(-tilt x) Lambda(x) is even: odd moments vanish
    window: tuple = (-3, 3)  # where the mass sits, for grid generation
    sample_points: tuple = field(default=(), repr=False)  # strip-interior test points
    params: tuple = ()

    def reciprocal_psi(self, s, prec: PrecisionConfig | None = None) -> Ball:
        prec = prec or PrecisionConfig()
        with prec.context():
            return 1 / self.psi(s, prec)

    @property
    def factorization(self):
        """LPFactorization / OneSidedFactorization data, or None."""
        return self.factorization_fn() if self.factorization_fn else None

    @property
    def integrable(self) -> bool:
        return self.strip.contains(0)


def _pi() -> Ball:
    return Ball.pi()


def _here(prec):
    return prec or PrecisionConfig(digits=max(15, mpmath.mp.dps - 12))




# ---------------------------------------------------------------------------
# theta function
# ---------------------------------------------------------------------------


def _theta_parts(x: mpf):
    """``(value, abs_error)`` for ``sum_j (-1)^j e^(-j^2 x)``, ``x > 0``.

    Large ``x``: the alternating series, error below the first omitted term.
    Small ``x``: the Jacobi-transformed positive series
    ``2 sqrt(pi/x) sum_{j>=0} e^(-pi^2 (j+1/2)^2 / x)``, whose tail after
    the last kept term ``t`` is below ``t q / (1 - q)``, ``q = e^(-2 pi^2 / x)``.
    """
    eps = mpmath.ldexp(mpf(1), -mpmath.mp.prec)
    target = mpmath.ldexp(mpf(1), -mpmath.mp.prec - 4)
    if x >= mpmath.pi:
        val = mpf(1)
        j = 1
        while True:
            t = 2 * mpmath.exp(-j * j * x)
            nxt = 2 * mpmath.exp(-(j + 1) ** 2 * x)
            val += -t if j % 2 else t
            if nxt < target:
                return val, nxt + 8 * j * eps
            j += 1
    pref = 2 * mpmath.sqrt(mpmath.pi / x)
    q = mpmath.exp(-2 * mpmath.pi**2 / x)
    s = mpf(0)
    j = 0
    while True:
        t = mpmath.exp(-(mpmath.pi * (j + mpf(0.5))) ** 2 / x)
        s += t
        if t * q < target * s or t == 0:
            tail = t * q / (1 - q)
            val = pref * s
            return val, pref * tail + 8 * (j + 4) * eps * val
        j += 1


def theta_eval(x, prec: PrecisionConfig | None = None, x_min=mpf("1e-3")) -> Ball:
    """``sum_{j in Z} (-1)^j e^(-j^2 x)`` for ``x > 0``; exactly 0 for ``x <= 0``."""
    prec = prec or PrecisionConfig()
    with prec.context():
        x = mpf(x) if not isinstance(x, Ball) else x.mid
        if x <= 0:
            return Ball(0)
        if x < mpf(x_min):
            raise PrecisionExhaustedError(f"theta_eval below x_min={x_min}")
        v, e = _theta_parts(x)
        return Ball(v, e)


def _theta_mpf(x):
    if x <= 0:
        return mpf(0)
    return _theta_parts(mpf(x))[0]


def _theta_ball(x):
    x = as_ball(x)
    if x.upper <= 0:
        return Ball(0)
    if x.lower <= 0:
        raise DomainError("theta argument straddles 0")
    v, e = _theta_parts(x.mid)
    # Lipschitz bound on [x.lower, oo) covers the input radius
    slope = _theta_slope_bound(x.lower)
    return Ball(v, e + slope * x.rad)


def _theta_slope_bound(x0):
    # theta' = sum_j (-1)^(j+1) j^2 e^(-j^2 x); bounded by sum j^2 e^(-j^2 x0) * 2
    s = mpf(0)
    j = 1
    while True:
        t = 2 * j * j * mpmath.exp(-j * j * x0)
        s += t
        if t < mpf(10) ** (-mpmath.mp.dps) and j * j * x0 > 2:
            return s * 2
        j += 1
        if j > 10**5:
            return INF


# ---------------------------------------------------------------------------
# entries
# ---------------------------------------------------------------------------


def _lin(lo, hi, n=20):
    lo, hi = mpf(lo), mpf(hi)
    return tuple(lo + (hi - lo) * k / (n - 1) for k in range(n))


def _gauss_moments(gamma):
    def rule(j, prec):
        if j % 2:
            return Fraction(0)
        k = j // 2
        dfact = 1
        for i in range(1, 2 * k, 2):
            dfact *= i
        with prec.context():
            return (as_ball(gamma) / (2 * _pi())) ** k * dfact

    return rule


def gaussian(gamma=1) -> CatalogEntry:
    """``gamma^(-1/2) e^(-pi x^2 / gamma)``; ``Psi(s) = e^(-gamma s^2 / (4 pi))``."""
    g = Fraction(gamma) if isinstance(gamma, (int, Fraction)) else mpf(gamma)
    if not g > 0:
        raise DomainError("gaussian needs gamma > 0")

    def ev(x):
        x = as_ball(x)
        return (-_pi() * x * x / g).exp() / as_ball(g).sqrt()

    def ev_mpf(x):
        gm = to_mpf(g)
        return mpmath.exp(-mpmath.pi * x * x / gm) / mpmath.sqrt(gm)

    def psi(s, prec=None):
        s = as_ball(s)
        return (-(as_ball(g) * s * s) / (4 * _pi())).exp()

    def env(s, p):
        gm = to_mpf(g)
        a = mpmath.pi / gm
        c = 1 / mpmath.sqrt(gm)
        s = to_mpf(s)
        return (DecayEnvelope("gaussian", a=a, b=s, c=c, p=p, start=mpf(0)),
                DecayEnvelope("gaussian", a=a, b=-s, c=c, p=p, start=mpf(0)))

    gm = float(g)
    w = 3 * gm**0.5
    return CatalogEntry(
        name="gaussian",
        eval=ev,
        eval_mpf=ev_mpf,
        support=(None, None),
        strip=Strip(None, None),
        psi_description="exp(-gamma s^2 / (4 pi))",
        psi=psi,
        factorization_fn=lambda: LPFactorization(gamma=as_ball(g) / (4 * _pi())),
        envelopes=env,
        breakpoints=(0,),
        moments_closed_form=_gauss_moments(g),
        window=(-w, w),
        sample_points=_lin(-3, 3),
        params=(("gamma", str(g)),),
    )


def one_sided_exp(delta=1) -> CatalogEntry:
    """``delta^-1 e^(-x/delta)`` on ``[0, oo)``; ``Psi(s) = 1 + delta s``."""
    d = Fraction(delta) if isinstance(delta, (int, Fraction)) else mpf(delta)
    if not d > 0:
        raise DomainError("one_sided_exp needs delta > 0")
    def ev(x):
        x = as_ball(x)
        if x.upper < 0:
            return Ball(0)
        if x.lower < 0:
            raise DomainError("one_sided_exp argument straddles the jump at 0")
        return (-x / d).exp() / d

    def ev_mpf(x):
        dm = to_mpf(d)
        return mpf(0) if x < 0 else mpmath.exp(-x / dm) / dm

    def psi(s, prec=None):
        return 1 + as_ball(s) * d

    def env(s, p):
        dm = to_mpf(d)
        return (DecayEnvelope("compact", a=0),
                DecayEnvelope("exponential", a=1 / dm + to_mpf(s), c=1 / dm, p=p))

    def moments(j, prec):
        from math import factorial

        if isinstance(d, Fraction):
            return d**j * factorial(j)
        with prec.context():
            return as_ball(d) ** j * factorial(j)

    return CatalogEntry(
        name="one_sided_exp",
        eval=ev,
        eval_mpf=ev_mpf,
        support=(0, None),
        strip=Strip(-1 / d if isinstance(d, Fraction) else -1 / d, None),
        psi_description="1 + delta s",
        psi=psi,
        factorization_fn=lambda: OneSidedFactorization(zeros=(d,)),
        envelopes=env,
        moments_closed_form=moments,
        window=(0, 4 * float(d)),
        sample_points=_lin(-0.9 / to_mpf(d), 4),
        params=(("delta", str(d)),),
    )


def _harmonic_zeros(sign_pairs=False, squares=False):
    zs = []
    for n in range(1, ZERO_COUNT + 1):
        base = Fraction(1, n * n) if squares else Fraction(1, n)
        zs.append(base)
        if sign_pairs:
            zs.append(-base)
    return tuple(zs)


def _gumbel_mpf(x):
    return mpmath.exp(-mpmath.exp(-x))


def gumbel() -> CatalogEntry:
    """``e^(-e^(-x))``; ``1/Psi(s) = Gamma(s)``, strip ``(0, oo)``."""

    def ev(x):
        return (-(-as_ball(x)).exp()).exp()

    def psi(s, prec=None):
        return 1 / gamma_real(as_ball(s).mid, _here(prec))

    def env(s, p):
        s = to_mpf(s)
        # left: e^(-e^u) e^(s u); right: e^(-s u)
        return (DecayEnvelope("double-exponential", b=s, p=p, start=mpf(1)),
                DecayEnvelope("exponential", a=s, p=p))

    return CatalogEntry(
        name="gumbel",
        eval=ev,
        eval_mpf=_gumbel_mpf,
        support=(None, None),
        strip=Strip(0, None),
        psi_description="1/Gamma(s)",
        psi=psi,
        factorization_fn=lambda: LPFactorization(m=1, delta=Ball.euler(), zeros=_harmonic_zeros(), tail_sq_bound=Fraction(1, ZERO_COUNT)),
        envelopes=env,
        breakpoints=(0,),
        moment_tilt=1,
        window=(-2, 5),
        sample_points=_lin(0.25, 5),
    )


def gumbel_normalized() -> CatalogEntry:
    """``e^(-x - e^(-x))``; ``1/Psi(s) = Gamma(s + 1)``, strip ``(-1, oo)``."""

    def ev(x):
        x = as_ball(x)
        return (-x - (-x).exp()).exp()

    def ev_mpf(x):
        return mpmath.exp(-x - mpmath.exp(-x))

    def psi(s, prec=None):
        return 1 / gamma_real(as_ball(s).mid + 1, _here(prec))

    def env(s, p):
        s = to_mpf(s)
        return (DecayEnvelope("double-exponential", b=1 + s, p=p, start=mpf(1)),
                DecayEnvelope("exponential", a=1 + s, p=p))

    return CatalogEntry(
        name="gumbel_normalized",
        eval=ev,
        eval_mpf=ev_mpf,
        support=(None, None),
        strip=Strip(-1, None),
        psi_description="1/Gamma(s + 1)",
        psi=psi,
        factorization_fn=lambda: LPFactorization(delta=Ball.euler(), zeros=_harmonic_zeros(), tail_sq_bound=Fraction(1, ZERO_COUNT)),
        envelopes=env,
        breakpoints=(0,),
        window=(-2, 5),
        sample_points=_lin(-0.75, 4),
    )


def logistic() -> CatalogEntry:
    """``1/(1 + e^(-x))``; ``Psi(s) = sin(pi s)/pi``, strip ``(0, 1)``."""

    def ev(x):
        return 1 / (1 + (-as_ball(x)).exp())

    def ev_mpf(x):
        return 1 / (1 + mpmath.exp(-x))

    def psi(s, prec=None):
        return (_pi() * as_ball(s)).sin() / _pi()

    def env(s, p):
        s = to_mpf(s)
        # left: e^(s u) / (1 + e^u) <= e^(-(1-s) u); right: <= e^(-s u)
        return (DecayEnvelope("exponential", a=1 - s, p=p),
                DecayEnvelope("exponential", a=s, p=p))

    return CatalogEntry(
        name="logistic",
        eval=ev,
        eval_mpf=ev_mpf,
        support=(None, None),
        strip=Strip(0, 1),
        psi_description="sin(pi s)/pi",
        psi=psi,
        factorization_fn=lambda: LPFactorization(m=1, zeros=_harmonic_zeros(sign_pairs=True), tail_sq_bound=Fraction(2, ZERO_COUNT), paired=True),
        envelopes=env,
        breakpoints=(0,),
        moment_tilt=Fraction(1, 2),
        tilted_even=True,
        window=(-5, 5),
        sample_points=tuple(mpf(k) / 21 for k in range(1, 21)),
    )


def jacobi_theta() -> CatalogEntry:
    """``sum (-1)^j e^(-j^2 x)`` on ``x > 0``; ``Psi(s) = sqrt(s) sinh(pi sqrt(s))/pi``."""

    def psi(s, prec=None):
        s = as_ball(s)
        if s.is_positive():
            r = s.sqrt()
            return r * (_pi() * r).sinh() / _pi()
        if s.is_negative():
            r = (-s).sqrt()
            return r * (_pi() * r).sin() / _pi()
        if s.is_exact() and s.mid == 0:
            return Ball(0)
        raise DomainError("Psi argument straddles 0")

    def env(s, p):
        return (DecayEnvelope("compact", a=0),
                DecayEnvelope("exponential", a=to_mpf(s), p=p))

    return CatalogEntry(
        name="jacobi_theta",
        eval=_theta_ball,
        eval_mpf=_theta_mpf,
        support=(0, None),
        strip=Strip(0, None),
        psi_description="sqrt(s) sinh(pi sqrt(s))/pi  (= -(1/pi) sqrt(-s) sin(pi sqrt(-s)))",
        psi=psi,
        factorization_fn=lambda: OneSidedFactorization(m=1, zeros=_harmonic_zeros(squares=True), tail_sum_bound=Fraction(1, ZERO_COUNT)),
        envelopes=env,
        breakpoints=(mpf(1) / 4, 1),
        moment_tilt=1,
        window=(0, 5),
        sample_points=_lin(0.25, 5),
    )


def indicator() -> CatalogEntry:
    """Indicator of ``[0, 1]``: a negative control, not a Polya frequency function."""

    def ev(x):
        x = as_ball(x)
        if x.lower >= 0 and x.upper <= 1:
            return Ball(1)
        if x.upper < 0 or x.lower > 1:
            return Ball(0)
        raise DomainError("indicator argument straddles a jump")

    def ev_mpf(x):
        return mpf(1) if 0 <= x <= 1 else mpf(0)

    def psi(s, prec=None):
        s = as_ball(s)
        if s.is_exact() and s.mid == 0:
            return Ball(1)
        return s / (1 - (-s).exp())

    def env(s, p):
        return DecayEnvelope("compact", a=0), DecayEnvelope("compact", a=1)

    return CatalogEntry(
        name="indicator",
        eval=ev,
        eval_mpf=ev_mpf,
        support=(0, 1),
        strip=Strip(None, None),
        psi_description="s / (1 - e^(-s))  (has complex zeros: not in the class)",
        psi=psi,
        factorization_fn=None,
        envelopes=env,
        window=(-0.5, 1.5),
        sample_points=_lin(-3, 3),
    )


CATALOG_NAMES = ("gaussian", "one_sided_exp", "gumbel", "gumbel_normalized", "logistic", "jacobi_theta")

_BUILDERS = {
    "gaussian": gaussian,
    "one_sided_exp": one_sided_exp,
    "gumbel": gumbel,
    "gumbel_normalized": gumbel_normalized,
    "logistic": logistic,
    "jacobi_theta": jacobi_theta,
    "indicator": indicator,
}


def catalog_list() -> list[CatalogEntry]:
    """The six closed-form entries, default parameters (gamma = delta = 1)."""
    return [_BUILDERS[n]() for n in CATALOG_NAMES]


def get_entry(name: str) -> CatalogEntry:
    """Entry by name; ``gaussian:2`` / ``one_sided_exp:1/2`` set the parameter."""
    base, _, arg = name.partition(":")
    if base not in _BUILDERS:
        raise DomainError(f"unknown catalog entry {name!r}")
    if arg:
        if base not in ("gaussian", "one_sided_exp"):
            raise DomainError(f"{base} takes no parameter")
        return _BUILDERS[base](Fraction(arg))
    return _BUILDERS[base]()
