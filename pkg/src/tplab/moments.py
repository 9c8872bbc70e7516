"""Moment sequences and the moments -> series -> reciprocal -> Jensen pipeline.

For a Polya frequency function ``f`` with moments ``mu_j = int x^j f(x) dx``
the two-sided Laplace transform has the expansion

    F(s) = sum_j (-1)^j mu_j s^j / j!,

so in factorial normalization ``F`` has coefficients ``(-1)^j mu_j``.  Its
reciprocal ``Psi = 1/F`` lies in the Laguerre-Polya class, which makes every
``q_n = Psi(D) x^n`` real-rooted.

Entries whose transform does not converge at ``s = 0`` are handled through
their ``moment_tilt`` ``c``: the moments are those of ``e^(-c x) f(x)``,
again a Polya frequency function, with transform ``F(s + c)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
from .errors import DomainError, LengthError
from .lp_class import apply_series_operator, jensen, series_reciprocal
from .numerics.ball import Ball, as_ball
from .numerics.precision import PrecisionConfig
from .numerics.series import PowerSeries
from .parallel import parallel_map
from .polyzero import CountInterval, Polynomial, random_exact_polynomial, real_root_count, zero_decreasing_check
from .pff_catalog import CATALOG_NAMES
from .subjects import resolve_subject
from .transforms.laplace import weighted_integral
from .transforms.quadrature import QuadratureConfig

__all__ = [
    "MomentSequence",
    "compute_moments",
    "f_series",
    "PipelineResult",
    "schoenberg_pipeline",
    "rootedness_verdict",
    "VDReport",
    "vd_battery",
]


@dataclass(frozen=True)
class MomentSequence:
    mu: tuple  # Fraction or Ball, mu_0 .. mu_N
    source: str  # "closed-form" | "quadrature"
    tilt: object = 0

    def __post_init__(self):
        if not self.mu:
            raise LengthError("empty moment sequence")
        m0 = self.mu[0]
        if not (m0 > 0 if isinstance(m0, Fraction) else as_ball(m0).is_positive()):
            raise DomainError("mu_0 must be certified positive")

    @property
    def N(self) -> int:
        return len(self.mu) - 1


def _moment_by_quadrature(item):
    name, j, qc, prec, target = item
    f = resolve_subject(name)
    return weighted_integral(f, f.moment_tilt, j, qc.replace(target_abs_err=target), prec)


def compute_moments(f, N: int, qc: QuadratureConfig | None = None, prec: PrecisionConfig | None = None, threads: int | None = 1) -> MomentSequence:
    """``mu_0 .. mu_N`` of ``f`` (tilted by ``f.moment_tilt``).

    Closed forms are used when the entry has them.  Otherwise each moment is
    a weighted integral whose error target shrinks by a factor 2 per index,
    so that higher (more heavily differenced) coefficients stay as sharp
    as the low ones.  Odd moments of an even tilted function are set to an
    exact 0 rather than integrated to a ball around 0.
    """
    if N < 0:
        raise LengthError("N must be non-negative")
    entry = resolve_subject(f) if isinstance(f, str) else f
    qc = qc or QuadratureConfig()
    prec = prec or PrecisionConfig()
    if entry.moments_closed_form is not None:
        with prec.context():
            mu = tuple(entry.moments_closed_form(j, prec) for j in range(N + 1))
        return MomentSequence(mu, "closed-form", entry.moment_tilt)
    with prec.context():
        base = qc.target(prec)
        targets = [base / 2**j for j in range(N + 1)]
    idx = [j for j in range(N + 1) if not (entry.tilted_even and j % 2)]
    if isinstance(f, str):
        vals = parallel_map(_moment_by_quadrature, [(f, j, qc, prec, targets[j]) for j in idx], threads)
    else:
        vals = [weighted_integral(entry, entry.moment_tilt, j, qc.replace(target_abs_err=targets[j]), prec) for j in idx]
    mu = [Ball(0)] * (N + 1)
    for j, v in zip(idx, vals):
        mu[j] = v
    return MomentSequence(tuple(mu), "quadrature", entry.moment_tilt)


def f_series(ms: MomentSequence | Sequence) -> PowerSeries:
    """Laplace transform as a factorial-normalized series: ``coeffs[j] = (-1)^j mu_j``."""
    mu = ms.mu if isinstance(ms, MomentSequence) else tuple(ms)
    return PowerSeries([m if j % 2 == 0 else -m for j, m in enumerate(mu)])


# -- the pipeline -------------------------------------------------------------

def rootedness_verdict(p: Polynomial) -> tuple[str, object]:
    """(``real-rooted`` | ``not-real-rooted`` | ``undecided``, N(p))."""
    n = real_root_count(p)
    if isinstance(n, int):
        return ("real-rooted" if n == p.degree else "not-real-rooted"), n
    if n.lo == p.degree:
        return "real-rooted", n.lo
    if n.hi < p.degree:
        return "not-real-rooted", n
    return "undecided", n


def _count_json(n):
    if isinstance(n, CountInterval):
        return n.lo if n.decided else [n.lo, n.hi]
    return n


@dataclass(frozen=True)
class PipelineResult:
    subject: str
    moments: MomentSequence
    psi_series: PowerSeries
    q_polys: tuple  # q_n = Psi(D) x^n, n = 0..n_max
    q_verdicts: tuple  # (status, N(q_n))
    jensen_verdicts: tuple  # (status, N(p_n)) for the Jensen polynomials of Psi

    @property
    def verdict(self) -> str:
        statuses = [s for s, _ in self.q_verdicts + self.jensen_verdicts]
        if "not-real-rooted" in statuses:
            return "certified-violation"
        if "undecided" in statuses:
            return "undecided"
        return "no-certified-violation"

    def to_json(self, digits: int) -> dict:
        def coeff(c):
            if isinstance(c, Fraction):
                return {"center": str(c), "radius": "0"}
            return {"center": mpmath.nstr(c.mid, digits), "radius": mpmath.nstr(c.rad, 6)}

        return {
            "subject": self.subject,
            "moment_source": self.moments.source,
            "moment_tilt": str(self.moments.tilt),
            "psi_series": [coeff(c) for c in self.psi_series],
            "q_n": [{"n": n, "status": s, "real_zeros": _count_json(k)} for n, (s, k) in enumerate(self.q_verdicts)],
            "jensen": [{"n": n, "status": s, "real_zeros": _count_json(k)} for n, (s, k) in enumerate(self.jensen_verdicts)],
            "verdict": self.verdict,
        }


def schoenberg_pipeline(f, N: int | None = None, n_max: int = 6, prec: PrecisionConfig | None = None, qc: QuadratureConfig | None = None, threads: int | None = 1) -> PipelineResult:
    """Moments -> ``F`` -> ``Psi = 1/F`` -> real-rootedness of ``q_n`` and of
    the Jensen polynomials of ``Psi`` for ``n <= n_max``."""
    N = 2 * n_max + 4 if N is None else N
    if N < n_max:
        raise LengthError("N must be at least n_max")
    prec = prec or PrecisionConfig()
    name = f if isinstance(f, str) else f.name
    ms = compute_moments(f, N, qc, prec, threads)
    psi = series_reciprocal(f_series(ms), prec)
    qs, qv, jv = [], [], []
    with prec.context():
        for n in range(n_max + 1):
            xn = Polynomial.monomial(n) if psi.exact else Polynomial.monomial(n).to_balls()
            q = apply_series_operator(psi, xn, prec)
            qs.append(q)
            qv.append(rootedness_verdict(q))
            jv.append(rootedness_verdict(jensen(psi, n, prec)[0]))
    return PipelineResult(name, ms, psi, tuple(qs), tuple(qv), tuple(jv))


# -- zero-decreasing battery --------------------------------------------------

@dataclass(frozen=True)
class VDReport:
    seed: int
    trials: int
    subjects: tuple
    cases: tuple  # (trial, subject, p coefficients, status, N(p), N(q))

    @property
    def counts(self) -> dict:
        out = {"holds": 0, "violated": 0, "undecided": 0}
        for c in self.cases:
            out[c[3]] += 1
        return out

    @property
    def verdict(self) -> str:
        c = self.counts
        if c["violated"]:
            return "certified-violation"
        if c["undecided"]:
            return "undecided"
        return "no-certified-violation"

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "subjects": list(self.subjects),
            "counts": self.counts,
            "cases": [
                {"trial": t, "subject": s, "p": [str(c) for c in coeffs], "status": st, "N_p": n_p, "N_q": n_q}
                for t, s, coeffs, st, n_p, n_q in self.cases
            ],
            "verdict": self.verdict,
        }


def _vd_case(item):
    t, polynomial, moment_table, names, prec = item
    rows = []
    with prec.context():
        for name in names:
            r = zero_decreasing_check(moment_table[name], polynomial)
            rows.append((t, name, tuple(polynomial.coeffs), r.status, r.n_p, r.n_q_json()))
    return rows


def vd_battery(
    subjects: Sequence[str] = CATALOG_NAMES,
    trials: int = 200,
    seed: int = 0,
    max_degree: int = 6,
    prec: PrecisionConfig | None = None,
    qc: QuadratureConfig | None = None,
    threads: int | None = 1,
) -> VDReport:
    """Seeded random exact ``p`` (degree ``<= max_degree``) convolved with each
    subject through its moments; checks ``N(f * p) <= N(p)``."""
    prec = prec or PrecisionConfig()
    names = tuple(subjects)
    table = {name: compute_moments(name, max_degree, qc, prec, threads) for name in names}
    polys = [random_exact_polynomial(random.Random(f"vd:{seed}:{t}"), max_degree) for t in range(trials)]
    results = parallel_map(_vd_case, [(t, p, table, names, prec) for t, p in enumerate(polys)], threads)
    return VDReport(seed, trials, names, tuple(row for rows in results for row in rows))
