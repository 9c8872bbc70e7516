"""Total-positivity batteries and the Bochner Gram test for ``1/xi``.

A function ``f`` is totally positive when every matrix ``(f(x_j - y_k))``
built from increasing ``xs`` and ``ys`` has a non-negative determinant.
Finite testing cannot prove that; the batteries here search for certified
counterexamples.

Grid points live on a dyadic lattice so they are exact in every precision,
print exactly, and let repeated differences hit a value cache.  Each trial
draws from its own RNG seeded by ``(seed, order, trial)``, so results do
not depend on how trials are spread over worker processes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

from .errors import DomainError
from .linalg import PDVerdict, psd_verdict
from .linalg import det as ball_det
from .numerics.ball import Ball, to_mpf
from .numerics.precision import PrecisionConfig
from .numerics.special import xi_real
from .parallel import parallel_map
from .subjects import XI_LAMBDA, resolve_subject
from .transforms.quadrature import QuadratureConfig

__all__ = [
    "Grid",
    "OrderSummary",
    "TPReport",
    "tp_det",
    "tp_battery",
    "STRATEGIES",
    "bochner_gram",
    "bochner_battery",
    "BochnerReport",
]

MAX_ORDER = 6
STRATEGIES = ("uniform-window", "clustered", "adversarial-support-edges")
CATALOG_LATTICE = Fraction(1, 1024)
LAMBDA_LATTICE = Fraction(1, 64)
ESCALATION_DIGITS = 25


@dataclass(frozen=True)
class Grid:
    xs: tuple
    ys: tuple

    def __post_init__(self):
        xs = tuple(Fraction(x) for x in self.xs)
        ys = tuple(Fraction(y) for y in self.ys)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        n = len(xs)
        if n != len(ys):
            raise DomainError("xs and ys must have equal length")
        if not 1 <= n <= MAX_ORDER:
            raise DomainError(f"grid order must be between 1 and {MAX_ORDER}")
        for pts in (xs, ys):
            if any(b <= a for a, b in zip(pts, pts[1:])):
                raise DomainError("grid points must be strictly increasing")

    @property
    def order(self) -> int:
        return len(self.xs)

    def to_json(self) -> dict:
        return {"xs": [_frac_str(x) for x in self.xs], "ys": [_frac_str(y) for y in self.ys]}


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _num_str(x: mpf, digits: int) -> str:
    return mpmath.nstr(x, digits, min_fixed=-3, max_fixed=3) if x else "0"


def tp_det(f, grid: Grid | None = None, prec: PrecisionConfig | None = None, *, xs=None, ys=None) -> Ball:
    """Enclosure of ``det(f(x_j - y_k))`` (interval LU with full pivoting)."""
    if grid is None:
        grid = Grid(tuple(xs), tuple(ys))
    prec = prec or PrecisionConfig()
    ev = f.eval if hasattr(f, "eval") else f
    with prec.context():
        m = [[ev(x - y) for y in grid.ys] for x in grid.xs]
        return ball_det(m)


# -- grid generation --------------------------------------------------------

def _lattice_points(rng: random.Random, lo: Fraction, hi: Fraction, n: int, step: Fraction) -> tuple:
    i0 = -((-lo) // step)  # ceil
    i1 = hi // step
    count = i1 - i0 + 1
    if count < n:
        raise DomainError("window too small for the requested order")
    return tuple(sorted((i0 + k) * step for k in rng.sample(range(count), n)))


def _snap(x: Fraction, step: Fraction) -> Fraction:
    return round(x / step) * step


def _support_edges(f, window) -> list:
    edges = []
    for b in getattr(f, "support", (None, None)):
        if b is not None:
            edges.append(Fraction(b))
    return edges or [Fraction(window[0]), Fraction(window[1])]


def make_grid(f, n: int, strategy: str, rng: random.Random, step: Fraction) -> Grid:
    lo, hi = (_snap(Fraction(w), step) for w in getattr(f, "window", (-3, 3)))
    if strategy == "uniform-window":
        return Grid(_lattice_points(rng, lo, hi, n, step), _lattice_points(rng, lo, hi, n, step))
    if strategy == "clustered":
        width = (hi - lo) / 2 ** rng.randint(1, 5)
        width = max(width, n * step * 4)
        pts = []
        for _ in range(2):
            c = lo + (hi - lo - width) * Fraction(rng.randint(0, 1 << 20), 1 << 20)
            pts.append(_lattice_points(rng, _snap(c, step), _snap(c + width, step), n, step))
        return Grid(*pts)
    if strategy == "adversarial-support-edges":
        # put differences x_j - y_k just inside / outside a support edge
        edges = _support_edges(f, (lo, hi))
        ys = _lattice_points(rng, lo, hi, n, step)
        span = max(step * 64, (hi - lo) / 16)
        xs = set()
        for y in ys:
            e = rng.choice(edges)
            xs.add(_snap(y + e + span * Fraction(rng.randint(-1024, 1024), 1024), step))
        while len(xs) < n:
            xs.add(_lattice_points(rng, lo, hi, 1, step)[0])
        xs = sorted(xs)
        while len(xs) > n:
            xs.pop(rng.randrange(len(xs)))
        return Grid(tuple(xs), ys)
    raise DomainError(f"unknown strategy {strategy!r}")


# -- battery ----------------------------------------------------------------

@dataclass(frozen=True)
class OrderSummary:
    n: int
    trials: int
    min_det: Ball
    worst_grid: Grid
    undecided: int

    def to_json(self, digits: int) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "min_det": {"center": _num_str(self.min_det.mid, digits), "radius": _num_str(self.min_det.rad, 6)},
            "worst_grid": self.worst_grid.to_json(),
            "undecided": self.undecided,
        }


@dataclass(frozen=True)
class TPReport:
    function: str
    strategy: str
    seed: int
    digits: int
    orders: tuple
    verdict: str  # no-certified-violation | certified-violation | undecided

    def to_json(self) -> dict:
        return {
            "function": self.function,
            "strategy": self.strategy,
            "seed": self.seed,
            "orders": [o.to_json(self.digits) for o in self.orders],
            "verdict": self.verdict,
        }


@lru_cache(maxsize=64)
def _escalated(prec: PrecisionConfig) -> PrecisionConfig:
    return prec.with_digits(prec.digits + ESCALATION_DIGITS)


def _trial(item):
    """One determinant, escalating precision once when it straddles zero."""
    name, prec, qc, grid, escalate = item
    f = resolve_subject(name, prec, qc)
    d = tp_det(f, grid, prec)
    if escalate and d.contains_zero() and d.rad > 0:
        d = tp_det(f, grid, _escalated(prec))
    return d


def undecided_tolerance(prec: PrecisionConfig) -> mpf:
    """An enclosure of 0 wider than this means the sign is genuinely unresolved."""
    return mpf(10) ** (-(prec.digits - 20))


def tp_battery(
    f,
    max_order: int,
    trials: int,
    seed: int,
    strategy: str = "uniform-window",
    prec: PrecisionConfig | None = None,
    qc: QuadratureConfig | None = None,
    threads: int | None = 1,
) -> TPReport:
    """Seeded search for negative determinants at orders ``1..max_order``.

    ``f`` is a subject name (see :func:`resolve_subject`); names rather
    than objects are what worker processes receive.  Determinants that
    straddle zero are recomputed once with more digits (catalog entries
    only; ``xi-lambda`` radii are dominated by its quadrature budget).
    """
    if not 1 <= max_order <= MAX_ORDER:
        raise DomainError(f"max_order must be between 1 and {MAX_ORDER}")
    if strategy not in STRATEGIES:
        raise DomainError(f"unknown strategy {strategy!r}")
    if trials < 1:
        raise DomainError("trials must be positive")
    prec = prec or PrecisionConfig()
    qc = qc or QuadratureConfig()
    subj = resolve_subject(f, prec, qc)
    step = LAMBDA_LATTICE if f == XI_LAMBDA else CATALOG_LATTICE
    escalate = f != XI_LAMBDA
    grids = []
    for n in range(1, max_order + 1):
        for t in range(trials):
            rng = random.Random(f"{seed}:{n}:{t}")
            grids.append(make_grid(subj, n, strategy, rng, step))
    dets = parallel_map(_trial, [(f, prec, qc, g, escalate) for g in grids], threads)
    tol = undecided_tolerance(prec)
    orders = []
    violation = undecided = False
    for n in range(1, max_order + 1):
        chunk = list(zip(grids[(n - 1) * trials:n * trials], dets[(n - 1) * trials:n * trials]))
        with prec.context(ESCALATION_DIGITS):
            worst_g, worst = min(chunk, key=lambda gd: gd[1].upper)
            open_count = sum(1 for _, d in chunk if d.contains_zero() and d.rad > tol)
            violation |= worst.upper < 0
        undecided |= open_count > 0
        orders.append(OrderSummary(n, trials, worst, worst_g, open_count))
    verdict = "certified-violation" if violation else ("undecided" if undecided else "no-certified-violation")
    return TPReport(f, strategy, seed, prec.digits, tuple(orders), verdict)


# -- Bochner ----------------------------------------------------------------

def _inverse_xi(d: Fraction, prec: PrecisionConfig) -> Ball:
    return _inverse_xi_cached(abs(d), prec)


@lru_cache(maxsize=4096)
def _inverse_xi_cached(d: Fraction, prec: PrecisionConfig) -> Ball:
    with prec.context():
        return 1 / xi_real(mpf(0.5) + to_mpf(d), prec)


def bochner_gram(taus, prec: PrecisionConfig | None = None) -> PDVerdict:
    """Positive-definiteness verdict for ``G_jk = 1/xi(1/2 + tau_j - tau_k)``."""
    prec = prec or PrecisionConfig()
    taus = [Fraction(t) for t in taus]
    if len(set(taus)) != len(taus):
        raise DomainError("taus must be distinct")
    with prec.context():
        g = [[_inverse_xi(a - b, prec) for b in taus] for a in taus]
        return psd_verdict(g)


@dataclass(frozen=True)
class BochnerReport:
    seed: int
    digits: int
    items: tuple = field(default=())  # (taus, PDVerdict)

    @property
    def verdict(self) -> str:
        statuses = {v.status for _, v in self.items}
        if "certified-not" in statuses:
            return "certified-violation"
        if "undecided" in statuses:
            return "undecided"
        return "no-certified-violation"

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": [
                {
                    "taus": [_frac_str(t) for t in taus],
                    "status": v.status,
                    "min_eigenvalue": {"center": _num_str(v.min_eigenvalue.mid, self.digits), "radius": _num_str(v.min_eigenvalue.rad, 6)},
                }
                for taus, v in self.items
            ],
            "verdict": self.verdict,
        }


def _bochner_trial(item):
    taus, prec = item
    return bochner_gram(taus, prec)


def bochner_battery(n_max: int = 6, tau_range=5, trials: int = 100, seed: int = 0, prec: PrecisionConfig | None = None, threads: int | None = 1) -> BochnerReport:
    """Random tau-sets (sizes ``1..n_max`` in ``[-tau_range, tau_range]``)."""
    if not 1 <= n_max <= MAX_ORDER:
        raise DomainError(f"n_max must be between 1 and {MAX_ORDER}")
    prec = prec or PrecisionConfig()
    r = Fraction(tau_range)
    sets = []
    for t in range(trials):
        rng = random.Random(f"bochner:{seed}:{t}")
        n = rng.randint(1, n_max)
        sets.append(_lattice_points(rng, -r, r, n, CATALOG_LATTICE))
    verdicts = parallel_map(_bochner_trial, [(s, prec) for s in sets], threads)
    return BochnerReport(seed, prec.digits, tuple(zip(sets, verdicts)))
