"""Small dense determinants and positive-definiteness tests in ball arithmetic.

Exact (``Fraction``) matrices are handled exactly with fraction-free
elimination.  Ball matrices use Gaussian elimination with full pivoting on
midpoints; when no pivot can be separated from zero the remaining block is
bounded by Hadamard's inequality instead of failing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath import mpf

from .numerics.ball import Ball, as_ball
from .numerics.series import is_exact_number

__all__ = ["det", "cholesky_pivots", "PDVerdict", "psd_verdict", "min_eigenvalue"]


def _is_exact_matrix(m) -> bool:
    return all(is_exact_number(x) for row in m for x in row)


def _det_exact(m) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _hadamard(rows) -> mpf:
    bound = mpf(1)
    for row in rows:
        bound *= mpmath.sqrt(mpmath.fsum(x.magnitude() ** 2 for x in row))
    return bound


def det(m: Sequence[Sequence]):
    """Determinant; ``Fraction`` for exact input, otherwise a certified Ball."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if _is_exact_matrix(m):
        return _det_exact(m)
    a = [[as_ball(x) for x in row] for row in m]
    acc = Ball(1)
    for k in range(n):
        # full pivoting on midpoints keeps the radii from compounding
        pr, pc = max(((r, c) for r in range(k, n) for c in range(k, n)), key=lambda rc: abs(a[rc[0]][rc[1]].mid))
        if not a[pr][pc].is_nonzero():
            tail = _hadamard([row[k:] for row in a[k:]])
            return Ball(0, (acc.magnitude() * tail) * (1 + mpf(2) ** (-mpmath.mp.prec + 4)))
        if pr != k:
            a[k], a[pr] = a[pr], a[k]
            acc = -acc
        if pc != k:
            for row in a:
                row[k], row[pc] = row[pc], row[k]
            acc = -acc
        p = a[k][k]
        acc = acc * p
        for i in range(k + 1, n):
            f = a[i][k] / p
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - f * a[k][j]
    return acc


def cholesky_pivots(m: Sequence[Sequence]) -> list:
    """Diagonal pivots ``d_k`` of ``m = L D L^T``; stops at the first pivot that
    is not certified positive (it is still returned, last)."""
    n = len(m)
    exact = _is_exact_matrix(m)
    a = [[Fraction(x) if exact else as_ball(x) for x in row] for row in m]
    pivots = []
    for k in range(n):
        d = a[k][k]
        pivots.append(d)
        positive = d > 0 if exact else d.is_positive()
        if not positive:
            break
        for i in range(k + 1, n):
            f = a[i][k] / d
            for j in range(k + 1, i + 1):
                a[i][j] = a[i][j] - f * a[k][j]
                a[j][i] = a[i][j]
    return pivots


@dataclass(frozen=True)
class PDVerdict:
    status: str  # "certified-positive-definite" | "certified-not" | "undecided"
    min_eigenvalue: Ball
    pivots: tuple

    @property
    def certified(self) -> bool:
        return self.status == "certified-positive-definite"


def psd_verdict(m: Sequence[Sequence], with_eigenvalue: bool = True) -> PDVerdict:
    """Three-valued positive-definiteness test by symmetric elimination.

    All pivots certified positive means positive definite.  A pivot whose
    upper end is negative (after certified-positive predecessors) means a
    leading principal minor is negative: certified not positive definite.
    """
    n = len(m)
    pivots = cholesky_pivots(m)
    exact = _is_exact_matrix(m)
    last = pivots[-1]
    if len(pivots) == n and (last > 0 if exact else last.is_positive()):
        status = "certified-positive-definite"
    elif (last <= 0) if exact else (last.upper < 0):
        status = "certified-not"
    else:
        status = "undecided"
    eig = min_eigenvalue(m) if with_eigenvalue else Ball(0, mpf("inf"))
    if status == "undecided" and eig.is_positive():
        status = "certified-positive-definite"
    elif status == "undecided" and eig.upper < 0:
        status = "certified-not"
    return PDVerdict(status, eig, tuple(pivots))


def min_eigenvalue(m: Sequence[Sequence]) -> Ball:
    """Enclosure of the smallest eigenvalue of a symmetric (ball) matrix.

    Upper end: Rayleigh quotient of an approximate eigenvector, evaluated in
    ball arithmetic.  Lower end: ``lam - eps`` once ``m - (lam - eps) I`` is
    certified positive definite by elimination.
    """
    n = len(m)
    a = [[as_ball(x) for x in row] for row in m]
    mid = mpmath.matrix([[x.mid for x in row] for row in a])
    evals, evecs = mpmath.eigsy(mid)
    order = sorted(range(n), key=lambda i: evals[i])
    lam = evals[order[0]]
    v = [Ball(evecs[i, order[0]]) for i in range(n)]
    num = Ball(0)
    for i in range(n):
        for j in range(n):
            num = num + v[i] * a[i][j] * v[j]
    den = Ball(0)
    for x in v:
        den = den + x * x
    upper = (num / den).upper
    scale = max([mpf(1)] + [abs(x.mid) for row in a for x in row])
    eps = abs(upper - lam) + mpmath.fsum(x.rad for row in a for x in row) + scale * mpf(10) ** (-mpmath.mp.dps + 5)
    for _ in range(60):
        shift = lam - eps
        shifted = [[a[i][j] - (shift if i == j else 0) for j in range(n)] for i in range(n)]
        piv = cholesky_pivots(shifted)
        if len(piv) == n and piv[-1].is_positive():
            lower = shift
            return Ball.from_interval(lower, max(upper, lower))
        eps *= 4
    # Gershgorin fallback, always valid
    gersh = min(a[i][i].lower - mpmath.fsum(a[i][j].magnitude() for j in range(n) if j != i) for i in range(n))
    return Ball.from_interval(min(gersh, upper), upper)
