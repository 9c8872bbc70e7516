"""Truncated power series in factorial normalization.

``PowerSeries([b0, b1, ...])`` stands for ``sum_j b_j s^j / j!``.  Entries
are either all exact (``int``/``Fraction``) or :class:`Ball`; exact series
stay exact under every operation here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .ball import Ball, as_ball


def is_exact_number(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        items = tuple(coeffs)
        if not items:
            raise ValueError("a power series needs at least one coefficient")
        if not all(is_exact_number(c) for c in items):
            items = tuple(as_ball(c) for c in items)
        else:
            items = tuple(Fraction(c) for c in items)
        object.__setattr__(self, "coeffs", items)

    @classmethod
    def from_ordinary(cls, coeffs: Sequence) -> "PowerSeries":
        """From ordinary coefficients ``a_j`` of ``sum a_j s^j``."""
        return cls([c * factorial(j) for j, c in enumerate(coeffs)])

    @property
    def length(self) -> int:
        return len(self.coeffs)

    @property
    def order(self) -> int:
        """Highest stored index N (``length == N + 1``)."""
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return isinstance(self.coeffs[0], Fraction)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, j):
        return self.coeffs[j]

    def __iter__(self):
        return iter(self.coeffs)

    def ordinary(self) -> list:
        return [c / factorial(j) for j, c in enumerate(self.coeffs)]

    def truncate(self, n: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[: n + 1])

    def as_balls(self) -> "PowerSeries":
        return PowerSeries([as_ball(c) for c in self.coeffs])

    def evaluate(self, s):
        """Value of the truncated sum at ``s`` (Horner on ordinary coefficients)."""
        acc = 0
        for c in reversed(self.ordinary()):
            acc = acc * s + c
        return acc

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(len(self), len(other))
        out = []
        for k in range(n):
            acc = 0
            for j in range(k + 1):
                acc = acc + comb(k, j) * self.coeffs[j] * other.coeffs[k - j]
            out.append(acc)
        return PowerSeries(out)

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs])

    def max_radius(self):
        if self.exact:
            return 0
        return max(c.rad for c in self.coeffs)
