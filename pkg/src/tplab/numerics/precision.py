from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass

import mpmath

from ..errors import DomainError

DEFAULT_DIGITS = 50
ENV_DIGITS = "TPLAB_DIGITS"


def default_digits() -> int:
    raw = os.environ.get(ENV_DIGITS)
    if raw is None:
        return DEFAULT_DIGITS
    try:
        return int(raw)
    except ValueError as exc:
        raise DomainError(f"{ENV_DIGITS}={raw!r} is not an integer") from exc


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision and truncation caps.

    ``digits`` is the decimal precision results are certified to (roughly);
    computations run with ``guard`` extra digits.
    """

    digits: int = DEFAULT_DIGITS
    max_terms: int = 4000
    fd_stencil: int = 8
    guard: int = 12

    def __post_init__(self):
        if self.digits < 15:
            raise DomainError("digits must be >= 15")
        if self.max_terms < 8:
            raise DomainError("max_terms must be >= 8")
        if self.fd_stencil < 1:
            raise DomainError("fd_stencil must be positive")

    @classmethod
    def from_env(cls, **kw) -> "PrecisionConfig":
        kw.setdefault("digits", default_digits())
        return cls(**kw)

    @property
    def work_dps(self) -> int:
        return self.digits + self.guard

    @contextmanager
    def context(self, extra: int = 0):
        with mpmath.workdps(self.work_dps + extra):
            yield

    def with_digits(self, digits: int) -> "PrecisionConfig":
        return PrecisionConfig(digits, self.max_terms, self.fd_stencil, self.guard)

    def target_radius(self) -> mpmath.mpf:
        return mpmath.mpf(10) ** (-self.digits)
