"""Name -> evaluable function, so worker processes can rebuild what they test."""

from __future__ import annotations

from functools import lru_cache

from .errors import DomainError
from .numerics.precision import PrecisionConfig
from .pff_catalog import get_entry
from .transforms.lambda_xi import lambda_subject
from .transforms.quadrature import QuadratureConfig

XI_LAMBDA = "xi-lambda"

__all__ = ["resolve_subject", "XI_LAMBDA"]


@lru_cache(maxsize=32)
def resolve_subject(name: str, prec: PrecisionConfig | None = None, qc: QuadratureConfig | None = None):
    """Catalog entry (``gaussian``, ``gaussian:2``, ``indicator``, ...) or the
    numerically inverted ``xi-lambda`` kernel."""
    if name == XI_LAMBDA:
        return lambda_subject(prec or PrecisionConfig(), qc or QuadratureConfig())
    try:
        return get_entry(name)
    except DomainError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad subject {name!r}: {exc}") from exc
