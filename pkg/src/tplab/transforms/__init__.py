from .lambda_xi import lambda_from_xi, lambda_positive, lambda_subject
from .laplace import TransformResult, bilateral_laplace, weighted_integral
from .quadrature import DecayEnvelope, QuadratureConfig, integrate
from .roundtrip import roundtrip_check

__all__ = [
    "DecayEnvelope",
    "QuadratureConfig",
    "TransformResult",
    "bilateral_laplace",
    "integrate",
    "lambda_from_xi",
    "lambda_positive",
    "lambda_subject",
    "roundtrip_check",
    "weighted_integral",
]
