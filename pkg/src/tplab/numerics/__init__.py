"""Ball arithmetic, precision control and real-axis special functions."""

from .ball import Ball, as_ball, ball_sum
from .precision import PrecisionConfig
from .special import eta_real, gamma_real, xi_real, zeta_real

__all__ = [
    "Ball",
    "as_ball",
    "ball_sum",
    "PrecisionConfig",
    "gamma_real",
    "zeta_real",
    "eta_real",
    "xi_real",
]
