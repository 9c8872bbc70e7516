"""Certified numerical experiments on totally positive functions, the
Laguerre-Polya class and the Riemann xi function."""

__version__ = "0.1.0"
