"""Exact computation of volume sets of log canonical surfaces."""

__version__ = "0.1.0"
