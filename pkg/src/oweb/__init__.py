"""Exact verification toolkit for the quantum orthogonal web category."""

from .qratfun import RatFun, parse_ratfun, Q, ZERO, ONE

__version__ = "0.1.0"

__all__ = ["RatFun", "parse_ratfun", "Q", "ZERO", "ONE", "__version__"]
