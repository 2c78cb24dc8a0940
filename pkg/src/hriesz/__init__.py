"""Numerical verification of Riesz transforms for Hermite, special Hermite and Laguerre expansions."""

from .special_fn import gamma_ratio, gauss_laguerre, laguerre_fn, psi

__all__ = ["gamma_ratio", "gauss_laguerre", "laguerre_fn", "psi"]
__version__ = "0.1.0"
