"""Exact computation of the LHS spectral sequence of Heis(p^n) over F_p."""

__version__ = "0.1.0"
