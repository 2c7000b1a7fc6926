"""Exact Gauss sums and determinants of Gauss-sum matrices over finite fields."""

__version__ = "0.1.0"
