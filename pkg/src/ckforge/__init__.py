"""Exact shuffle-algebra computations for polylogarithmic Chabauty-Kim functions."""

__version__ = "0.1.0"
