"""Exact verification toolkit for Weyl(E6), the 27 lines and their quadratic forms."""

__version__ = "0.1.0"
