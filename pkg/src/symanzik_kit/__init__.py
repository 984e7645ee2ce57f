"""Exact Kirchhoff and Symanzik polynomials of higher order."""

__version__ = "0.1.0"
