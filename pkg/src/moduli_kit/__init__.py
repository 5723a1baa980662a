"""Computational toolkit for low-genus moduli of Riemann surfaces."""

__version__ = "0.1.0"
