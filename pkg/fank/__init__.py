"""Toric fans, lattice ideals and piecewise Laurent polynomials."""

__version__ = "0.1.0"
