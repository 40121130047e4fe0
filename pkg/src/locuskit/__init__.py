"""Connectedness locus for pairs of affine contractions, via ternary power series."""

__version__ = "0.1.0"
