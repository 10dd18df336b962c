"""Exact computations with finite-dimensional Hom-Lie algebras."""

__version__ = "0.1.0"
