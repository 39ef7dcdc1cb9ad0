"""Finite Coxeter groups in concrete representations, and certified
Beauville structures on them."""

__version__ = "0.1.0"
