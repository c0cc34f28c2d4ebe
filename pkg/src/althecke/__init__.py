"""Exact seminormal and KLR computations for Hecke algebras of S_n and A_n."""

__version__ = "0.1.0"
