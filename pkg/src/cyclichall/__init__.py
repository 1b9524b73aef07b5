"""Exact Hall algebras of 1-cyclic projective complexes over Dynkin quivers."""

__version__ = "0.1.0"
