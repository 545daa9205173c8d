"""Exact computations with pre-Lie algebras, pre-Lie-morphism triples, their
cohomology and infinitesimal deformations."""

__version__ = "0.1.0"
