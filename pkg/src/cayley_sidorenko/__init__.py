"""Homomorphism densities of bipartite patterns in Cayley graphs over finite abelian groups."""

__version__ = "0.1.0"
