"""Certificates for generalized torsion elements in 3-manifold groups."""

__version__ = "0.1.0"
