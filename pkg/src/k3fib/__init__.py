"""Exact computations with elliptic K3 surfaces: lattices, Kodaira fibers,
explicit Weierstrass models and finite-field point counts."""

__version__ = "0.1.0"
