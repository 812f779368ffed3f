"""Exact homological computations for finite-dimensional algebras over F_p.

Builds split basic algebras from quivers with relations, forms trivial
extensions, cover algebras and triangular matrix algebras, computes
projective covers, syzygies and Krull-Schmidt decompositions, and derives
certified bounds for delooping levels.
"""

__version__ = "0.1.0"

DEFAULT_PRIME = 32003
DEFAULT_SEED = 1
DEFAULT_HORIZON = 8
DEFAULT_PD_CAP = 32
DEFAULT_ISO_TRIALS = 5
