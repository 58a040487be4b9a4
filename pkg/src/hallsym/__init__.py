"""Exact computer algebra for symmetric functions and Hall algebras of cyclic quivers.

Everything is computed over exact rational arithmetic: rational functions in
one formal variable (t or q) for the symbolic side, and exact rational
numbers for the finite-field counting oracle.  No floating point anywhere.
"""

__version__ = "0.1.0"
