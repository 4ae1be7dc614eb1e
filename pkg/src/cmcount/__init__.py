"""Exact point counts for reductions of CM elliptic curves.

The package evaluates closed formulas for Hecke characters of CM curves at
degree-one primes, checks them against brute force, and builds curves over
F_p with a chosen number of points.
"""
from .errors import CMError, Inconsistency, NoSolution, PreconditionError

__version__ = "0.1.0"

__all__ = ["CMError", "Inconsistency", "NoSolution", "PreconditionError", "__version__"]
