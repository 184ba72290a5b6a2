"""Exact band linear-system solvers with zero-pivot symbolic substitution."""
from .band import Backend, BandSystem, StorageKind, build_system, from_dense
from .scalar import X, Poly, RatFunc, eval_at_zero
from .solvers import SingularMatrix, SolveResult, shdm, solve, spdm, stdm

__version__ = "0.1.0"
