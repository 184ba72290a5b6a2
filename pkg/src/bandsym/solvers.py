"""Symbolic band LU solvers (tridiagonal, pentadiagonal, heptadiagonal).

One Doolittle factorization serves all three half-bandwidths.  When a pivot
comes out exactly zero it is replaced by the indeterminate ``x``; the rest of
the factorization and both substitutions then run over Q(x), and the final
answer is obtained by specializing at ``x = 0``.  No row exchanges are ever
made, so the only requirement on the matrix is that it be nonsingular.

Row numbers reported in ``substituted_pivots`` are 1-based; everything else
is indexed from 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List

from .band import Backend, BandSystem, Store
from .scalar import X, LimitUndefined, Scalar, eval_at_zero, format_rational

__all__ = [
    "ALGORITHMS",
    "BandFactors",
    "SolveResult",
    "SingularMatrix",
    "FloatZeroPivot",
    "band_lu_symbolic",
    "substitute_solve",
    "solve",
    "solve_with",
    "stdm",
    "spdm",
    "shdm",
]

#: public method name -> half-bandwidth
ALGORITHMS: Dict[str, int] = {"STDM": 1, "SPDM": 2, "SHDM": 3}


class SingularMatrix(ArithmeticError):
    pass


class FloatZeroPivot(ArithmeticError):
    """The float backend met an exactly-zero pivot."""


@dataclass
class BandFactors:
    """``A = L U`` in band form.

    ``lower[d]`` holds ``l[i][i-d]`` at index ``i - d`` (d = 1..w) and
    ``upper[d]`` holds ``u[i][i+d]`` at index ``i`` (d = 0..w).
    """

    n: int
    w: int
    lower: Dict[int, Store]
    upper: Dict[int, Store]
    substituted_pivots: FrozenSet[int]
    pivot_product: object

    def l(self, i: int, j: int):
        if i == j:
            return Fraction(1)
        if not 0 < i - j <= self.w:
            return Fraction(0)
        return self.lower[i - j].to_list()[j]

    def u(self, i: int, j: int):
        if not 0 <= j - i <= self.w:
            return Fraction(0)
        return self.upper[j - i].to_list()[i]


@dataclass
class SolveResult:
    solution: List
    det: object
    substituted_pivots: FrozenSet[int]
    backend: Backend
    storage: object
    algorithm: str

    def to_json(self) -> dict:
        return {
            "solution": [format_rational(v) for v in self.solution],
            "det": format_rational(self.det),
            "substituted_pivots": sorted(self.substituted_pivots),
        }


def band_lu_symbolic(sys: BandSystem) -> BandFactors:
    """Doolittle factorization inside the band, substituting ``x`` for zero pivots."""
    n, w = sys.n, sys.w
    exact = sys.backend is Backend.EXACT
    # factor in place on copies: l overwrites the sub-diagonals, u the rest
    L = {d: sys.diagonals[-d].copy() for d in range(1, w + 1)}
    U = {d: sys.diagonals[d].copy() for d in range(0, w + 1)}
    substituted = []
    pivots = []

    for i in range(n):
        lo = max(0, i - w)
        for j in range(lo, i):
            s = L[i - j].get(j)
            for k in range(lo, j):
                s -= L[i - k].get(k) * U[j - k].get(k)
            L[i - j].set(j, s / U[0].get(j))
        for j in range(i, min(n, i + w + 1)):
            s = U[j - i].get(i)
            for k in range(max(lo, j - w), i):
                s -= L[i - k].get(k) * U[j - k].get(k)
            if j == i:
                if s == 0:
                    if not exact:
                        raise FloatZeroPivot(f"zero pivot in row {i + 1}")
                    s = X
                    substituted.append(i + 1)
                pivots.append(s)
            U[j - i].set(i, s)

    product = _tree_product(pivots) if exact else math.prod(pivots)
    return BandFactors(n, w, L, U, frozenset(substituted), product)


def _tree_product(values):
    # a running product grows to O(n) digits and makes the det O(n^2);
    # pairing factors of similar size keeps it near-linear
    values = list(values) or [Fraction(1)]
    while len(values) > 1:
        paired = [a * b for a, b in zip(values[::2], values[1::2])]
        if len(values) % 2:
            paired.append(values[-1])
        values = paired
    return values[0]


def substitute_solve(sys: BandSystem, f: BandFactors) -> List[Scalar]:
    """Forward then back substitution; returns ``z`` before specialization."""
    n, w = f.n, f.w
    L, U = f.lower, f.upper
    z = sys.rhs.copy()
    for i in range(n):
        s = z.get(i)
        for k in range(max(0, i - w), i):
            s -= L[i - k].get(k) * z.get(k)
        z.set(i, s)
    for i in range(n - 1, -1, -1):
        s = z.get(i)
        for j in range(i + 1, min(n, i + w + 1)):
            s -= U[j - i].get(i) * z.get(j)
        z.set(i, s / U[0].get(i))
    return [z.get(i) for i in range(n)]


def solve(sys: BandSystem, algorithm: str = None) -> SolveResult:
    """Factor, substitute and specialize at ``x = 0``.

    Raises :class:`SingularMatrix` when the determinant specializes to zero
    or a solution component has a pole at zero.
    """
    f = band_lu_symbolic(sys)
    z = substitute_solve(sys, f)
    try:
        det = eval_at_zero(f.pivot_product)
        # a float product can only reach 0 by underflow: every pivot was nonzero
        if det == 0 and sys.backend is Backend.EXACT:
            raise SingularMatrix("matrix is singular (determinant is 0)")
        solution = [eval_at_zero(v) for v in z]
    except LimitUndefined as exc:
        raise SingularMatrix(f"matrix is singular ({exc})") from None
    name = algorithm or _NAMES[sys.w]
    return SolveResult(solution, det, f.substituted_pivots, sys.backend, sys.storage, name)


_NAMES = {w: name for name, w in ALGORITHMS.items()}


def solve_with(algorithm: str, sys: BandSystem) -> SolveResult:
    algorithm = algorithm.upper()
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    want = ALGORITHMS[algorithm]
    if sys.w != want:
        raise ValueError(f"{algorithm} needs half-bandwidth {want}, system has {sys.w}")
    return solve(sys, algorithm)


def stdm(sys: BandSystem) -> SolveResult:
    """Tridiagonal solve."""
    return solve_with("STDM", sys)


def spdm(sys: BandSystem) -> SolveResult:
    """Pentadiagonal solve."""
    return solve_with("SPDM", sys)


def shdm(sys: BandSystem) -> SolveResult:
    """Heptadiagonal solve."""
    return solve_with("SHDM", sys)
