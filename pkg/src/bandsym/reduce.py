"""Fill-free Gaussian band reduction: heptadiagonal -> pentadiagonal -> tridiagonal.

Each reduction removes the outermost diagonal pair of a system with
half-bandwidth ``w`` in two sweeps:

1. bottom-up, row ``i`` minus a multiple of row ``i + 1`` zeroes ``a[i][i+w]``;
2. top-down, row ``i`` minus a multiple of row ``i - 1`` zeroes ``a[i][i-w]``.

After sweep 1 the helper row ``i + 1`` no longer reaches column ``i + 1 + w``,
and after sweep 2 row ``i - 1`` no longer reaches column ``i - 1 - w``, so
neither update writes outside row ``i``'s band.

Every rational ``+ - * /`` executed is counted.  A step whose target entry
is already zero is skipped and costs nothing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .band import Backend, BandSystem, SizeError, build_system

__all__ = [
    "ReductionReport",
    "ReductionPivotZero",
    "reduce_band",
    "reduce_chain",
    "reference_ops",
]


class ReductionPivotZero(ArithmeticError):
    pass


def reference_ops(w_from: int, n: int) -> int:
    """Published operation counts for one reduction step (5 -> 3 -> ... diagonals)."""
    if w_from == 3:
        return 35 * n - 122
    if w_from == 2:
        return 23 * n - 52
    raise ValueError(f"no reference count for w = {w_from}")


@dataclass
class ReductionReport:
    reduced: BandSystem
    ops_counted: int
    reference_ops: int
    n: int
    w_from: int
    # (sweep, row, multiplier) for each elimination actually performed; rows 0-based
    steps: List[Tuple[int, int, Fraction]] = field(default_factory=list, repr=False)

    @property
    def w_to(self) -> int:
        return self.reduced.w

    def to_json(self) -> dict:
        return {
            "w_from": self.w_from,
            "w_to": self.w_to,
            "ops_counted": self.ops_counted,
            "reference_ops": self.reference_ops,
            "n": self.n,
        }


class _Work:
    """Mutable band matrix (plain lists) used during a reduction."""

    def __init__(self, sys: BandSystem):
        self.n, self.w = sys.n, sys.w
        self.d: Dict[int, list] = sys.diagonal_lists()
        self.b = sys.rhs_list()

    def get(self, i, j):
        return self.d[j - i][min(i, j)]

    def set(self, i, j, v):
        self.d[j - i][min(i, j)] = v


def reduce_band(sys: BandSystem) -> ReductionReport:
    """Remove the outermost diagonal pair, preserving the solution exactly."""
    w, n = sys.w, sys.n
    if sys.backend is not Backend.EXACT:
        raise ValueError("band reduction runs on the exact backend only")
    if w not in (2, 3):
        raise ValueError(f"can only reduce w = 2 or 3, got {w}")
    if n < 2 * w + 2:
        raise SizeError(f"n = {n} too small to reduce w = {w} (need n >= {2 * w + 2})")

    a = _Work(sys)
    ops = 0
    steps = []

    # sweep 1: kill a[i][i+w] with row i+1, whose span is i+1-w .. i+w
    for i in range(n - 1 - w, -1, -1):
        target = a.get(i, i + w)
        if target == 0:
            continue
        pivot = a.get(i + 1, i + w)
        if pivot == 0:
            raise ReductionPivotZero(f"zero divisor a[{i + 2}][{i + w + 1}] in upper sweep")
        m = target / pivot
        ops += 1
        for j in range(max(0, i + 1 - w), i + w):
            a.set(i, j, a.get(i, j) - m * a.get(i + 1, j))
            ops += 2
        a.set(i, i + w, Fraction(0))
        a.b[i] -= m * a.b[i + 1]
        ops += 2
        steps.append((1, i, m))

    # sweep 2: kill a[i][i-w] with row i-1, whose span is i-w .. i+w-2
    for i in range(w, n):
        target = a.get(i, i - w)
        if target == 0:
            continue
        pivot = a.get(i - 1, i - w)
        if pivot == 0:
            raise ReductionPivotZero(f"zero divisor a[{i}][{i - w + 1}] in lower sweep")
        m = target / pivot
        ops += 1
        for j in range(i - w + 1, min(n, i + w - 1)):
            a.set(i, j, a.get(i, j) - m * a.get(i - 1, j))
            ops += 2
        a.set(i, i - w, Fraction(0))
        a.b[i] -= m * a.b[i - 1]
        ops += 2
        steps.append((2, i, m))

    assert all(v == 0 for v in a.d[w]) and all(v == 0 for v in a.d[-w])
    diags = {o: a.d[o] for o in range(-(w - 1), w)}
    reduced = build_system(n, w - 1, diags, a.b, sys.backend, sys.storage)
    return ReductionReport(reduced, ops, reference_ops(w, n), n, w, steps)


def reduce_chain(sys: BandSystem, target_w: int) -> ReductionReport:
    """Apply :func:`reduce_band` until the half-bandwidth is ``target_w``."""
    if not 1 <= target_w <= sys.w:
        raise ValueError(f"target half-bandwidth {target_w} not in 1..{sys.w}")
    current, ops, ref, steps = sys, 0, 0, []
    while current.w > target_w:
        rep = reduce_band(current)
        current = rep.reduced
        ops += rep.ops_counted
        ref += rep.reference_ops
        steps.extend(rep.steps)
    return ReductionReport(current, ops, ref, sys.n, sys.w, steps)
