"""Seeded test systems, wall-clock timing and order-of-growth estimation."""
from __future__ import annotations

import csv
import gc
import math
import statistics
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .band import Backend, BandSystem, StorageKind, build_system
from .scalar import LimitUndefined, eval_at_zero
from .solvers import ALGORITHMS, SingularMatrix, band_lu_symbolic, solve, solve_with

__all__ = [
    "SplitMix64",
    "GenSpec",
    "BenchRecord",
    "AlphaEstimate",
    "GenerationFailed",
    "DomainError",
    "MissingSeries",
    "generate_system",
    "generate_dense_band",
    "time_run",
    "estimate_alpha",
    "ratio_table",
    "mean_table",
    "alpha_table",
    "write_csv",
    "read_csv",
    "CSV_HEADER",
]

MASK64 = (1 << 64) - 1
MAX_RETRIES = 8
VERIFY_LIMIT = 1000
CSV_HEADER = ["algorithm", "storage", "backend", "n", "rep", "seconds"]


class GenerationFailed(RuntimeError):
    pass


class DomainError(ValueError):
    pass


class MissingSeries(KeyError):
    pass


class SplitMix64:
    """splitmix64 stream.  Small ranges are taken modulo (slightly biased)."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)


@dataclass(frozen=True)
class GenSpec:
    n: int
    w: int
    seed: int = 0
    backend: str = "exact"
    storage: str = "fixed"
    zero_pivot_positions: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.w not in (1, 2, 3):
            raise ValueError(f"w must be 1, 2 or 3, got {self.w}")
        if self.n < 2 * self.w + 1:
            raise ValueError(f"n = {self.n} too small for w = {self.w}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for p in self.zero_pivot_positions:
            if not 1 <= p <= self.n:
                raise ValueError(f"zero-pivot position {p} outside 1..{self.n}")
        Backend(self.backend)
        StorageKind(self.storage)


def _planted(n: int, w: int, seed: int):
    """Draw unit-lower L, upper U and x*, and form A = L U by diagonals."""
    rng = SplitMix64(seed)
    lower = [[rng.randint(-3, 3) for _ in range(max(0, i - w), i)] for i in range(n)]
    diag = [rng.randint(1, 3) for _ in range(n)]
    upper = [[rng.randint(-3, 3) for _ in range(i + 1, min(n, i + w + 1))] for i in range(n)]
    x = [rng.randint(-5, 5) for _ in range(n)]

    def l(i, k):
        if k == i:
            return 1
        return lower[i][k - max(0, i - w)]

    def u(k, j):
        if j == k:
            return diag[k]
        return upper[k][j - k - 1]

    diags = {o: [] for o in range(-w, w + 1)}
    for o in range(-w, w + 1):
        for idx in range(n - abs(o)):
            i, j = (idx, idx + o) if o >= 0 else (idx - o, idx)
            acc = 0
            for k in range(max(0, i - w, j - w), min(i, j) + 1):
                acc += l(i, k) * u(k, j)
            diags[o].append(acc)
    return diags, x


def _band_matvec(diags: Dict[int, list], w: int, x: Sequence) -> list:
    n = len(x)
    out = []
    for i in range(n):
        acc = 0
        for o in range(-w, w + 1):
            j = i + o
            if 0 <= j < n:
                acc += diags[o][min(i, j)] * x[j]
        out.append(acc)
    return out


def generate_system(spec: GenSpec) -> Tuple[BandSystem, List]:
    """Build ``(system, planted_solution)`` deterministically from ``spec``.

    Requested zero pivots are planted by subtracting the current pivot's value
    at x = 0 from ``a[i][i]``, in increasing row order.  Systems with
    ``n <= 1000`` that receive zero pivots are checked for nonsingularity, and
    the next seed is tried on failure.
    """
    seed = spec.seed
    for _ in range(MAX_RETRIES + 1):
        diags, x = _planted(spec.n, spec.w, seed)
        if spec.zero_pivot_positions:
            try:
                _plant_zero_pivots(diags, x, spec)
            except (LimitUndefined, SingularMatrix):
                seed = (seed + 1) & MASK64
                continue
        rhs = _band_matvec(diags, spec.w, x)
        sys = build_system(spec.n, spec.w, diags, rhs, Backend.EXACT, spec.storage)
        if Backend(spec.backend) is Backend.FLOAT:
            sys = sys.with_backend(Backend.FLOAT)
            x = [float(v) for v in x]
        else:
            x = [Fraction(v) for v in x]
        return sys, x
    raise GenerationFailed(f"no nonsingular system after {MAX_RETRIES} retries from seed {spec.seed}")


_NONZERO = tuple(v for v in range(-19, 20) if v)


def generate_dense_band(n: int, w: int, seed: int = 0, storage="fixed") -> Tuple[BandSystem, List]:
    """Band matrix with every in-band entry drawn from a nonzero set.

    Meant for band reduction, where the L U generator's zero entries would
    often leave a zero divisor.  Draw order: diagonals from offset ``-w``
    upward, then x* from -5..5.
    """
    rng = SplitMix64(seed)
    diags = {o: [_NONZERO[rng.next() % len(_NONZERO)] for _ in range(n - abs(o))]
             for o in range(-w, w + 1)}
    x = [rng.randint(-5, 5) for _ in range(n)]
    rhs = _band_matvec(diags, w, x)
    return build_system(n, w, diags, rhs, Backend.EXACT, storage), [Fraction(v) for v in x]


def _plant_zero_pivots(diags, x, spec: GenSpec) -> None:
    n, w = spec.n, spec.w
    for p in sorted(set(spec.zero_pivot_positions)):
        sys = build_system(n, w, diags, [0] * n)
        f = band_lu_symbolic(sys)
        # raises LimitUndefined when the pivot has a pole at 0
        diags[0][p - 1] -= eval_at_zero(f.upper[0].to_list()[p - 1])
    if n <= VERIFY_LIMIT:
        rhs = _band_matvec(diags, w, x)
        # raises SingularMatrix
        solve(build_system(n, w, diags, rhs))


@dataclass
class BenchRecord:
    algorithm: str
    storage: str
    backend: str
    n: int
    rep: int
    seconds: float

    def __post_init__(self):
        if not self.seconds > 0:
            raise ValueError(f"nonpositive duration {self.seconds}")

    def key(self):
        return (self.algorithm, self.storage, self.backend, self.n)


def _matches(solution, planted, backend) -> bool:
    if backend is Backend.EXACT:
        return list(solution) == list(planted)
    return all(math.isclose(a, b, rel_tol=1e-6, abs_tol=1e-6) for a, b in zip(solution, planted))


def time_run(algorithm: str, sys: BandSystem, reps: int = 5, planted=None) -> List[BenchRecord]:
    """Time ``reps`` full solves with :func:`time.perf_counter`.

    As with :mod:`timeit`, garbage is collected before each rep and the cyclic
    collector is paused while it runs.  Each result is compared with ``planted`` (when given) before its record is
    kept; a mismatch raises ``AssertionError``.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    algorithm = algorithm.upper()
    records = []
    for rep in range(reps):
        gc.collect()
        was_enabled = gc.isenabled()
        gc.disable()
        try:
            t0 = time.perf_counter()
            result = solve_with(algorithm, sys)
            seconds = time.perf_counter() - t0
        finally:
            if was_enabled:
                gc.enable()
        if planted is not None and not _matches(result.solution, planted, sys.backend):
            raise AssertionError(f"{algorithm} n={sys.n}: solution differs from planted vector")
        records.append(BenchRecord(algorithm, sys.storage.value, sys.backend.value,
                                   sys.n, rep, seconds))
    return records


@dataclass
class AlphaEstimate:
    """Fit of ``t = k * n**alpha`` through two points."""

    n1: float
    n2: float
    t1: float
    t2: float
    alpha: float
    k_fit: float


def estimate_alpha(t1: float, t2: float, n1: float, n2: float) -> AlphaEstimate:
    if min(t1, t2, n1, n2) <= 0:
        raise DomainError("times and sizes must be positive")
    if n1 == n2:
        raise DomainError("sizes must differ")
    if n1 > n2:
        n1, n2, t1, t2 = n2, n1, t2, t1
    alpha = (math.log(t2) - math.log(t1)) / (math.log(n2) - math.log(n1))
    try:
        k = math.exp(math.log(t1) - alpha * math.log(n1))
    except OverflowError:
        k = math.inf
    return AlphaEstimate(n1, n2, t1, t2, alpha, k)


def _mean_by_key(records: Iterable[BenchRecord], agg=statistics.fmean):
    groups = defaultdict(list)
    for r in records:
        groups[r.key()].append(r.seconds)
    return {k: agg(v) for k, v in groups.items()}


def mean_table(records: Iterable[BenchRecord]) -> Dict[tuple, float]:
    """Mean seconds keyed by ``(algorithm, storage, backend, n)``."""
    return _mean_by_key(records)


def ratio_table(records: Iterable[BenchRecord], agg=statistics.fmean) -> Dict[tuple, Dict[str, float]]:
    """HD:TD, PD:TD and TD:TD mean-time ratios per ``(storage, backend, n)``."""
    means = _mean_by_key(records, agg)
    groups = defaultdict(dict)
    for (alg, storage, backend, n), t in means.items():
        groups[(storage, backend, n)][alg] = t
    if not groups:
        raise MissingSeries("no records")
    out = {}
    for key, ts in sorted(groups.items()):
        missing = [a for a in ALGORITHMS if a not in ts]
        if missing:
            raise MissingSeries(f"{key}: no records for {', '.join(missing)}")
        td = ts["STDM"]
        out[key] = {"SHDM": ts["SHDM"] / td, "SPDM": ts["SPDM"] / td, "STDM": 1.0}
    return out


def alpha_table(records: Iterable[BenchRecord]) -> Dict[tuple, AlphaEstimate]:
    """One estimate per ``(algorithm, storage, backend)`` from its two largest sizes.

    Raises :class:`DomainError` for a series with fewer than two sizes.
    """
    series = defaultdict(dict)
    for (alg, storage, backend, n), t in mean_table(records).items():
        series[(alg, storage, backend)][n] = t
    out = {}
    for key, pts in sorted(series.items()):
        if len(pts) < 2:
            raise DomainError(f"series {key} has only one size")
        n1, n2 = sorted(pts)[-2:]
        out[key] = estimate_alpha(pts[n1], pts[n2], n1, n2)
    return out


def write_csv(path, records: Iterable[BenchRecord], append: bool = True) -> None:
    with open(path, "a" if append else "w", newline="") as fh:
        if fh.tell() == 0:
            csv.writer(fh).writerow(CSV_HEADER)
        writer = csv.writer(fh)
        for r in records:
            writer.writerow([r.algorithm, r.storage, r.backend, r.n, r.rep, f"{r.seconds:.9f}"])
            fh.flush()


def read_csv(path) -> List[BenchRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or list(reader.fieldnames) != CSV_HEADER:
            raise ValueError(f"expected header {','.join(CSV_HEADER)}")
        out = []
        for row in reader:
            out.append(BenchRecord(row["algorithm"], row["storage"], row["backend"],
                                   int(row["n"]), int(row["rep"]), float(row["seconds"])))
        return out
