"""Band systems stored by diagonals, behind two indexed-storage backends.

``FixedStore`` is a preallocated array (one step per access).  ``ListStore``
is a singly linked list whose ``get``/``set`` walk from the head every time
(``i + 1`` steps at index ``i``).  Every solver reads and writes matrix data
through these two methods only, so the List backend turns each linear-time
sweep into a quadratic one.
"""
from __future__ import annotations

import enum
import json
from itertools import repeat
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .scalar import format_rational, parse_rational

__all__ = [
    "StorageKind",
    "Backend",
    "FixedStore",
    "ListStore",
    "make_store",
    "store_access",
    "BandSystem",
    "build_system",
    "from_dense",
    "widen",
    "system_from_json",
    "system_to_json",
    "BandError",
    "ShapeError",
    "ParseError",
    "SizeError",
    "IndexOutOfRange",
]


class BandError(Exception):
    """Base class for input errors on band systems."""


class ShapeError(BandError, ValueError):
    pass


class ParseError(BandError, ValueError):
    pass


class SizeError(BandError, ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class StorageKind(str, enum.Enum):
    FIXED = "fixed"
    LIST = "list"


class Backend(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


class FixedStore:
    """Contiguous, preallocated storage."""

    __slots__ = ("_data", "_n", "steps")
    kind = StorageKind.FIXED

    def __init__(self, values: Iterable = ()):
        self._data = list(values)
        self._n = len(self._data)
        self.steps = 0

    def __len__(self):
        return self._n

    def get(self, i: int):
        if not 0 <= i < self._n:
            raise IndexOutOfRange(f"index {i} out of range for length {self._n}")
        self.steps += 1
        return self._data[i]

    def set(self, i: int, value) -> None:
        if not 0 <= i < self._n:
            raise IndexOutOfRange(f"index {i} out of range for length {self._n}")
        self.steps += 1
        self._data[i] = value

    def copy(self) -> "FixedStore":
        return type(self)(self._data)

    def to_list(self) -> list:
        """Uncharged snapshot, for I/O and checks only."""
        return list(self._data)


class ListStore:
    """Singly linked storage.  Nodes are ``[value, next]`` pairs.

    ``get`` and ``set`` always start at the head; there is deliberately no
    cursor cache.  ``append`` keeps a tail reference so construction is linear.
    """

    __slots__ = ("_head", "_tail", "_n", "steps")
    kind = StorageKind.LIST

    def __init__(self, values: Iterable = ()):
        self._head = None
        self._tail = None
        self._n = 0
        self.steps = 0
        for v in values:
            self.append(v)

    def __len__(self):
        return self._n

    def append(self, value) -> None:
        node = [value, None]
        if self._tail is None:
            self._head = node
        else:
            self._tail[1] = node
        self._tail = node
        self._n += 1

    def _walk(self, i: int):
        if not 0 <= i < self._n:
            raise IndexOutOfRange(f"index {i} out of range for length {self._n}")
        self.steps += i + 1
        node = self._head
        for _ in repeat(None, i):
            node = node[1]
        return node

    def get(self, i: int):
        return self._walk(i)[0]

    def set(self, i: int, value) -> None:
        self._walk(i)[0] = value

    def copy(self) -> "ListStore":
        return type(self)(self.to_list())

    def to_list(self) -> list:
        """Uncharged snapshot, for I/O and checks only."""
        out = []
        node = self._head
        while node is not None:
            out.append(node[0])
            node = node[1]
        return out


Store = Union[FixedStore, ListStore]

_STORES = {StorageKind.FIXED: FixedStore, StorageKind.LIST: ListStore}


def make_store(kind, values: Iterable = ()) -> Store:
    return _STORES[StorageKind(kind)](values)


def store_access(store: Store, i: int) -> Tuple[object, int]:
    """Read entry ``i`` and report how many traversal steps it was charged."""
    before = store.steps
    value = store.get(i)
    return value, store.steps - before


@dataclass
class BandSystem:
    """``A x = rhs`` with ``A`` held as ``2w + 1`` diagonals.

    ``diagonals[o]`` has length ``n - |o|``; entry ``a[i][j]`` lives in
    ``diagonals[j - i]`` at index ``min(i, j)``.  Indices are 0-based.
    """

    n: int
    w: int
    diagonals: Dict[int, Store]
    rhs: Store
    backend: Backend = Backend.EXACT
    storage: StorageKind = StorageKind.FIXED

    def entry(self, i: int, j: int):
        if abs(j - i) > self.w:
            return self._zero()
        return self.diagonals[j - i].get(min(i, j))

    def _zero(self):
        return 0.0 if self.backend is Backend.FLOAT else Fraction(0)

    def diagonal_lists(self) -> Dict[int, list]:
        return {o: s.to_list() for o, s in self.diagonals.items()}

    def rhs_list(self) -> list:
        return self.rhs.to_list()

    def to_dense(self) -> List[list]:
        zero = self._zero()
        rows = [[zero] * self.n for _ in range(self.n)]
        for o, vals in self.diagonal_lists().items():
            for k, v in enumerate(vals):
                i, j = (k, k + o) if o >= 0 else (k - o, k)
                rows[i][j] = v
        return rows

    def matvec(self, x: Sequence) -> list:
        """Band product ``A x`` (uncharged)."""
        diags = self.diagonal_lists()
        out = []
        for i in range(self.n):
            acc = self._zero()
            for o in range(-self.w, self.w + 1):
                j = i + o
                if 0 <= j < self.n:
                    acc += diags[o][min(i, j)] * x[j]
            out.append(acc)
        return out

    def with_storage(self, storage) -> "BandSystem":
        return build_system(self.n, self.w, self.diagonal_lists(), self.rhs_list(),
                            backend=self.backend, storage=storage)

    def with_backend(self, backend) -> "BandSystem":
        backend = Backend(backend)
        conv = float if backend is Backend.FLOAT else Fraction
        diags = {o: [conv(v) for v in vals] for o, vals in self.diagonal_lists().items()}
        return build_system(self.n, self.w, diags, [conv(v) for v in self.rhs_list()],
                            backend=backend, storage=self.storage)


def _parse_entry(value, backend: Backend):
    if backend is Backend.EXACT:
        try:
            return parse_rational(value)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParseError(f"bad entry {value!r}: {exc}") from None
    if isinstance(value, bool):
        raise ParseError(f"bad entry {value!r}")
    try:
        if isinstance(value, str) and "/" in value:
            out = float(Fraction(value.strip()))
        else:
            out = float(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ParseError(f"bad entry {value!r}") from None
    if out != out or out in (float("inf"), float("-inf")):
        raise ParseError(f"non-finite entry {value!r}")
    return out


def build_system(n: int, w: int, diagonals: Mapping, rhs: Sequence,
                 backend="exact", storage="fixed") -> BandSystem:
    """Validate shapes, parse entries and place them in the requested storage."""
    backend = Backend(backend)
    storage = StorageKind(storage)
    if w not in (1, 2, 3):
        raise ShapeError(f"half-bandwidth must be 1, 2 or 3, got {w}")
    if n < 2 * w + 1:
        raise SizeError(f"n = {n} too small for w = {w} (need n >= {2 * w + 1})")
    try:
        diags = {int(k): v for k, v in diagonals.items()}
    except (TypeError, ValueError):
        raise ShapeError("diagonal keys must be integer offsets") from None
    expected = set(range(-w, w + 1))
    if set(diags) != expected:
        raise ShapeError(f"diagonal offsets {sorted(diags)} do not cover {-w}..{w}")
    stores = {}
    for o in sorted(expected):
        vals = list(diags[o])
        if len(vals) != n - abs(o):
            raise ShapeError(f"diagonal {o} has length {len(vals)}, expected {n - abs(o)}")
        stores[o] = make_store(storage, (_parse_entry(v, backend) for v in vals))
    rhs = list(rhs)
    if len(rhs) != n:
        raise ShapeError(f"rhs has length {len(rhs)}, expected {n}")
    return BandSystem(n, w, stores, make_store(storage, (_parse_entry(v, backend) for v in rhs)),
                      backend, storage)


def from_dense(rows: Sequence[Sequence], w: int, rhs: Sequence,
               backend="exact", storage="fixed") -> BandSystem:
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ShapeError("matrix must be square")
        for j, v in enumerate(row):
            if abs(i - j) > w and v != 0:
                raise ShapeError(f"nonzero entry at ({i}, {j}) outside half-bandwidth {w}")
    diags = {}
    for o in range(-w, w + 1):
        diags[o] = [rows[k][k + o] if o >= 0 else rows[k - o][k] for k in range(n - abs(o))]
    return build_system(n, w, diags, rhs, backend, storage)


def widen(sys: BandSystem, w: int) -> BandSystem:
    """Embed ``sys`` at a larger half-bandwidth with zero outer diagonals."""
    if w < sys.w:
        raise ShapeError("cannot narrow a system with widen()")
    zero = sys._zero()
    diags = sys.diagonal_lists()
    for o in range(-w, w + 1):
        diags.setdefault(o, [zero] * (sys.n - abs(o)))
    return build_system(sys.n, w, diags, sys.rhs_list(), sys.backend, sys.storage)


def _fmt(v) -> Union[str, float]:
    return format_rational(v) if not isinstance(v, float) else v


def system_to_json(sys: BandSystem) -> dict:
    return {
        "n": sys.n,
        "w": sys.w,
        "diagonals": {str(o): [_fmt(v) for v in vals]
                      for o, vals in sorted(sys.diagonal_lists().items())},
        "rhs": [_fmt(v) for v in sys.rhs_list()],
    }


def system_from_json(doc: Union[str, Mapping], backend="exact", storage="fixed") -> BandSystem:
    """Parse the band JSON format (a document or its text)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, Mapping):
        raise ParseError("system document must be a JSON object")
    try:
        n, w, diags, rhs = doc["n"], doc["w"], doc["diagonals"], doc["rhs"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc}") from None
    if not isinstance(n, int) or not isinstance(w, int) or isinstance(n, bool):
        raise ParseError("n and w must be integers")
    if not isinstance(diags, Mapping) or not isinstance(rhs, list):
        raise ParseError("diagonals must be an object and rhs a list")
    if any(not isinstance(v, list) for v in diags.values()):
        raise ParseError("each diagonal must be a list")
    return build_system(n, w, diags, rhs, backend, storage)

