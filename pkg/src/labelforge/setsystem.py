"""Families of binary vectors: projections, shattering and shatter functions."""

from __future__ import annotations

import itertools
import math
from typing import Iterable, NamedTuple

import numpy as np

from .errors import ContractError, ParseError, check_guard
from .graph import Graph

__all__ = [
    "VectorFamily",
    "rows_of",
    "alternations",
    "primal_shatter",
    "sauer_threshold",
    "lemma21_threshold",
    "find_shattered",
    "find_robust_shattered",
    "RobustShattering",
    "vc_dimension",
]


class VectorFamily:
    """A list of binary vectors of common length ``t``.

    ``vectors`` is a read-only ``(count, t)`` boolean array. With
    ``distinct_required`` set, construction rejects repeated vectors.
    """

    __slots__ = ("t", "vectors", "distinct_required")

    def __init__(self, vectors, t: int | None = None, distinct_required: bool = False):
        if isinstance(vectors, np.ndarray):
            rows = vectors
        else:
            rows = [list(v) for v in vectors]
            if len({len(r) for r in rows}) > 1:
                raise ContractError("vectors must all have the same length")
        arr = np.array(rows, dtype=bool)
        if arr.size == 0 and arr.ndim != 2:
            if t is None:
                raise ContractError("cannot infer vector length of an empty family; pass t")
            arr = np.zeros((0, t), dtype=bool)
        if arr.ndim != 2:
            raise ContractError("vectors must all have the same length")
        if t is not None and arr.shape[1] != t:
            raise ContractError(f"vectors have length {arr.shape[1]}, expected {t}")
        if distinct_required and _has_duplicates(arr):
            raise ContractError("family must consist of distinct vectors")
        arr.setflags(write=False)
        self.vectors = arr
        self.t = arr.shape[1]
        self.distinct_required = distinct_required

    @classmethod
    def from_strings(cls, strings: Iterable[str], t: int | None = None, distinct_required=False):
        strings = list(strings)
        for s in strings:
            if set(s) - {"0", "1"}:
                raise ContractError(f"not a 0/1 string: {s!r}")
        return cls([[c == "1" for c in s] for s in strings], t=t, distinct_required=distinct_required)

    def __len__(self):
        return self.vectors.shape[0]

    def distinct_count(self) -> int:
        if len(self) == 0:
            return 0
        return np.unique(self.vectors, axis=0).shape[0]

    def to_strings(self) -> list[str]:
        return ["".join("1" if b else "0" for b in row) for row in self.vectors.tolist()]

    def to_text(self) -> str:
        return "\n".join([f"{self.t} {len(self)}", *self.to_strings()]) + "\n"

    @classmethod
    def from_text(cls, text: str | bytes, distinct_required=False) -> VectorFamily:
        if isinstance(text, bytes):
            text = text.decode()
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty vector family file")
        head = lines[0].split()
        if len(head) != 2:
            raise ParseError("header must be 't count'", 1)
        try:
            t, count = int(head[0]), int(head[1])
        except ValueError:
            raise ParseError("header must be 't count'", 1) from None
        body = lines[1:]
        if len(body) != count:
            raise ParseError(f"header announces {count} vectors, found {len(body)}")
        for i, s in enumerate(body, start=2):
            if len(s) != t or set(s) - {"0", "1"}:
                raise ParseError(f"bad vector {s!r}", i)
        return cls.from_strings(body, t=t, distinct_required=distinct_required)

    def __eq__(self, other):
        if not isinstance(other, VectorFamily):
            return NotImplemented
        return self.t == other.t and np.array_equal(self.vectors, other.vectors)

    def __repr__(self):
        return f"VectorFamily(t={self.t}, count={len(self)})"


def _has_duplicates(arr: np.ndarray) -> bool:
    return arr.shape[0] > 1 and np.unique(arr, axis=0).shape[0] != arr.shape[0]


def rows_of(g: Graph) -> VectorFamily:
    """Rows of the adjacency matrix, one vector per vertex (may repeat)."""
    return VectorFamily(g.adj, t=g.n)


def alternations(v) -> int:
    """Number of indices ``i`` with ``v[i] != v[i+1]``."""
    a = np.asarray(v, dtype=bool)
    if a.size < 2:
        return 0
    return int(np.count_nonzero(a[1:] != a[:-1]))


def _trace_codes(vectors: np.ndarray, coords) -> np.ndarray:
    """Projection of every vector onto ``coords`` as an integer; ``coords[0]``
    is the most significant bit."""
    codes = np.zeros(vectors.shape[0], dtype=np.int64)
    for c in coords:
        codes = (codes << 1) | vectors[:, c]
    return codes


def primal_shatter(f: VectorFamily, t0: int, mode: str = "exact", trials: int = 0, seed=None) -> int:
    """Largest number of distinct projections of ``f`` onto ``t0`` coordinates.

    ``mode="exact"`` enumerates every coordinate set and is guarded.
    ``mode="sampled"`` evaluates ``trials`` random coordinate sets and returns
    the best, which is a lower bound on the true value.
    """
    if not 0 <= t0 <= f.t:
        raise ContractError(f"t0={t0} outside [0, {f.t}]")
    if len(f) == 0:
        return 0
    vecs = f.vectors.astype(np.int64)
    if mode == "exact":
        check_guard("coordinate sets", math.comb(f.t, t0))
        candidates = itertools.combinations(range(f.t), t0)
    elif mode == "sampled":
        if trials < 1 or seed is None:
            raise ContractError("sampled mode needs trials >= 1 and an explicit seed")
        rng = np.random.default_rng(seed)
        candidates = (sorted(rng.choice(f.t, size=t0, replace=False).tolist()) for _ in range(trials))
    else:
        raise ContractError(f"unknown mode {mode!r}")
    cap = min(f.distinct_count(), 1 << t0)
    best = 0
    for coords in candidates:
        best = max(best, np.unique(_trace_codes(vecs, coords)).shape[0])
        if best == cap:
            break
    return best


def sauer_threshold(t: int, d: int) -> int:
    """``sum_{i<d} C(t, i)``: more distinct vectors than this force a
    shattered d-set."""
    if not 0 <= d <= t:
        raise ContractError(f"need 0 <= d <= t, got d={d}, t={t}")
    return sum(math.comb(t, i) for i in range(d))


def lemma21_threshold(t: int, d: int, k: int) -> int:
    """Family size that forces some d-set to be shattered ``k + d`` times:
    ``1 + (k+d-1) * 2^d * C(t, d) + sum_{i<d} C(t, i)``."""
    if k < 1:
        raise ContractError(f"k must be >= 1, got {k}")
    return 1 + (k + d - 1) * (1 << d) * math.comb(t, d) + sauer_threshold(t, d)


def find_shattered(f: VectorFamily, d: int) -> tuple[int, ...] | None:
    """Lexicographically smallest d-set of coordinates shattered by ``f``."""
    if d < 0:
        raise ContractError("d must be non-negative")
    if d > f.t or len(f) < (1 << d):
        return None
    check_guard("coordinate sets", math.comb(f.t, d))
    vecs = f.vectors.astype(np.int64)
    full = 1 << d
    for coords in itertools.combinations(range(f.t), d):
        if np.unique(_trace_codes(vecs, coords)).shape[0] == full:
            return coords
    return None


class RobustShattering(NamedTuple):
    coords: tuple[int, ...]
    # counts[c] = number of vectors whose trace on coords is c (coords[0] is the MSB)
    counts: tuple[int, ...]

    def trace_count(self, pattern) -> int:
        code = 0
        for b in pattern:
            code = (code << 1) | int(b)
        return self.counts[code]


def find_robust_shattered(f: VectorFamily, d: int, r: int) -> RobustShattering | None:
    """Smallest d-set on which each of the ``2^d`` traces is realised by at
    least ``r`` distinct vectors of ``f``.

    ``f`` must not contain repeated vectors.
    """
    if d < 0 or r < 1:
        raise ContractError("need d >= 0 and r >= 1")
    if _has_duplicates(f.vectors):
        raise ContractError("robust shattering is defined on families of distinct vectors")
    if d > f.t or len(f) < r << d:
        return None
    check_guard("coordinate sets", math.comb(f.t, d))
    vecs = f.vectors.astype(np.int64)
    for coords in itertools.combinations(range(f.t), d):
        counts = np.bincount(_trace_codes(vecs, coords), minlength=1 << d)
        if counts.min() >= r:
            return RobustShattering(coords, tuple(counts.tolist()))
    return None


def vc_dimension(f: VectorFamily) -> int:
    """Largest d with a shattered d-set; ``-1`` for the empty family."""
    if len(f) == 0:
        return -1
    d = 0
    # Shattered sets are closed under subsets, so the first failure is final.
    while find_shattered(f, d + 1) is not None:
        d += 1
    return d
