"""Simple undirected graphs stored as symmetric boolean adjacency matrices.

Vertices are always ``0..n-1``. Graph values are immutable: the adjacency
array is marked read-only on construction so it can be shared freely.
"""

from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractError, ParseError, check_guard

__all__ = [
    "Graph",
    "Ordering",
    "parse_edge_list",
    "to_edge_list",
    "induced_subgraph",
    "count_distinct_induced",
    "degeneracy_order",
    "gen",
]


class Graph:
    """Simple graph on ``n`` vertices.

    ``adj[u, v]`` is True iff ``uv`` is an edge; row ``v`` is the
    characteristic vector of the neighbourhood of ``v``.
    """

    __slots__ = ("adj",)

    def __init__(self, adj):
        a = np.array(adj, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ContractError(f"adjacency must be square, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ContractError("adjacency matrix is not symmetric")
        if a.diagonal().any():
            raise ContractError("adjacency matrix has a self-loop")
        a.setflags(write=False)
        self.adj = a

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ContractError(f"self-loop at {u}")
            a[u, v] = a[v, u] = True
        return cls(a)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    @property
    def num_edges(self) -> int:
        return int(self.adj.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adj[v]).tolist()

    def neighbor_masks(self) -> list[int]:
        """Neighbourhoods as Python int bitsets (bit ``u`` set iff ``u`` adjacent)."""
        weights = [1 << u for u in range(self.n)]
        return [sum(weights[u] for u in np.flatnonzero(row).tolist()) for row in self.adj]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.n, np.packbits(self.adj).tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


class Ordering:
    """Bijection between positions ``0..n-1`` and vertices.

    ``perm[i]`` is the vertex at position ``i`` and ``pos[v]`` its inverse.
    """

    __slots__ = ("perm", "pos")

    def __init__(self, perm: Sequence[int]):
        p = np.asarray(perm, dtype=np.int64).reshape(-1)
        n = p.shape[0]
        if n and (p.min() < 0 or p.max() >= n or np.unique(p).shape[0] != n):
            raise ContractError("ordering is not a permutation of 0..n-1")
        inv = np.empty(n, dtype=np.int64)
        inv[p] = np.arange(n)
        p.setflags(write=False)
        inv.setflags(write=False)
        self.perm = p
        self.pos = inv

    @classmethod
    def identity(cls, n: int) -> Ordering:
        return cls(np.arange(n))

    @property
    def n(self) -> int:
        return self.perm.shape[0]

    def to_text(self) -> str:
        return f"{self.n}\n{' '.join(map(str, self.perm.tolist()))}\n"

    @classmethod
    def from_text(cls, text: str | bytes) -> Ordering:
        if isinstance(text, bytes):
            text = text.decode()
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise ParseError("empty ordering file")
        try:
            n = int(lines[0])
            perm = [int(tok) for ln in lines[1:] for tok in ln.split()]
        except ValueError as exc:
            raise ParseError(f"bad ordering file: {exc}") from None
        if len(perm) != n:
            raise ParseError(f"ordering lists {len(perm)} vertices, header says {n}")
        try:
            return cls(perm)
        except ContractError as exc:
            raise ParseError(str(exc)) from None

    def __eq__(self, other):
        if not isinstance(other, Ordering):
            return NotImplemented
        return np.array_equal(self.perm, other.perm)

    def __hash__(self):
        return hash(self.perm.tobytes())

    def __repr__(self):
        return f"Ordering({self.perm.tolist()})"


def parse_edge_list(text: str | bytes) -> Graph:
    """Parse the edge-list format: a vertex count line, then ``u v`` lines.

    Lines starting with ``#`` and blank lines are ignored. Duplicate edges
    collapse; self-loops and out-of-range endpoints are errors.
    """
    if isinstance(text, bytes):
        text = text.decode()
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ParseError(f"expected vertex count, got {line!r}", lineno)
            try:
                n = int(parts[0])
            except ValueError:
                raise ParseError(f"vertex count is not an integer: {parts[0]!r}", lineno) from None
            if n < 0:
                raise ParseError("negative vertex count", lineno)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer endpoint in {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range [0, {n}) in {line!r}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u, v))
    if n is None:
        raise ParseError("missing vertex count line")
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _check_vertex_list(g: Graph, s: Sequence[int]) -> np.ndarray:
    idx = np.asarray(list(s), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= g.n):
        raise ContractError(f"vertex list {list(s)} has entries outside [0, {g.n})")
    if np.unique(idx).size != idx.size:
        raise ContractError(f"vertex list {list(s)} has repeated entries")
    return idx


def induced_subgraph(g: Graph, s: Sequence[int]) -> Graph:
    """Subgraph induced on ``s``; vertex ``i`` of the result is ``s[i]``."""
    idx = _check_vertex_list(g, s)
    return Graph(g.adj[np.ix_(idx, idx)])


def count_distinct_induced(g: Graph, m: int) -> int:
    """Number of distinct adjacency matrices on ``[m]`` realised by ordered
    m-tuples of distinct vertices of ``g``."""
    if m < 1:
        raise ContractError("m must be positive")
    if m > g.n:
        raise ContractError(f"m={m} exceeds n={g.n}")
    tuples = math.perm(g.n, m)
    check_guard("ordered vertex tuples", tuples)
    pairs = list(itertools.combinations(range(m), 2))
    if not pairs:
        return 1
    seen = set()
    adj = g.adj
    # Chunked so the tuple array never holds more than ~64k rows.
    it = itertools.permutations(range(g.n), m)
    while True:
        chunk = np.array(list(itertools.islice(it, 65536)), dtype=np.int64)
        if chunk.size == 0:
            break
        codes = np.zeros(chunk.shape[0], dtype=np.int64)
        for bit, (i, j) in enumerate(pairs):
            codes |= adj[chunk[:, i], chunk[:, j]].astype(np.int64) << bit
        seen.update(np.unique(codes).tolist())
    return len(seen)


def degeneracy_order(g: Graph) -> tuple[Ordering, int]:
    """Peel minimum-degree vertices (ties to the smallest index).

    Returns the deletion order and ``p``, the largest number of neighbours
    any vertex has later in that order. ``p`` is the degeneracy of ``g``.
    """
    n = g.n
    deg = g.degrees().astype(np.int64).tolist()
    nbrs = [g.neighbors(v) for v in range(n)]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    order = []
    p = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        p = max(p, d)
        for u in nbrs[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return Ordering(order), p


def _as_fraction(p) -> Fraction:
    if isinstance(p, float):
        p = str(p)
    try:
        frac = Fraction(p)
    except (ValueError, ZeroDivisionError):
        raise ContractError(f"edge probability {p!r} is not a rational number") from None
    if not 0 <= frac <= 1:
        raise ContractError(f"edge probability {p} outside [0, 1]")
    return frac


def gen(kind: str, n: int, p=None, seed: int | None = None) -> Graph:
    """Deterministic generators: gnp, path, cycle, clique, star, empty.

    ``gnp`` requires a seed; ``p`` may be a Fraction, an int, or a decimal
    string/float and is handled exactly (each pair draws an integer in
    ``[0, denominator)`` and becomes an edge if it falls below the numerator).
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ContractError(f"n must be a non-negative integer, got {n!r}")
    n = int(n)
    if kind == "empty":
        return Graph.empty(n)
    if kind == "path":
        return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
    if kind == "cycle":
        if n < 3:
            raise ContractError("a cycle needs at least 3 vertices")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "clique":
        a = ~np.eye(n, dtype=bool)
        return Graph(a)
    if kind == "star":
        if n < 1:
            raise ContractError("a star needs at least 1 vertex")
        return Graph.from_edges(n, ((0, i) for i in range(1, n)))
    if kind == "gnp":
        if seed is None:
            raise ContractError("gnp requires an explicit seed")
        if p is None:
            raise ContractError("gnp requires p")
        frac = _as_fraction(p)
        rng = np.random.default_rng(seed)
        iu = np.triu_indices(n, 1)
        draws = rng.integers(0, frac.denominator, size=iu[0].shape[0])
        a = np.zeros((n, n), dtype=bool)
        a[iu] = draws < frac.numerator
        return Graph(a | a.T)
    raise ContractError(f"unknown generator kind {kind!r}")
