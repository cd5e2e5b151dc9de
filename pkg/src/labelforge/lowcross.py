"""Spanning trees with low crossing number and the orderings derived from them.

Points are the coordinates ``0..t-1`` of a ``VectorFamily``; each vector is a
set of points. A set crosses a tree edge ``{u, v}`` when it contains exactly
one endpoint.

The tree is grown greedily by iterative reweighting. Every set carries a
weight ``2**e``, initially 1. Each round joins the cheapest pair of points
in different components, where a pair costs the total weight of the sets
separating it, and then doubles the weight of every set the new edge
crosses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import ContractError, ParseError
from .graph import Ordering
from .setsystem import VectorFamily

__all__ = [
    "SpanningTree",
    "WeightState",
    "CrossingProfile",
    "LowCrossingBuilder",
    "crossing_profile",
    "build_low_crossing_tree",
    "tree_to_order",
    "low_crossing_order",
    "max_alternations",
    "alternation_counts",
]

# int64 cost entries stay below 2**_INT_HEADROOM
_INT_HEADROOM = 62


class SpanningTree:
    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]):
        edges = [(min(int(u), int(v)), max(int(u), int(v))) for u, v in edges]
        if n < 1:
            raise ContractError("a spanning tree needs at least one vertex")
        if len(edges) != n - 1:
            raise ContractError(f"tree on {n} vertices needs {n - 1} edges, got {len(edges)}")
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ContractError(f"bad tree edge ({u}, {v})")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ContractError(f"edge ({u}, {v}) closes a cycle")
            parent[ru] = rv
        self.n = n
        self.edges = tuple(edges)

    def adjacency(self) -> list[list[int]]:
        nbrs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        for lst in nbrs:
            lst.sort()
        return nbrs

    def to_text(self) -> str:
        return "\n".join([str(self.n), *(f"{u} {v}" for u, v in self.edges)]) + "\n"

    @classmethod
    def from_text(cls, text) -> SpanningTree:
        from .graph import parse_edge_list

        g = parse_edge_list(text)
        try:
            return cls(g.n, g.edges())
        except ContractError as exc:
            raise ParseError(str(exc)) from None

    def __eq__(self, other):
        if not isinstance(other, SpanningTree):
            return NotImplemented
        return self.n == other.n and sorted(self.edges) == sorted(other.edges)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.edges))))

    def __repr__(self):
        return f"SpanningTree(n={self.n}, edges={list(self.edges)})"


@dataclass
class WeightState:
    """Set weights ``2**(exponents[S] + offset)``.

    ``offset`` accumulates what renormalisation has subtracted, so the true
    exponent of each set is always recoverable.
    """

    exponents: np.ndarray
    offset: int = 0

    def true_exponents(self) -> np.ndarray:
        return self.exponents + self.offset

    def renormalize(self) -> int:
        """Subtract the minimum exponent; returns the shift applied."""
        if self.exponents.size == 0:
            return 0
        shift = int(self.exponents.min())
        if shift:
            self.exponents -= shift
            self.offset += shift
        return shift


class CrossingProfile(NamedTuple):
    counts: np.ndarray
    maximum: int


def _check_family(f: VectorFamily, n: int):
    if f.t != n:
        raise ContractError(f"family has vectors of length {f.t}, tree has {n} points")


def crossing_profile(tree: SpanningTree, f: VectorFamily) -> CrossingProfile:
    """Number of tree edges crossed by each set, and the maximum."""
    _check_family(f, tree.n)
    if len(f) == 0:
        return CrossingProfile(np.zeros(0, dtype=np.int64), 0)
    if not tree.edges:
        counts = np.zeros(len(f), dtype=np.int64)
    else:
        e = np.array(tree.edges, dtype=np.int64)
        counts = np.count_nonzero(f.vectors[:, e[:, 0]] != f.vectors[:, e[:, 1]], axis=1).astype(np.int64)
    return CrossingProfile(counts, int(counts.max()))


@dataclass
class LowCrossingBuilder:
    """Step-by-step greedy construction; ``run()`` finishes it.

    Exposed so callers can inspect ``weights`` and ``cost`` between rounds.
    """

    family: VectorFamily
    backend: str | None = None
    edges: list = field(default_factory=list)

    def __post_init__(self):
        f = self.family
        n = f.t
        if n < 1:
            raise ContractError("need at least one point")
        self._k = kernels.get(self.backend)
        self._sets = kernels.as_u8(f.vectors)
        self.comp = np.arange(n, dtype=np.int64)
        self.weights = WeightState(np.zeros(len(f), dtype=np.int64))
        x = self._sets.astype(np.int64)
        # cost[u, v] = number of sets separating u and v (all weights 1)
        self.cost = np.ascontiguousarray(x.T @ (1 - x) + (1 - x).T @ x)
        self._bits_m = max(len(f), 1).bit_length()

    @property
    def n(self) -> int:
        return self.family.t

    @property
    def exact_object_mode(self) -> bool:
        return self.cost.dtype == object

    def done(self) -> bool:
        return len(self.edges) == self.n - 1

    def step(self) -> tuple[int, int, np.ndarray]:
        """Add one edge. Returns it together with the mask of sets it crosses."""
        if self.done():
            raise ContractError("tree already complete")
        k = self._k if not self.exact_object_mode else kernels.get("python")
        u, v = k.pair_argmin(self.cost, self.comp)
        self.edges.append((u, v))
        cu, cv = self.comp[u], self.comp[v]
        self.comp[self.comp == cv] = cu

        crossing = self._sets[:, u] != self._sets[:, v]
        idx = np.flatnonzero(crossing)
        if idx.size:
            e = self.weights.exponents
            if not self.exact_object_mode and int(e[idx].max()) + 1 + self._bits_m >= _INT_HEADROOM:
                self.cost = self.cost.astype(object)
            k = self._k if not self.exact_object_mode else kernels.get("python")
            for s in idx.tolist():
                # doubling 2**e adds 2**e to every pair the set separates
                w = 1 << int(e[s])
                k.add_crossing_weight(self.cost, self._sets[s], w if self.exact_object_mode else np.int64(w))
            e[idx] += 1
            shift = self.weights.renormalize()
            if shift:
                # every cost entry is a sum of weights >= 2**shift
                self.cost >>= shift
        return u, v, crossing

    def run(self) -> SpanningTree:
        while not self.done():
            self.step()
        return SpanningTree(self.n, self.edges)


def build_low_crossing_tree(f: VectorFamily, backend: str | None = None) -> SpanningTree:
    """Greedy reweighting spanning tree on the coordinates of ``f``."""
    return LowCrossingBuilder(f, backend=backend).run()


def tree_to_order(tree: SpanningTree) -> Ordering:
    """Depth-first preorder from vertex 0, children in increasing order."""
    nbrs = tree.adjacency()
    seen = [False] * tree.n
    order = []
    stack = [0]
    while stack:
        v = stack.pop()
        if seen[v]:
            continue
        seen[v] = True
        order.append(v)
        stack.extend(u for u in reversed(nbrs[v]) if not seen[u])
    return Ordering(order)


def low_crossing_order(f: VectorFamily, backend: str | None = None) -> Ordering:
    return tree_to_order(build_low_crossing_tree(f, backend=backend))


def alternation_counts(f: VectorFamily, ordering: Ordering, backend: str | None = None) -> np.ndarray:
    """Alternations of every vector after permuting coordinates by ``ordering``."""
    if ordering.n != f.t:
        raise ContractError(f"ordering has {ordering.n} positions, vectors have length {f.t}")
    if len(f) == 0:
        return np.zeros(0, dtype=np.int64)
    permuted = kernels.as_u8(f.vectors[:, ordering.perm])
    return np.asarray(kernels.get(backend).row_alternations(permuted))


def max_alternations(f: VectorFamily, ordering: Ordering, backend: str | None = None) -> int:
    counts = alternation_counts(f, ordering, backend)
    return int(counts.max()) if counts.size else 0
