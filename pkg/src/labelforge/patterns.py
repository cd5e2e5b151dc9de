"""Forbidden bipartite patterns: U(k, d) and complete bipartite K_{s,t}."""

from __future__ import annotations

import itertools
import math
from typing import Callable

import numpy as np

from .errors import ContractError, check_guard
from .graph import Graph
from .setsystem import lemma21_threshold

__all__ = ["build_u", "contains_u", "contains_kst", "shatter_bound_for_ufree", "trace_code"]


def build_u(k: int, d: int) -> tuple[Graph, list[int], list[int]]:
    """The bipartite pattern U(k, d).

    Side A is ``0..d-1``. For each subset ``C`` of A, taken in increasing
    order of its bitmask (bit ``i`` means A-vertex ``i``), there follow ``k``
    B-vertices whose neighbourhood is exactly ``C``.
    """
    if k < 1 or d < 1:
        raise ContractError(f"need k >= 1 and d >= 1, got k={k}, d={d}")
    n = d + k * (1 << d)
    check_guard("U(k,d) adjacency entries", n * d)
    a = np.zeros((n, n), dtype=bool)
    v = d
    for mask in range(1 << d):
        members = [i for i in range(d) if mask >> i & 1]
        for _ in range(k):
            a[v, members] = True
            a[members, v] = True
            v += 1
    return Graph(a), list(range(d)), list(range(d, n))


def trace_code(g: Graph, v: int, a_side) -> int:
    """Bitmask of ``N(v) ∩ A`` using the same bit convention as ``build_u``."""
    code = 0
    for i, a in enumerate(a_side):
        if g.adj[v, a]:
            code |= 1 << i
    return code


def contains_u(g: Graph, k: int, d: int) -> tuple[list[int], list[int]] | None:
    """Find a copy of U(k, d) as ``G[A, B]``, or None if ``g`` is U(k,d)-free.

    A runs over d-sets in lexicographic order. B is listed in ``build_u``
    layout: grouped by trace bitmask, and within a group the ``k``
    smallest-index vertices outside A.
    """
    if k < 1 or d < 1:
        raise ContractError(f"need k >= 1 and d >= 1, got k={k}, d={d}")
    if g.n < d + k * (1 << d):
        return None
    check_guard("candidate A-sets x traces", math.comb(g.n, d) << d)
    adj = g.adj.astype(np.int64)
    full = 1 << d
    everyone = np.arange(g.n)
    for a_side in itertools.combinations(range(g.n), d):
        outside = np.setdiff1d(everyone, a_side, assume_unique=True)
        codes = np.zeros(outside.shape[0], dtype=np.int64)
        for i, a in enumerate(a_side):
            codes |= adj[outside, a] << i
        counts = np.bincount(codes, minlength=full)
        if counts.min() < k:
            continue
        b_side = []
        for c in range(full):
            b_side.extend(outside[codes == c][:k].tolist())
        return list(a_side), b_side
    return None


def contains_kst(g: Graph, s: int, t: int) -> tuple[list[int], list[int]] | None:
    """Find a (not necessarily induced) K_{s,t}: an s-set with at least t
    common neighbours. Returns the s-set and its ``t`` smallest common
    neighbours, or None."""
    if s < 1 or t < 1:
        raise ContractError(f"need s >= 1 and t >= 1, got s={s}, t={t}")
    if g.n < s + t:
        return None
    check_guard("candidate s-sets", math.comb(g.n, s))
    masks = g.neighbor_masks()
    # Prune vertices that cannot be on the s-side.
    eligible = [v for v in range(g.n) if masks[v].bit_count() >= t]
    for side in itertools.combinations(eligible, s):
        common = masks[side[0]]
        for v in side[1:]:
            common &= masks[v]
            if common.bit_count() < t:
                break
        if common.bit_count() >= t:
            others = [u for u in range(g.n) if common >> u & 1][:t]
            return list(side), others
    return None


def shatter_bound_for_ufree(n: int, d: int, k: int) -> Callable[[int], int]:
    """Certified primal shatter bound for rows of a U(k, d)-free graph.

    The returned function maps ``t > d`` to ``lemma21_threshold(t, d, k+d) - 1``.
    ``n`` only bounds the admissible ``t``.
    """
    if d < 1 or k < 1:
        raise ContractError(f"need d >= 1 and k >= 1, got d={d}, k={k}")

    def bound(t: int) -> int:
        if not d < t <= n:
            raise ContractError(f"bound holds for {d} < t <= {n}, got t={t}")
        return lemma21_threshold(t, d, k + d) - 1

    return bound
