"""Adjacency labels: interval and degeneracy schemes, decoding, bit costs,
label files, and small induced-universal graphs built from the label space."""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import ContractError, ParseError, check_guard
from .graph import Graph, Ordering, degeneracy_order

__all__ = [
    "IntervalLabel",
    "DegeneracyLabel",
    "LabelSet",
    "BitCost",
    "VerifyReport",
    "encode_intervals",
    "encode_degeneracy",
    "adjacent",
    "verify_labeling",
    "bits_lower_bound",
    "position_width",
    "label_bits",
    "serialize_label",
    "deserialize_label",
    "build_universal",
    "verify_universal",
    "runs_of_ones",
]

SCHEMES = ("interval", "degeneracy")


@dataclass(frozen=True)
class IntervalLabel:
    """A position plus the maximal runs of neighbour positions, as inclusive
    ``(lo, hi)`` pairs."""

    pos: int
    intervals: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev_hi = None
        for lo, hi in self.intervals:
            if lo > hi:
                raise ContractError(f"empty interval [{lo}, {hi}]")
            if prev_hi is not None and prev_hi + 1 >= lo:
                raise ContractError(f"intervals overlap or touch: {self.intervals}")
            if lo <= self.pos <= hi:
                raise ContractError(f"position {self.pos} lies inside interval [{lo}, {hi}]")
            prev_hi = hi

    def contains(self, p: int) -> bool:
        i = bisect.bisect_right(self.intervals, (p, math.inf)) - 1
        return i >= 0 and self.intervals[i][0] <= p <= self.intervals[i][1]


@dataclass(frozen=True)
class DegeneracyLabel:
    """A position plus the sorted positions of later neighbours."""

    pos: int
    fwd: tuple[int, ...] = ()

    def __post_init__(self):
        if list(self.fwd) != sorted(set(self.fwd)):
            raise ContractError(f"forward list must be sorted and distinct: {self.fwd}")
        if self.pos in self.fwd:
            raise ContractError(f"forward list contains own position {self.pos}")

    def contains(self, p: int) -> bool:
        i = bisect.bisect_left(self.fwd, p)
        return i < len(self.fwd) and self.fwd[i] == p


Label = Union[IntervalLabel, DegeneracyLabel]


def position_width(n: int) -> int:
    """Bits per position: ``ceil(log2 n)``, and 1 when n <= 1."""
    return max(1, (n - 1).bit_length())


def label_bits(label: Label, n: int) -> int:
    """Information bits of a label (framing excluded)."""
    w = position_width(n)
    if isinstance(label, IntervalLabel):
        return w * (1 + 2 * len(label.intervals))
    return w * (1 + len(label.fwd))


@dataclass(frozen=True)
class BitCost:
    per_vertex: tuple[int, ...]
    width: int
    scheme: str
    n: int

    @property
    def max(self) -> int:
        return max(self.per_vertex, default=0)

    @property
    def mean(self) -> float:
        return sum(self.per_vertex) / len(self.per_vertex) if self.per_vertex else 0.0


@dataclass
class LabelSet:
    """Labels for one graph; ``labels[v]`` belongs to vertex ``v``."""

    scheme: str
    n: int
    labels: list
    ordering: Ordering = field(default=None)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ContractError(f"unknown scheme {self.scheme!r}")
        if len(self.labels) != self.n:
            raise ContractError(f"{len(self.labels)} labels for n={self.n}")
        kind = IntervalLabel if self.scheme == "interval" else DegeneracyLabel
        if any(not isinstance(lab, kind) for lab in self.labels):
            raise ContractError(f"labels do not all belong to the {self.scheme} scheme")
        perm = [0] * self.n
        seen = [False] * self.n
        for v, lab in enumerate(self.labels):
            if not 0 <= lab.pos < self.n or seen[lab.pos]:
                raise ContractError("label positions are not a permutation of 0..n-1")
            seen[lab.pos] = True
            perm[lab.pos] = v
        derived = Ordering(perm)
        if self.ordering is None:
            self.ordering = derived
        elif self.ordering != derived:
            raise ContractError("ordering disagrees with label positions")

    def bit_cost(self) -> BitCost:
        return BitCost(
            tuple(label_bits(lab, self.n) for lab in self.labels),
            position_width(self.n),
            self.scheme,
            self.n,
        )

    def to_text(self) -> str:
        out = [f"{self.scheme} {self.n}"]
        for v, lab in enumerate(self.labels):
            if self.scheme == "interval":
                flat = [x for iv in lab.intervals for x in iv]
                out.append(" ".join(map(str, [v, lab.pos, len(lab.intervals), *flat])))
            else:
                out.append(" ".join(map(str, [v, lab.pos, len(lab.fwd), *lab.fwd])))
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text) -> LabelSet:
        if isinstance(text, bytes):
            text = text.decode()
        rows = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), 1) if ln.strip() and not ln.startswith("#")]
        if not rows:
            raise ParseError("empty label file")
        lineno, head = rows[0]
        if len(head) != 2 or head[0] not in SCHEMES:
            raise ParseError("header must be 'interval n' or 'degeneracy n'", lineno)
        scheme = head[0]
        try:
            n = int(head[1])
        except ValueError:
            raise ParseError("bad vertex count in header", lineno) from None
        labels: list = [None] * n
        for lineno, parts in rows[1:]:
            try:
                nums = [int(x) for x in parts]
            except ValueError:
                raise ParseError("non-integer field", lineno) from None
            if len(nums) < 3:
                raise ParseError("label line needs 'v pos k ...'", lineno)
            v, pos, k, rest = nums[0], nums[1], nums[2], nums[3:]
            if not 0 <= v < n or labels[v] is not None:
                raise ParseError(f"vertex {v} out of range or repeated", lineno)
            try:
                if scheme == "interval":
                    if len(rest) != 2 * k:
                        raise ParseError(f"expected {2 * k} endpoints", lineno)
                    labels[v] = IntervalLabel(pos, tuple(zip(rest[0::2], rest[1::2])))
                else:
                    if len(rest) != k:
                        raise ParseError(f"expected {k} forward positions", lineno)
                    labels[v] = DegeneracyLabel(pos, tuple(rest))
            except ContractError as exc:
                raise ParseError(str(exc), lineno) from None
        missing = [v for v, lab in enumerate(labels) if lab is None]
        if missing:
            raise ParseError(f"no label for vertices {missing[:10]}")
        try:
            return cls(scheme, n, labels)
        except ContractError as exc:
            raise ParseError(str(exc)) from None


def runs_of_ones(bits) -> list[tuple[int, int]]:
    """Maximal runs of True as inclusive ``(lo, hi)`` pairs."""
    b = np.asarray(bits, dtype=np.int8)
    if b.size == 0:
        return []
    d = np.diff(np.concatenate(([0], b, [0])))
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1) - 1
    return list(zip(starts.tolist(), ends.tolist()))


def encode_intervals(g: Graph, ordering: Ordering) -> LabelSet:
    """Interval labels: each vertex stores its position and the runs its
    neighbourhood forms under ``ordering``."""
    if ordering.n != g.n:
        raise ContractError(f"ordering has {ordering.n} positions for n={g.n}")
    permuted = g.adj[:, ordering.perm]
    labels = [IntervalLabel(int(ordering.pos[v]), tuple(runs_of_ones(permuted[v]))) for v in range(g.n)]
    return LabelSet("interval", g.n, labels, ordering)


def encode_degeneracy(g: Graph) -> LabelSet:
    """Degeneracy labels: position in the peeling order plus positions of
    later neighbours."""
    ordering, _ = degeneracy_order(g)
    pos = ordering.pos
    labels = []
    for v in range(g.n):
        later = sorted(int(pos[u]) for u in g.neighbors(v) if pos[u] > pos[v])
        labels.append(DegeneracyLabel(int(pos[v]), tuple(later)))
    return LabelSet("degeneracy", g.n, labels, ordering)


def adjacent(lu: Label, lv: Label) -> bool:
    """Decide adjacency from two labels alone."""
    if type(lu) is not type(lv):
        raise ContractError("labels come from different schemes")
    if lu.pos == lv.pos:
        raise ContractError(f"both labels have position {lu.pos}")
    if isinstance(lu, IntervalLabel):
        return lu.contains(lv.pos) and lv.contains(lu.pos)
    return lu.contains(lv.pos) or lv.contains(lu.pos)


@dataclass
class VerifyReport:
    mismatches: list  # (u, v, graph says, labels say)
    cost: BitCost

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_labeling(g: Graph, ls: LabelSet) -> VerifyReport:
    """Decode every pair from labels and compare with ``g``."""
    if ls.n != g.n:
        raise ContractError(f"label set for n={ls.n}, graph has n={g.n}")
    mismatches = []
    labels = ls.labels
    adj = g.adj
    for u in range(g.n):
        lu = labels[u]
        row = adj[u]
        for v in range(u + 1, g.n):
            got = adjacent(lu, labels[v])
            if got != bool(row[v]):
                mismatches.append((u, v, bool(row[v]), got))
    return VerifyReport(mismatches, ls.bit_cost())


def bits_lower_bound(num_graphs: int, m: int) -> int:
    """Smallest ``l`` with ``2**(l*m) >= num_graphs``."""
    if num_graphs < 1 or m < 1:
        raise ContractError("need num_graphs >= 1 and m >= 1")
    # ceil(log2 N) computed exactly for arbitrarily large N
    return -(-(num_graphs - 1).bit_length() // m)


# -- bit-exact serialisation: fixed-width position, LEB128 count, fixed-width entries


def _varint_bits(k: int) -> str:
    out = []
    while True:
        byte = k & 0x7F
        k >>= 7
        out.append(format(byte | (0x80 if k else 0), "08b"))
        if not k:
            return "".join(out)


def serialize_label(label: Label, n: int) -> str:
    """Self-delimiting bit string for one label."""
    w = position_width(n)
    fmt = f"0{w}b"
    if isinstance(label, IntervalLabel):
        items = [x for iv in label.intervals for x in iv]
        count = len(label.intervals)
    else:
        items = list(label.fwd)
        count = len(items)
    return format(label.pos, fmt) + _varint_bits(count) + "".join(format(x, fmt) for x in items)


def deserialize_label(bits: str, n: int, scheme: str) -> tuple[Label, int]:
    """Inverse of ``serialize_label``; returns the label and bits consumed."""
    w = position_width(n)
    i = 0

    def take(k):
        nonlocal i
        if i + k > len(bits):
            raise ParseError("truncated label bit string")
        chunk = bits[i : i + k]
        i += k
        return int(chunk, 2)

    pos = take(w)
    count, shift = 0, 0
    while True:
        byte = take(8)
        count |= (byte & 0x7F) << shift
        shift += 7
        if not byte & 0x80:
            break
    if scheme == "interval":
        flat = [take(w) for _ in range(2 * count)]
        return IntervalLabel(pos, tuple(zip(flat[0::2], flat[1::2]))), i
    return DegeneracyLabel(pos, tuple(take(w) for _ in range(count))), i


# -- universal graphs


def _interval_menu_count(n: int, pos: int, r: int) -> int:
    # binary strings of length L with exactly j runs of ones: C(L+1, 2j)
    left, right = pos, n - 1 - pos
    return sum(
        math.comb(left + 1, 2 * a) * math.comb(right + 1, 2 * b)
        for a in range(r + 1)
        for b in range(r + 1 - a)
    )


def _label_space_size(n: int, scheme: str, cap: int) -> int:
    if scheme == "interval":
        return sum(_interval_menu_count(n, p, cap) for p in range(n))
    return sum(sum(math.comb(n - 1 - p, j) for j in range(cap + 1)) for p in range(n))


def _enumerate_labels(n: int, scheme: str, cap: int):
    for pos in range(n):
        if scheme == "interval":
            others = [p for p in range(n) if p != pos]
            for mask in range(1 << len(others)):
                bits = np.zeros(n, dtype=bool)
                bits[[others[i] for i in range(len(others)) if mask >> i & 1]] = True
                runs = runs_of_ones(bits)
                # pos is never set, so runs never straddle it
                if len(runs) <= cap:
                    yield IntervalLabel(pos, tuple(runs))
        else:
            later = range(pos + 1, n)
            for size in range(min(cap, n - 1 - pos) + 1):
                for fwd in itertools.combinations(later, size):
                    yield DegeneracyLabel(pos, fwd)


def build_universal(n: int, scheme: str = "interval", max_intervals: int | None = None):
    """Graph on every syntactically valid label for ``n`` vertices.

    ``max_intervals`` caps the number of intervals (interval scheme) or
    forward neighbours (degeneracy scheme); ``None`` means no cap.
    Returns the graph and a map from label to vertex index.
    """
    if n < 1:
        raise ContractError("n must be positive")
    if scheme not in SCHEMES:
        raise ContractError(f"unknown scheme {scheme!r}")
    cap = n if max_intervals is None else max_intervals
    if cap < 0:
        raise ContractError("max_intervals must be non-negative")
    check_guard("labels in universal graph", _label_space_size(n, scheme, cap))
    labels = list(_enumerate_labels(n, scheme, cap))
    index = {lab: i for i, lab in enumerate(labels)}
    size = len(labels)
    a = np.zeros((size, size), dtype=bool)
    for i in range(size):
        li = labels[i]
        for j in range(i + 1, size):
            lj = labels[j]
            if li.pos != lj.pos and adjacent(li, lj):
                a[i, j] = a[j, i] = True
    return Graph(a), index


def verify_universal(u: Graph, index: dict, g: Graph, ls: LabelSet) -> bool:
    """True iff mapping each vertex of ``g`` to its label's vertex in ``u``
    is an induced embedding."""
    if ls.n != g.n:
        raise ContractError(f"label set for n={ls.n}, graph has n={g.n}")
    try:
        image = [index[lab] for lab in ls.labels]
    except KeyError as exc:
        raise ContractError(f"label {exc.args[0]} is not a vertex of the universal graph") from None
    if len(set(image)) != len(image):
        return False
    return bool(np.array_equal(u.adj[np.ix_(image, image)], g.adj))
