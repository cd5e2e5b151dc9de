"""Finite fields GF(p^m), projective norm graphs, and hereditary samples."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ContractError, check_guard
from .graph import Graph, induced_subgraph

__all__ = [
    "is_prime",
    "find_irreducible",
    "FieldSpec",
    "FieldElem",
    "norm",
    "build_norm_graph",
    "norm_graph_vertices",
    "hereditary_closure_sample",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


# Polynomials over GF(p) are coefficient lists, constant term first, with no
# trailing zeros (the zero polynomial is []).


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    """Remainder of ``a`` divided by the monic polynomial ``b``."""
    a = list(a)
    db = len(b) - 1
    while len(_trim(a)) - 1 >= db:
        shift = len(a) - 1 - db
        c = a[-1]
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
    return a


def _monic_polys(p, deg):
    """Monic polynomials of degree ``deg`` in increasing ``sum c_i p^i`` order."""
    for low in range(p**deg):
        coeffs = []
        x = low
        for _ in range(deg):
            coeffs.append(x % p)
            x //= p
        yield coeffs + [1]


def _is_irreducible(f, p):
    m = len(f) - 1
    for deg in range(1, m // 2 + 1):
        for g in _monic_polys(p, deg):
            if not _poly_mod(f, g, p):
                return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree ``m`` over GF(p).

    Candidates are ordered by their constant-first coefficients read as a
    base-p number (constant term least significant). Returns all ``m + 1``
    coefficients, constant first.
    """
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    if m < 1:
        raise ContractError("degree must be at least 1")
    check_guard("candidate polynomials", p**m)
    for f in _monic_polys(p, m):
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("every degree has an irreducible polynomial")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) as GF(p)[x] / (modulus)."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ContractError(f"{self.p} is not prime")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ContractError("modulus must be monic of degree m")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ContractError("modulus coefficients must lie in [0, p)")
        if not _is_irreducible(list(self.modulus), self.p):
            raise ContractError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @classmethod
    def standard(cls, p: int, m: int) -> FieldSpec:
        return cls(p, m, find_irreducible(p, m))

    @property
    def q(self) -> int:
        return self.p**self.m

    def __str__(self):
        return " ".join(map(str, (self.p, self.m, *self.modulus)))

    def elem(self, coeffs) -> FieldElem:
        return FieldElem(self, coeffs)

    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.m)

    def one(self) -> FieldElem:
        return self.from_base(1)

    def from_base(self, c: int) -> FieldElem:
        return FieldElem(self, (c % self.p,) + (0,) * (self.m - 1))

    def elements(self):
        """All elements, lexicographic in the coefficient tuple."""
        for coeffs in itertools.product(range(self.p), repeat=self.m):
            yield FieldElem(self, coeffs)

    @cached_property
    def _mod_list(self):
        return list(self.modulus)


class FieldElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        coeffs = tuple(int(c) % field.p for c in coeffs)
        if len(coeffs) > field.m:
            raise ContractError(f"{len(coeffs)} coefficients for degree-{field.m} field")
        self.field = field
        self.coeffs = coeffs + (0,) * (field.m - len(coeffs))

    def _same(self, other):
        if not isinstance(other, FieldElem) or other.field != self.field:
            raise ContractError("field elements from different fields")

    def __add__(self, other):
        self._same(other)
        return FieldElem(self.field, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return FieldElem(self.field, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return FieldElem(self.field, (-a for a in self.coeffs))

    def __mul__(self, other):
        self._same(other)
        p = self.field.p
        prod = [0] * (2 * self.field.m - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] = (prod[i + j] + a * b) % p
        return FieldElem(self.field, _poly_mod(prod, self.field._mod_list, p))

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> FieldElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * other.inv()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_base_field(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        return isinstance(other, FieldElem) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def __repr__(self):
        return f"FieldElem{self.coeffs}"


def norm(x: FieldElem) -> FieldElem:
    """Norm from GF(p^m) down to GF(p): ``x ** ((p^m - 1) / (p - 1))``."""
    f = x.field
    return x ** ((f.q - 1) // (f.p - 1))


def norm_graph_vertices(q: int, d: int):
    """Vertex labels ``(A, a)`` of the norm graph in index order."""
    field = FieldSpec.standard(q, d - 1)
    return [(A, a) for A in field.elements() for a in range(1, q)]


def build_norm_graph(q: int, d: int) -> Graph:
    """Projective norm graph on GF(q^(d-1)) x GF(q)*.

    ``(A, a)`` and ``(B, b)`` are adjacent iff ``N(A + B) = a * b``. ``q``
    must be prime. Vertices are indexed lexicographically by (coefficients
    of A, a).
    """
    if not isinstance(q, int) or not is_prime(q):
        raise ContractError(f"q must be prime, got {q!r}")
    if d < 2:
        raise ContractError(f"d must be at least 2, got {d}")
    field = FieldSpec.standard(q, d - 1)
    size = field.q
    n = size * (q - 1)
    check_guard("norm graph vertex pairs", n * n)
    elems = list(field.elements())
    # Elements are indexed by their position in lexicographic coefficient
    # order, i.e. sum c_i * q^(m-1-i).
    weights = np.array([q ** (field.m - 1 - i) for i in range(field.m)], dtype=np.int64)
    coeffs = np.array([e.coeffs for e in elems], dtype=np.int64)
    add_table = ((coeffs[:, None, :] + coeffs[None, :, :]) % q) @ weights
    norm_of = np.array([norm(e).coeffs[0] for e in elems], dtype=np.int64)
    norm_sum = norm_of[add_table]  # norm_sum[i, j] = N(A_i + A_j)

    big_a = np.repeat(np.arange(size), q - 1)
    small_a = np.tile(np.arange(1, q), size)
    adj = norm_sum[np.ix_(big_a, big_a)] == (small_a[:, None] * small_a[None, :]) % q
    np.fill_diagonal(adj, False)
    return Graph(adj)


def hereditary_closure_sample(g: Graph, sizes, count: int, seed) -> list[Graph]:
    """``count`` random induced subgraphs of ``g`` for each size in ``sizes``.

    Subsets are drawn uniformly and kept in increasing vertex order, so a
    sample of size ``g.n`` is ``g`` itself.
    """
    if seed is None:
        raise ContractError("an explicit seed is required")
    if count < 0:
        raise ContractError("count must be non-negative")
    rng = np.random.default_rng(seed)
    out = []
    for s in sizes:
        if not 0 <= s <= g.n:
            raise ContractError(f"sample size {s} outside [0, {g.n}]")
        for _ in range(count):
            pick = np.sort(rng.choice(g.n, size=s, replace=False))
            out.append(induced_subgraph(g, pick.tolist()))
    return out
