import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from labelforge.corpus import (
    FieldSpec,
    build_norm_graph,
    find_irreducible,
    hereditary_closure_sample,
    is_prime,
    norm,
    norm_graph_vertices,
)
from labelforge.errors import ContractError
from labelforge.graph import degeneracy_order, gen
from labelforge.patterns import contains_kst

from oracles import norm_graph_d2_oracle


def _has_root(coeffs, p):
    return any(sum(c * x**i for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


def test_find_irreducible_examples():
    assert find_irreducible(3, 1) == (0, 1)
    assert find_irreducible(3, 2) == (1, 0, 1)
    assert find_irreducible(2, 3) == (1, 1, 0, 1)


def test_find_irreducible_first_rootless_low_degree():
    # for degree 2 and 3, irreducible == no roots; the chosen one is the first such
    for p in (2, 3, 5, 7):
        for m in (2, 3):
            got = find_irreducible(p, m)
            assert not _has_root(got, p)
            first = next(
                c + (1,)
                for c in (tuple((x // p**i) % p for i in range(m)) for x in range(p**m))
                if not _has_root(c + (1,), p)
            )
            assert got == first


def test_find_irreducible_errors():
    with pytest.raises(ContractError):
        find_irreducible(4, 2)
    with pytest.raises(ContractError):
        FieldSpec(3, 2, (2, 0, 1))  # x^2 + 2 = (x+1)(x+2) over GF(3)


def test_is_prime():
    assert [x for x in range(30) if is_prime(x)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


FIELDS = [(2, 1), (2, 3), (3, 2), (5, 1), (5, 2), (7, 2), (2, 4)]


@pytest.mark.parametrize("p, m", FIELDS)
def test_field_axioms(p, m):
    F = FieldSpec.standard(p, m)
    elems = list(F.elements())
    assert len(elems) == F.q
    one, zero = F.one(), F.zero()
    for a in elems:
        assert one * a == a and a + zero == a
        assert a + (-a) == zero
        if not a.is_zero():
            assert a * a.inv() == one
            # Fermat by exhaustive repeated multiplication
            acc = one
            for _ in range(F.q - 1):
                acc = acc * a
            assert acc == one
            assert a ** (F.q - 1) == one
    rng = np.random.default_rng(p * 100 + m)
    for _ in range(50):
        a, b, c = (elems[i] for i in rng.integers(0, F.q, size=3))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        FieldSpec.standard(3, 2).zero().inv()


def test_field_mixing_rejected():
    a = FieldSpec.standard(3, 2).one()
    b = FieldSpec.standard(5, 2).one()
    with pytest.raises(ContractError):
        a + b


def test_fieldspec_str():
    assert str(FieldSpec.standard(3, 2)) == "3 2 1 0 1"


@pytest.mark.parametrize("p, m", [(3, 1), (3, 2), (5, 1), (5, 2), (2, 2), (2, 3)])
def test_norm_multiplicative_and_in_base_field(p, m):
    F = FieldSpec.standard(p, m)
    elems = list(F.elements())
    assert norm(F.zero()) == F.zero() and norm(F.one()) == F.one()
    for x in elems:
        assert norm(x).in_base_field()
    for x, y in itertools.product(elems, repeat=2):
        assert norm(x * y) == norm(x) * norm(y)


def test_norm_gf9_is_fourth_power():
    F = FieldSpec.standard(3, 2)
    for x in F.elements():
        assert norm(x) == x * x * x * x
        assert norm(x).in_base_field()


@pytest.mark.parametrize("q", [3, 5, 7])
def test_norm_graph_d2_matches_hand_oracle(q):
    g = build_norm_graph(q, 2)
    n, edges = norm_graph_d2_oracle(q)
    assert g.n == n == q * (q - 1)
    assert set(g.edges()) == edges


def test_norm_graph_q5_degrees():
    g = build_norm_graph(5, 2)
    assert g.n == 20 and g.degrees().max() <= 4


def test_norm_graph_q3_d3():
    g = build_norm_graph(3, 3)
    assert g.n == 18
    assert contains_kst(g, 3, 3) is None
    verts = norm_graph_vertices(3, 3)
    # spot-check the rule on every pair
    for i, j in itertools.combinations(range(g.n), 2):
        (A, a), (B, b) = verts[i], verts[j]
        assert g.adj[i, j] == (norm(A + B).coeffs[0] == (a * b) % 3)


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13])
def test_norm_graph_structure(q):
    g = build_norm_graph(q, 2)
    assert contains_kst(g, 2, 2) is None
    assert set(g.degrees().tolist()) <= {q - 2, q - 1}
    assert g.num_edges >= g.n**1.5 / 4


def test_norm_graph_golden_edge_counts():
    # pinned from the first verified run
    assert {q: build_norm_graph(q, 2).num_edges for q in (3, 5, 7, 11, 13)} == {3: 5, 5: 38, 7: 123, 11: 545, 13: 930}


def test_norm_graph_edge_count_formula():
    # vertices with 2A = a^2 (a self-loop dropped) have degree q-2; there are (q-1) of them
    for q in (3, 5, 7, 11, 13):
        assert build_norm_graph(q, 2).num_edges == (q * (q - 1) * (q - 1) - (q - 1)) // 2


def test_norm_graph_invalid():
    with pytest.raises(ContractError):
        build_norm_graph(4, 2)
    with pytest.raises(ContractError):
        build_norm_graph(5, 1)


def test_hereditary_sample():
    g = build_norm_graph(5, 2)
    assert hereditary_closure_sample(g, [g.n], 1, seed=0)[0] == g
    ones = hereditary_closure_sample(g, [1], 3, seed=0)
    assert all(h.n == 1 and h.num_edges == 0 for h in ones)
    a = hereditary_closure_sample(g, [5, 9], 4, seed=42)
    b = hereditary_closure_sample(g, [5, 9], 4, seed=42)
    assert a == b and len(a) == 8
    with pytest.raises(ContractError):
        hereditary_closure_sample(g, [21], 1, seed=0)
    with pytest.raises(ContractError):
        hereditary_closure_sample(g, [3], 1, seed=None)


def test_samples_stay_k22_free():
    for h in hereditary_closure_sample(build_norm_graph(7, 2), [10, 20, 30], 3, seed=1):
        assert contains_kst(h, 2, 2) is None
