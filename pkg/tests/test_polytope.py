from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings

from linext.errors import CapExceeded, PreconditionViolated
from linext.polytope import (
    ConstraintSystem,
    VertexPolytope,
    bareiss_det,
    chain_polytope,
    is_totally_unimodular,
    maximal_chains,
    order_filters,
    order_polytope,
    pin,
    slices,
    vertices,
    vertices_bruteforce,
)
from linext.poset import Poset, antichain, bits, chain

from conftest import posets


def _pts(V):
    return {tuple(int(c) for c in p) for p in V.vertices}


def test_order_polytope_antichain_is_cube():
    assert _pts(vertices(order_polytope(antichain(2)))) == set(product((0, 1), repeat=2))


def test_order_polytope_chain():
    # a_0 <= a_1
    assert _pts(vertices(order_polytope(chain(2)))) == {(0, 0), (0, 1), (1, 1)}


def test_chain_polytope_chain():
    assert _pts(vertices(chain_polytope(chain(2)))) == {(0, 0), (1, 0), (0, 1)}
    assert maximal_chains(Poset.from_relations(3, [(0, 1), (0, 2)])) == [(0, 1), (0, 2)]


@settings(max_examples=60, deadline=None)
@given(posets(max_n=6))
def test_vertex_count_is_filter_count(P):
    V = vertices(order_polytope(P))
    assert len(V.vertices) == len(order_filters(P))
    filters = {tuple(int(u in bits(m)) for u in range(P.n)) for m in order_filters(P)}
    assert _pts(V) == filters


@settings(max_examples=25, deadline=None)
@given(posets(max_n=4))
def test_vertices_match_bruteforce(P):
    system = order_polytope(P)
    assert set(vertices(system).vertices) == set(vertices_bruteforce(system).vertices)


def test_contains_and_json():
    S = order_polytope(chain(2))
    assert S.contains((0, 1)) and not S.contains((1, 0))
    assert ConstraintSystem.from_json(S.to_json()) == S
    V = vertices(S)
    assert VertexPolytope.from_json(V.to_json()) == V


def test_pin_and_infeasible():
    S = pin(order_polytope(chain(2)), {0: 1})
    assert S.free == [1]
    assert _pts(vertices(S)) == {(1, 1)}
    with pytest.raises(PreconditionViolated):
        pin(order_polytope(chain(2)), {0: 1, 1: 0})


def test_slices_of_chain():
    S0, S1 = slices(chain(2), [0])
    # S_0: a >= z fixed to 1; S_1: z and below fixed to 0
    assert _pts(vertices(S0)) == {(1, 1)}
    assert _pts(vertices(S1)) == {(0, 0), (0, 1)}
    with pytest.raises(PreconditionViolated):
        slices(antichain(2), [0, 1])


def test_slices_antichain_free_coordinates():
    S = slices(antichain(3), [0])
    assert [s.free for s in S] == [[1, 2], [1, 2]]


def test_bareiss():
    assert bareiss_det([[2, 0], [0, 3]]) == 6
    assert bareiss_det([[1, 1], [-1, 1]]) == 2
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([]) == 1
    assert bareiss_det([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3


def test_tu_examples():
    assert is_totally_unimodular([[1, 0], [0, 1]])
    assert not is_totally_unimodular([[1, 1], [-1, 1]])
    assert not is_totally_unimodular([[2]])
    # interval matrix (consecutive ones) is TU
    assert is_totally_unimodular([[1, 1, 0], [0, 1, 1], [1, 1, 1]])
    # odd cycle incidence is not
    assert not is_totally_unimodular([[1, 1, 0], [0, 1, 1], [1, 0, 1]])


def test_tu_reduce_agrees():
    A = [[1, 0, 1], [0, 1, 1], [1, 1, 0], [1, 0, 0]]
    assert is_totally_unimodular(A) == is_totally_unimodular(A, reduce=False)


@settings(max_examples=30, deadline=None)
@given(posets(max_n=5))
def test_order_polytope_is_tu(P):
    assert is_totally_unimodular(order_polytope(P).A)


def test_tu_cap():
    A = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
    A = [r[:] for r in A]
    A[0][1] = 1
    with pytest.raises(CapExceeded):
        is_totally_unimodular(A, cap=2, reduce=False)


def test_vertices_cap():
    with pytest.raises(CapExceeded):
        vertices(order_polytope(antichain(5)), cap=4)


def test_vertex_polytope_validation():
    with pytest.raises(ValueError):
        VertexPolytope((), 2)
    with pytest.raises(ValueError):
        VertexPolytope(((0, 1), (1,)), 2)
    V = VertexPolytope(((0, 0), (1, 0)), 2)
    assert V.free == [0] and V.scaled(3).vertices[-1] == (Fraction(3), Fraction(0))
