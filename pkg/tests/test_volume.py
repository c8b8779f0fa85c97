from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings

from linext.counting import CountInstance, count, stanley_defect
from linext.errors import DegenerateInput, DimensionMismatch
from linext.polytope import VertexPolytope, order_polytope, vertices
from linext.poset import Poset, antichain, chain
from linext.volume import (
    af_defect,
    affine_rank,
    full_volume,
    minkowski_combination,
    mixed_volume,
    sta_multiplicities,
    stanley_af_defect,
    verify_sta_pol,
    volume,
    volume_polynomial,
)

from conftest import posets

SQUARE = VertexPolytope(((0, 0), (1, 0), (0, 1), (1, 1)), 2)
SEG_X = VertexPolytope(((0, 0), (1, 0)), 2)
SEG_Y = VertexPolytope(((0, 0), (0, 1)), 2)
TRI = VertexPolytope(((0, 0), (1, 0), (0, 1)), 2)


def test_basic_volumes():
    assert volume(SQUARE) == 1
    assert volume(TRI) == Fraction(1, 2)
    assert volume(vertices(order_polytope(chain(2)))) == Fraction(1, 2)
    assert volume(SEG_X) == 1


def test_minkowski_sums():
    assert volume(minkowski_combination([1, 1], [SQUARE, SQUARE])) == 4
    assert volume(minkowski_combination([1, 1], [SEG_X, SEG_Y])) == 1
    assert volume(minkowski_combination([2, 3], [SEG_X, SEG_Y])) == 6
    with pytest.raises(ValueError):
        minkowski_combination([0], [SQUARE])


@pytest.mark.parametrize("lam", [2, 3, Fraction(1, 2)])
def test_homogeneity(lam):
    V = vertices(order_polytope(antichain(3)))
    assert volume(V.scaled(lam)) == lam ** 3 * volume(V)


@settings(max_examples=30, deadline=None)
@given(posets(max_n=5))
def test_order_polytope_volume_counts(P):
    V = vertices(order_polytope(P))
    assert volume(V) == Fraction(count(P), factorial(P.n))


@settings(max_examples=15, deadline=None)
@given(posets(min_n=3, max_n=4))
def test_bruteforce_agrees_with_qhull(P):
    V = vertices(order_polytope(P))
    assert volume(V, bruteforce=True) == volume(V)


def test_degenerate_handling():
    assert volume(SEG_X, dim=2) == 0
    with pytest.raises(DegenerateInput):
        volume(SEG_X, dim=2, strict=True)
    with pytest.raises(DimensionMismatch):
        volume(SQUARE, dim=1)
    diag = VertexPolytope(((0, 0), (1, 1)), 2)
    assert volume(diag) == 0
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1
    assert full_volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 3) == Fraction(1, 6)


def test_mixed_examples():
    assert mixed_volume([(SQUARE, 1), (SEG_X, 1)]) == Fraction(1, 2)
    assert mixed_volume([(SEG_X, 1), (SEG_Y, 1)]) == Fraction(1, 2)
    assert mixed_volume([(SEG_X, 2)]) == 0
    assert mixed_volume([]) == 1


@pytest.mark.parametrize("K", [SQUARE, TRI])
def test_mixed_diagonal(K):
    assert mixed_volume([(K, 2)]) == volume(K)


def test_mixed_symmetric_and_multilinear():
    assert mixed_volume([(SQUARE, 1), (TRI, 1)]) == mixed_volume([(TRI, 1), (SQUARE, 1)])
    KL = minkowski_combination([1, 1], [TRI, SEG_X])
    lhs = mixed_volume([(SQUARE, 1), (KL, 1)])
    rhs = mixed_volume([(SQUARE, 1), (TRI, 1)]) + mixed_volume([(SQUARE, 1), (SEG_X, 1)])
    assert lhs == rhs


def test_volume_polynomial_square_segment():
    poly = volume_polynomial([SQUARE, SEG_X])
    assert poly == {(2, 0): 1, (1, 1): 1, (0, 2): 0}


def test_af_examples():
    assert af_defect(SQUARE, SQUARE) == 0
    assert af_defect(SQUARE, SQUARE.scaled(2)) == 0
    # V(sq, seg)^2 - V(sq, sq) V(seg, seg) = 1/4
    assert af_defect(SQUARE, SEG_X) == Fraction(1, 4)


def test_sta_multiplicities():
    assert sta_multiplicities(5, [2, 4]) == [1, 1, 1]
    assert sta_multiplicities(3, []) == [3]


@pytest.mark.parametrize("P,zs,cs", [
    (chain(3), [1], [2]),
    (antichain(3), [0], [2]),
    (antichain(3), [0], [1]),
    (chain(2), [0, 1], [1, 2]),
])
def test_sta_pol_examples(P, zs, cs):
    lhs, rhs, ok = verify_sta_pol(P, zs, cs)
    assert ok and lhs == rhs


@pytest.mark.parametrize("inst", [
    CountInstance(antichain(3), (), 0, 2),
    CountInstance(antichain(4), (), 0, 2),
    CountInstance(Poset.from_relations(4, [(1, 0)]), [(1, 1)], 0, 3),
])
def test_stanley_af_matches_counts(inst):
    m = inst.n - inst.k - 1
    assert factorial(m) ** 2 * stanley_af_defect(inst) == stanley_defect(inst)
