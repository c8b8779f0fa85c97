from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from linext.counting import CountInstance, rho, stanley_defect
from linext.decide import (
    EqualityVerdict,
    QuadInstance,
    VerInstance,
    choose_m,
    esta0_decide,
    esta1_decide,
    esta_bruteforce,
    evaluate_quad,
    hardness_witness,
    verrle_decide,
    verrle_to_quad,
)
from linext.errors import DegenerateRatio, InternalContradiction, PreconditionViolated
from linext.gadgets import cf_poset
from linext.poset import Poset, antichain, chain

from conftest import posets


def test_bruteforce_examples(vee):
    assert esta_bruteforce(CountInstance(antichain(3), (), 0, 2)).equal
    v = esta_bruteforce(CountInstance(vee, (), 0, 1))
    assert not v.equal and v.defect == 4 and v.counts == (0, 2, 0)


def test_verdict_invariants():
    with pytest.raises(InternalContradiction):
        EqualityVerdict(True, (1, 2, 1), 3, "x")
    with pytest.raises(InternalContradiction):
        EqualityVerdict(True, (1, 2, 1), 4, "x")
    assert EqualityVerdict(True, (1, 1, 1), 0, "x").as_dict()["equal"]


def test_esta1_examples():
    v = esta1_decide(antichain(4), 1, 1, 0, 3)
    assert v.equal and v.note == "battery"
    v = esta1_decide(chain(3), 0, 1, 2, 2)
    assert v.equal and v.note == "N(a) = 0"
    v = esta1_decide(chain(3), 0, 1, 1, 2)
    assert not v.equal and v.note == "zero neighbour"


def test_esta1_rejects_bad_input():
    with pytest.raises(PreconditionViolated):
        esta1_decide(antichain(3), 0, 1, 0, 2)
    with pytest.raises(PreconditionViolated):
        esta1_decide(antichain(3), 1, 2, 0, 2)


@settings(max_examples=150, deadline=None)
@given(posets(min_n=2, max_n=6), st.data())
def test_esta1_matches_bruteforce(P, data):
    z, x = data.draw(st.lists(st.integers(0, P.n - 1), min_size=2, max_size=2, unique=True))
    c, a = data.draw(st.lists(st.integers(1, P.n), min_size=2, max_size=2, unique=True))
    v = esta1_decide(P, z, c, x, a)
    assert v.equal == esta_bruteforce(CountInstance(P, [(z, c)], x, a)).equal


@settings(max_examples=80, deadline=None)
@given(posets(min_n=1, max_n=6), st.data())
def test_esta0_matches_bruteforce(P, data):
    x = data.draw(st.integers(0, P.n - 1))
    a = data.draw(st.integers(1, P.n))
    assert esta0_decide(P, x, a).equal == (stanley_defect(CountInstance(P, (), x, a)) == 0)


def test_ver_instance_validation():
    with pytest.raises(PreconditionViolated):
        VerInstance(chain(2), 1, 1, 1)
    with pytest.raises(PreconditionViolated):
        VerInstance(antichain(2), 0, 4, 2)
    assert VerInstance(antichain(2), 0, 2, 1).target == 2


@pytest.mark.parametrize("qs,A,B", [([2, 3], 7, 3), ([4], 4, 1), ([1, 2, 2], 7, 5)])
def test_verrle_targets(qs, A, B):
    out = cf_poset(qs)
    inst = VerInstance(out.P, out.x, A, B)
    assert verrle_decide(inst)
    other = VerInstance(out.P, out.x, A + 1, B) if (A + 1) % B else VerInstance(out.P, out.x, A + 2, B)
    assert not verrle_decide(other)


def test_verrle_edge_cases():
    assert verrle_decide(VerInstance(antichain(3), 0, 3, 1))
    assert verrle_decide(VerInstance(chain(3), 0, 1, 1))
    assert not verrle_decide(VerInstance(antichain(3), 0, 1, 1))
    assert not verrle_decide(VerInstance(antichain(2), 0, 5, 1))
    with pytest.raises(DegenerateRatio):
        verrle_to_quad(VerInstance(antichain(2), 0, 5, 1))


def test_quad_shape_and_transcript():
    out = cf_poset([2, 3])
    q, transcript = verrle_to_quad(VerInstance(out.P, out.x, 7, 3))
    assert evaluate_quad(q)
    (P3, x3) = q.pairs[2]
    assert rho(P3, x3) == 2
    steps = [t["step"] for t in transcript]
    assert steps == ["split", "choose_m", "P3", "P2", "P4"]
    q2, t2 = verrle_to_quad(VerInstance(out.P, out.x, 7, 3))
    assert t2 == transcript


def test_quad_requires_minimal():
    with pytest.raises(PreconditionViolated):
        QuadInstance(((chain(2), 1), (chain(1), 0), (chain(1), 0), (chain(1), 0)))
    with pytest.raises(ValueError):
        QuadInstance(((chain(1), 0),))


def test_choose_m():
    assert choose_m(5, 5)[0] == 1
    m, info = choose_m(7, 5, "compact")
    assert 1 <= m <= 5 and info["method"] == "compact"
    m2, info2 = choose_m(7, 5, "ntd")
    assert 1 <= m2 <= 5
    assert info["sum_A"] + info["sum_B"] <= info2["sum_A"] + info2["sum_B"]
    with pytest.raises(ValueError):
        choose_m(7, 5, "other")


@pytest.mark.parametrize("P,x,A,B,expect", [
    (antichain(2), 0, 2, 1, True),
    (antichain(2), 0, 3, 2, False),
    (Poset.from_relations(3, [(1, 2)]), 0, 3, 1, True),
    (Poset.from_relations(3, [(1, 2)]), 1, 3, 2, True),
    (Poset.from_relations(3, [(1, 2)]), 1, 2, 1, False),
])
def test_witness(P, x, A, B, expect):
    inst = VerInstance(P, x, A, B)
    w = hardness_witness(inst)
    assert w.instance.k == 2 and w.instance.n == w.size_bound
    assert esta_bruteforce(w.instance).equal == expect == (rho(P, x) == Fraction(A, B))


def test_witness_deterministic_and_ntd():
    inst = VerInstance(antichain(3), 0, 3, 1)
    assert hardness_witness(inst).transcript == hardness_witness(inst).transcript
    w = hardness_witness(VerInstance(Poset.from_relations(3, [(1, 2)]), 1, 3, 2), strategy="ntd")
    assert esta_bruteforce(w.instance).equal
