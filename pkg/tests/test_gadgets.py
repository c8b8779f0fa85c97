from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from linext import gadgets
from linext.contfrac import cf_value
from linext.counting import CountInstance, N, count, flat_check, rho, stanley_defect
from linext.errors import PreconditionViolated
from linext.poset import Poset, antichain, chain, delete

from conftest import pointed_posets, posets


def _minimal_pointed(max_n=5):
    return pointed_posets(max_n=max_n).filter(lambda Px: not Px[0].down[Px[1]])


def test_pad_keeps_counts():
    inst = CountInstance(Poset.from_relations(3, [(0, 1)]), [(2, 1)], 0, 2)
    padded = gadgets.pad_fixed(inst, 3)
    assert padded.k == 3 and padded.n == 5
    for b in range(1, 4):
        assert N(padded, b) == N(inst, b)
    assert gadgets.pad_fixed(inst, 1) is inst
    with pytest.raises(PreconditionViolated):
        gadgets.pad_fixed(inst, 0)


def test_ensure_bounded():
    inst = CountInstance(antichain(3), (), 0, 2)
    b = gadgets.ensure_bounded(inst)
    assert b.n == 5 and gadgets.is_bounded(b.P) and (b.x, b.a) == (1, 3)
    assert [N(b, v + 1) for v in range(1, 4)] == [N(inst, v) for v in range(1, 4)]
    # already bounded with x interior: unchanged
    inst2 = CountInstance(Poset.from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]), (), 1, 2)
    assert gadgets.ensure_bounded(inst2) is inst2
    # x at the bottom forces a new bottom
    inst3 = CountInstance(chain(3), (), 0, 1)
    assert gadgets.ensure_bounded(inst3).n == 5


@settings(max_examples=60, deadline=None)
@given(posets(min_n=2, max_n=5), st.data())
def test_flat_to_stanley_contract(P, data):
    x = data.draw(st.integers(0, P.n - 1))
    a = data.draw(st.integers(1, P.n - 1))
    inst = gadgets.ensure_bounded(CountInstance(P, (), x, a))
    out = gadgets.flat_to_stanley(inst)
    sta = out.instance
    assert out.P.n == inst.n + 3 and sta.k == inst.k + 2
    assert (stanley_defect(sta) == 0) == flat_check(inst)
    m1, m2, m3 = gadgets.flat_diagnostics(inst)
    assert min(m1, m2, m3) >= 0


def test_flat_to_stanley_needs_bounded():
    with pytest.raises(PreconditionViolated):
        gadgets.flat_to_stanley(CountInstance(antichain(3), (), 0, 1))


@settings(max_examples=60, deadline=None)
@given(_minimal_pointed(), _minimal_pointed())
def test_crle_to_flat_identity(Px, Qy):
    (P, x), (Q, y) = Px, Qy
    out = gadgets.crle_to_flat(P, x, Q, y)
    inst = out.instance
    n = P.n
    assert N(inst, n + 1) == count(P) * count(delete(Q, y)[0])
    assert N(inst, n) == count(delete(P, x)[0]) * count(Q)
    assert (N(inst, n) == N(inst, n + 1)) == (rho(P, x) == rho(Q, y))


def test_crle_two_antichains():
    out = gadgets.crle_to_flat(antichain(2), 0, antichain(2), 0)
    inst = out.instance
    assert N(inst, 2) == N(inst, 3) == 2


@settings(max_examples=60, deadline=None)
@given(_minimal_pointed(4), _minimal_pointed(4))
def test_mediant(Px, Qy):
    (P, x), (Q, y) = Px, Qy
    out = gadgets.mediant_gadget(P, x, Q, y)
    expect = P.n + 1 / (1 + rho(Q, y) / rho(P, x))
    assert rho(out.P, out.x) == expect


def test_mediant_example():
    out = gadgets.mediant_gadget(antichain(2), 0, antichain(2), 0)
    assert rho(out.P, out.x) == Fraction(5, 2)
    out = gadgets.mediant_gadget(antichain(3), 0, chain(2), 0)
    assert rho(out.P, out.x) == 3 + Fraction(1, 1 + Fraction(1, 3))


def test_recip_and_plus():
    r = gadgets.reciprocal_plus_one(antichain(2), 0)
    assert rho(r.P, r.x) == Fraction(3, 2)
    r = gadgets.reciprocal_plus_one(chain(2), 0)
    assert rho(r.P, r.x) == 2
    p = gadgets.plus_one(antichain(2), 0)
    assert rho(p.P, p.x) == 3
    p = gadgets.plus_one(chain(2), 0)
    assert rho(p.P, p.x) == 2
    assert rho(*[gadgets.plus_many(chain(1), 0, 4).P, 0]) == 5


def test_gadget_rejects_non_minimal():
    with pytest.raises(PreconditionViolated):
        gadgets.plus_one(chain(2), 1)
    with pytest.raises(PreconditionViolated):
        gadgets.crle_to_flat(chain(2), 1, chain(1), 0)


@pytest.mark.parametrize("qs", [[3], [2, 3], [1, 1, 2], [1, 4, 2], [5, 1, 1, 3]])
def test_cf_poset(qs):
    out = gadgets.cf_poset(qs)
    assert out.P.n == sum(qs)
    assert rho(out.P, out.x) == cf_value(qs)
    assert out.P.width() <= 2


def test_cf_poset_value_example():
    out = gadgets.cf_poset([2, 3])
    assert rho(out.P, out.x) == Fraction(7, 3)
    rec = gadgets.cf_poset_reciprocal([2, 3])
    assert 1 / rho(rec.P, rec.x) == cf_value([0, 2, 3])
    with pytest.raises(PreconditionViolated):
        gadgets.cf_poset([0, 2])


def test_quad_to_crle_sizes_and_contract():
    pairs = [(antichain(2), 0), (chain(1), 0), (antichain(3), 0), (chain(2), 0)]
    left, right = gadgets.quad_to_crle(*[v for p in pairs for v in p])
    r = [rho(P, x) for P, x in pairs]
    assert (rho(left.P, left.x) == rho(right.P, right.x)) == (r[0] * r[1] == r[2] * r[3])
    top = max(pairs[1][0].n, pairs[2][0].n)
    assert left.P.n == pairs[0][0].n + top + 1
    assert right.P.n == pairs[3][0].n + top + 1


def test_quad_to_crle_true_case():
    # 2 * 3 = 3 * 2
    pairs = [(antichain(2), 0), (antichain(3), 0), (antichain(3), 0), (antichain(2), 0)]
    left, right = gadgets.quad_to_crle(*[v for p in pairs for v in p])
    assert rho(left.P, left.x) == rho(right.P, right.x)


def test_record_and_marks():
    out = gadgets.plus_one(chain(2), 0)
    rec = out.record()
    assert rec["gadget"] == "plus_one" and rec["size"] == 3
    with pytest.raises(ValueError):
        gadgets.GadgetOutput(chain(2), {"x": 5}, {}, "bad")
    with pytest.raises(ValueError):
        gadgets.GadgetOutput(chain(2), {"x": 0}, {}, "")
