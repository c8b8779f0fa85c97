import pytest

from linext import config
from linext.config import Caps
from linext.corpus import canonical_form, random_poset, unlabeled_posets
from linext.poset import Poset, relabel


def test_random_poset_extremes():
    assert random_poset(5, density=0).is_antichain()
    assert random_poset(5, density=1).is_chain()
    with pytest.raises(ValueError):
        random_poset(3, density=1.5)


def test_random_poset_seeded():
    assert random_poset(7, seed=4).relations() == random_poset(7, seed=4).relations()


def test_unlabeled_counts():
    assert [len(unlabeled_posets(n)) for n in range(6)] == [1, 1, 2, 5, 16, 63]


def test_canonical_form_invariant():
    P = Poset.from_relations(3, [(0, 1)])
    assert canonical_form(P) == canonical_form(relabel(P, [2, 0, 1]))


def test_caps_from_env():
    caps = Caps.from_env({"LINEXT_CAP_N": "80", "LINEXT_CAP_DIM": "4"})
    assert caps.n == 80 and caps.dim == 4 and caps.enum == Caps().enum


def test_set_caps_validates():
    saved = config.CAPS.n
    try:
        with pytest.raises(ValueError):
            config.set_caps(n=0)
        with pytest.raises(KeyError):
            config.set_caps(bogus=3)
    finally:
        config.CAPS.n = saved
