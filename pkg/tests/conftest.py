import pytest
from hypothesis import strategies as st

from linext.poset import Poset


@st.composite
def posets(draw, min_n=0, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(range(n)))
    return Poset.from_relations(n, [(perm[i], perm[j]) for i, j in chosen])


@st.composite
def pointed_posets(draw, min_n=1, max_n=5):
    P = draw(posets(min_n, max_n))
    x = draw(st.sampled_from(sorted(P.minimals())))
    return P, x


@pytest.fixture
def vee():
    """x < y, x < z with x = 0."""
    return Poset.from_relations(3, [(0, 1), (0, 2)])
