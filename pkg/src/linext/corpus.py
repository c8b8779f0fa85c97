"""Poset generators for tests and the command line."""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations

from .poset import Poset, bits


def random_poset(n, density=0.3, seed=0, rng=None):
    """Each pair i < j becomes a relation with probability ``density``.

    Relations only go up in label order, so the result is acyclic, and density
    1 gives the chain 0 < 1 < ... < n-1.
    """
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed) if rng is None else rng
    pairs = [(i, j) for i, j in combinations(range(n), 2) if rng.random() < density]
    return Poset.from_relations(n, pairs)


def cover_set_posets(n):
    """One poset per subset of {(i, j): i < j}; 2^(n(n-1)/2) posets, with repeats."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Poset.from_relations(n, [pairs[i] for i in bits(mask)])


def canonical_form(P):
    """Lexicographically least up-mask tuple over all relabelings (small n only)."""
    best = None
    for perm in permutations(range(P.n)):
        up = [0] * P.n
        for u in range(P.n):
            mask = 0
            for v in bits(P.up[u]):
                mask |= 1 << perm[v]
            up[perm[u]] = mask
        key = tuple(up)
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _unlabeled(n):
    if n == 0:
        return (Poset.from_relations(0, []),)
    seen = {}
    for Q in _unlabeled(n - 1):
        m = n - 1
        # put a new maximal element above each down-closed subset of Q
        for mask in range(1 << m):
            if any(Q.down[u] & ~mask for u in bits(mask)):
                continue
            pairs = Q.relations() + [(u, m) for u in bits(mask)]
            P = Poset.from_relations(n, pairs)
            key = canonical_form(P)
            if key not in seen:
                seen[key] = P
    return tuple(seen[k] for k in sorted(seen))


def unlabeled_posets(n):
    """One representative per isomorphism class: 1, 1, 2, 5, 16, 63, 318 for n = 0..6."""
    return list(_unlabeled(n))
