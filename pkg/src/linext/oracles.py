"""Slow, obviously correct reference computations by full enumeration."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import permutations

from .poset import delete


def extensions(P):
    """Position vectors f (0-based labels, 1-based values) of all linear extensions.

    Plain backtracking: place any element whose predecessors are all placed.
    """
    n = P.n
    preds = [{u for u, w in P.relations() if w == v} for v in range(n)]
    pos = [0] * n
    out = []

    def rec(placed, step):
        if step > n:
            out.append(tuple(pos))
            return
        for v in range(n):
            if v not in placed and preds[v] <= placed:
                pos[v] = step
                placed.add(v)
                rec(placed, step + 1)
                placed.discard(v)

    rec(set(), 1)
    return out


def extensions_by_permutation(P):
    """The same list by filtering all n! permutations (tiny n only)."""
    rels = P.relations()
    out = []
    for order in permutations(range(P.n)):
        pos = [0] * P.n
        for i, u in enumerate(order):
            pos[u] = i + 1
        if all(pos[u] < pos[v] for u, v in rels):
            out.append(tuple(pos))
    return sorted(out)


def count(P):
    return len(extensions(P))


def count_pinned(P, pins, exts=None):
    exts = extensions(P) if exts is None else exts
    return sum(all(f[u] == p for u, p in pins) for f in exts)


def rho(P, x):
    return Fraction(count(P), count(delete(P, x)[0]))


class PinTable:
    """All one- and two-element pinned counts of a poset, from one enumeration."""

    def __init__(self, P):
        self.P = P
        self.exts = extensions(P)
        self.single = Counter()
        self.double = Counter()
        n = P.n
        for f in self.exts:
            for u in range(n):
                self.single[u, f[u]] += 1
                for v in range(n):
                    if v != u:
                        self.double[u, f[u], v, f[v]] += 1

    @property
    def total(self):
        return len(self.exts)

    def N(self, z, c, x, a):
        """N_{z,c}(P, x, a) with out-of-range values counted as zero."""
        return self.double.get((z, c, x, a), 0)

    def stanley(self, z, c, x, a):
        return self.N(z, c, x, a - 1), self.N(z, c, x, a), self.N(z, c, x, a + 1)
