"""Immutable finite posets on dense integer labels.

The strict order is stored as its transitive closure, one bitmask per element:
bit ``v`` of ``up[u]`` is set iff ``u < v``.  Python integers serve as
arbitrary-width bitsets, so nothing here depends on a 64-bit word.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from . import config
from .errors import CapExceeded, CycleDetected, LabelOutOfRange


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask):
    """Labels whose bit is set in ``mask``, ascending."""
    return list(_bits(mask))


@dataclass(frozen=True)
class Poset:
    n: int
    up: tuple
    down: tuple
    names: tuple | None = field(default=None, compare=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_relations(cls, n, pairs, names=None, cap=None):
        """Build from any generating set of relations ``u < v``."""
        cap = config.CAPS.n if cap is None else cap
        if n < 0:
            raise ValueError("n must be nonnegative")
        if n > cap:
            raise CapExceeded(f"poset of size {n} exceeds --cap-n {cap}")
        succ = [0] * n
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise LabelOutOfRange(f"relation ({u}, {v}) outside 0..{n - 1}")
            succ[u] |= 1 << v
        # Warshall on bitsets
        for k in range(n):
            kbit = 1 << k
            reach = succ[k]
            for u in range(n):
                if succ[u] & kbit:
                    succ[u] |= reach
        for u in range(n):
            if succ[u] >> u & 1:
                raise CycleDetected(f"element {u} lies on a cycle")
        pred = [0] * n
        for u in range(n):
            for v in _bits(succ[u]):
                pred[v] |= 1 << u
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != n:
                raise ValueError("names must have one entry per element")
        return cls(n, tuple(succ), tuple(pred), names)

    @classmethod
    def from_matrix(cls, rel):
        n = len(rel)
        return cls.from_relations(n, [(u, v) for u in range(n) for v in range(n) if rel[u][v]])

    # -- queries --------------------------------------------------------------

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.covers()})"

    def _check(self, *labels):
        for u in labels:
            if not 0 <= u < self.n:
                raise LabelOutOfRange(f"label {u} outside 0..{self.n - 1}")

    def less(self, u, v):
        return bool(self.up[u] >> v & 1)

    def comparable(self, u, v):
        return self.less(u, v) or self.less(v, u)

    def incomparable(self, u, v):
        return u != v and not self.comparable(u, v)

    @property
    def rel(self):
        """The closure as a list of boolean rows."""
        return [[bool(self.up[u] >> v & 1) for v in range(self.n)] for u in range(self.n)]

    def relations(self):
        return [(u, v) for u in range(self.n) for v in _bits(self.up[u])]

    def covers(self):
        out = []
        for u in range(self.n):
            for v in _bits(self.up[u]):
                if not self.up[u] & self.down[v]:
                    out.append((u, v))
        return out

    def name(self, u):
        return self.names[u] if self.names else str(u)

    def minimals(self):
        return {u for u in range(self.n) if not self.down[u]}

    def maximals(self):
        return {u for u in range(self.n) if not self.up[u]}

    def comparable_set(self, x):
        self._check(x)
        return set(_bits(self.up[x] | self.down[x]))

    def topological_order(self):
        # sorting by number of predecessors is a valid linear extension
        return sorted(range(self.n), key=lambda u: (bin(self.down[u]).count("1"), u))

    def height(self):
        longest = [0] * self.n
        for u in self.topological_order():
            longest[u] = 1 + max((longest[w] for w in _bits(self.down[u])), default=0)
        return max(longest, default=0)

    def width(self):
        """Size of a largest antichain, via Dilworth and bipartite matching."""
        if self.n == 0:
            return 0
        g = nx.Graph()
        left = [("L", u) for u in range(self.n)]
        g.add_nodes_from(left)
        g.add_nodes_from(("R", u) for u in range(self.n))
        g.add_edges_from((("L", u), ("R", v)) for u, v in self.relations())
        matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=left)
        return self.n - len(matching) // 2

    def is_chain(self):
        return all(self.comparable(u, v) for u, v in combinations(range(self.n), 2))

    def is_antichain(self):
        return not any(self.up)

    def validate(self):
        """Assert irreflexivity, antisymmetry and transitive closure."""
        for u in range(self.n):
            assert not self.up[u] >> u & 1, f"reflexive at {u}"
            for v in _bits(self.up[u]):
                assert not self.up[v] >> u & 1, f"symmetric pair {u},{v}"
                assert self.up[v] & ~self.up[u] == 0, f"not closed at {u}<{v}"
                assert self.down[v] >> u & 1
        return True


# -- constructors -----------------------------------------------------------


def chain(n):
    return Poset.from_relations(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n):
    return Poset.from_relations(n, [])


def from_cover_relations(n, covers, names=None):
    return Poset.from_relations(n, covers, names=names)


def dual(P):
    return Poset(P.n, P.down, P.up, P.names)


def disjoint_sum(P, Q):
    """``P + Q`` with the elements of ``Q`` shifted by ``len(P)``."""
    off = P.n
    pairs = P.relations() + [(u + off, v + off) for u, v in Q.relations()]
    return Poset.from_relations(P.n + Q.n, pairs)


def linear_sum(P, Q):
    """``P (+) Q``: everything in ``P`` below everything in ``Q``."""
    off = P.n
    pairs = P.relations() + [(u + off, v + off) for u, v in Q.relations()]
    pairs += [(u, v + off) for u in range(P.n) for v in range(Q.n)]
    return Poset.from_relations(P.n + Q.n, pairs)


def subposet(P, Y):
    """Induced subposet on ``Y``; returns ``(Q, index)`` with ``index[old] = new``."""
    Y = sorted(set(Y))
    P._check(*Y)
    index = {u: i for i, u in enumerate(Y)}
    pairs = [(index[u], index[v]) for u, v in P.relations() if u in index and v in index]
    names = [P.names[u] for u in Y] if P.names else None
    return Poset.from_relations(len(Y), pairs, names=names), index


def delete(P, z):
    P._check(z)
    return subposet(P, [u for u in range(P.n) if u != z])


def relabel(P, perm):
    """Image of ``P`` under the label permutation ``u -> perm[u]``."""
    return Poset.from_relations(P.n, [(perm[u], perm[v]) for u, v in P.relations()])


def max_antichain_bruteforce(P):
    """Exponential maximum-antichain search; an oracle for ``width``."""
    best = 0
    for mask in range(1 << P.n):
        members = bits(mask)
        if len(members) <= best:
            continue
        if all(not (P.up[u] & mask) for u in members):
            best = len(members)
    return best
