"""Exact counting of (constrained) linear extensions.

Counts are computed by dynamic programming over the lattice of order ideals
(downsets): a linear extension is a maximal chain of ideals, and pinning an
element ``u`` to position ``p`` just restricts which covering step may be
taken from an ideal of size ``p - 1``.  The lattice of a poset is built once
and cached, so the many pinned counts asked about one poset share it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import config
from .errors import (
    CapExceeded,
    InternalContradiction,
    LabelOutOfRange,
    PreconditionViolated,
)
from .poset import Poset, delete


@dataclass(frozen=True)
class CountInstance:
    """Arguments of N_{z,c}(P, x, a): pins ``z_i -> c_i`` plus ``x -> a``."""

    P: Poset
    zfixed: tuple = ()
    x: int = 0
    a: int = 1

    def __post_init__(self):
        pins = sorted(((int(z), int(c)) for z, c in self.zfixed), key=lambda t: t[1])
        object.__setattr__(self, "zfixed", tuple(pins))
        n = self.P.n
        zs = [z for z, _ in self.zfixed]
        cs = [c for _, c in self.zfixed]
        for u in zs + [self.x]:
            if not 0 <= u < n:
                raise LabelOutOfRange(f"label {u} outside 0..{n - 1}")
        if len(set(zs)) != len(zs) or self.x in zs:
            raise PreconditionViolated("fixed elements and x must be distinct")
        if len(set(cs)) != len(cs) or self.a in cs:
            raise PreconditionViolated("fixed values and a must be distinct")
        if any(not 1 <= c <= n for c in cs):
            raise PreconditionViolated("fixed values must lie in [n]")

    @property
    def k(self):
        return len(self.zfixed)

    @property
    def n(self):
        return self.P.n

    def at(self, a):
        """Same instance with x moved to value ``a`` (no range check on ``a``)."""
        inst = object.__new__(CountInstance)
        object.__setattr__(inst, "P", self.P)
        object.__setattr__(inst, "zfixed", self.zfixed)
        object.__setattr__(inst, "x", self.x)
        object.__setattr__(inst, "a", a)
        return inst

    def pins(self, drop_x=False):
        out = list(self.zfixed)
        if not drop_x:
            out.append((self.x, self.a))
        return out


@dataclass(frozen=True)
class LinearExtension:
    """A linear extension, stored as the elements listed by position."""

    order: tuple

    @property
    def f(self):
        pos = [0] * len(self.order)
        for i, u in enumerate(self.order):
            pos[u] = i + 1
        return tuple(pos)

    def __call__(self, u):
        return self.order.index(u) + 1

    def at(self, position):
        return self.order[position - 1]

    def is_valid(self, P):
        pos = self.f
        return all(pos[u] < pos[v] for u, v in P.relations())


# -- ideal lattice --------------------------------------------------------------


class IdealLattice:
    """Order ideals of a poset, grouped by size, with covering transitions."""

    def __init__(self, P, budget=None):
        budget = config.CAPS.ideals if budget is None else budget
        self.P = P
        n = P.n
        down = P.down
        index = {0: 0}
        masks = [0]
        trans = []
        layers = [[0]]
        for s in range(n):
            nxt = []
            for i in layers[s]:
                mask = masks[i]
                out = []
                for u in range(n):
                    if not mask >> u & 1 and down[u] & ~mask == 0:
                        j_mask = mask | 1 << u
                        j = index.get(j_mask)
                        if j is None:
                            j = len(masks)
                            index[j_mask] = j
                            masks.append(j_mask)
                            nxt.append(j)
                            if len(masks) > budget:
                                raise CapExceeded(
                                    f"more than {budget} order ideals; raise --cap-ideals"
                                )
                        out.append((u, j))
                trans.append(out)  # ideals are visited in index order
            layers.append(nxt)
        trans.append([])  # the full ideal
        self.masks = masks
        self.trans = trans
        self.layers = layers

    def __len__(self):
        return len(self.masks)

    def count(self, pins=()):
        """Number of linear extensions honouring ``pins`` = [(element, position)]."""
        n = self.P.n
        at_pos = {}
        el_pos = {}
        for u, p in pins:
            if not 1 <= p <= n:
                return 0
            if at_pos.setdefault(p, u) != u or el_pos.setdefault(u, p) != p:
                return 0
        pinned = set(el_pos)
        ways = {0: 1}
        trans = self.trans
        for s in range(n):
            req = at_pos.get(s + 1)
            nxt = {}
            for i, c in ways.items():
                for u, j in trans[i]:
                    if req is None:
                        if u in pinned:
                            continue
                    elif u != req:
                        continue
                    nxt[j] = nxt.get(j, 0) + c
            ways = nxt
            if not ways:
                return 0
        return sum(ways.values())


@lru_cache(maxsize=512)
def ideal_lattice(P):
    return IdealLattice(P)


# -- public operations ----------------------------------------------------------


def enumerate_extensions(P, cap=None):
    """Yield every linear extension once, lexicographically by element order."""
    cap = config.CAPS.enum if cap is None else cap
    if P.n > cap:
        raise CapExceeded(f"enumeration of a {P.n}-element poset exceeds cap {cap}")
    n = P.n
    down = P.down
    prefix = []

    def rec(mask):
        if len(prefix) == n:
            yield LinearExtension(tuple(prefix))
            return
        for u in range(n):
            if not mask >> u & 1 and down[u] & ~mask == 0:
                prefix.append(u)
                yield from rec(mask | 1 << u)
                prefix.pop()

    yield from rec(0)


def count(P):
    """e(P)."""
    return ideal_lattice(P).count()


def count_pinned(P, pins):
    """Linear extensions with every ``(element, position)`` in ``pins`` honoured."""
    return ideal_lattice(P).count(pins)


def count_fixed(inst, drop_x=False):
    """N_{z,c}(P, x, a), or N_{z,c}(P) when ``drop_x`` is set."""
    return count_pinned(inst.P, inst.pins(drop_x))


def N(inst, a=None):
    """N_{z,c}(P, x, a) with out-of-range ``a`` counted as 0."""
    if a is None:
        a = inst.a
    if not 1 <= a <= inst.n:
        return 0
    return count_pinned(inst.P, list(inst.zfixed) + [(inst.x, a)])


def distribution(inst):
    """[N(1), ..., N(n)] for the instance's pins and element x."""
    return [N(inst, a) for a in range(1, inst.n + 1)]


def rho(P, x):
    """e(P) / e(P - x) as an exact fraction."""
    P._check(x)
    return Fraction(count(P), count(delete(P, x)[0]))


def stanley_counts(inst):
    return N(inst, inst.a - 1), N(inst, inst.a), N(inst, inst.a + 1)


def stanley_defect(inst):
    """N(a)^2 - N(a+1) N(a-1); never negative by Stanley's inequality."""
    lo, mid, hi = stanley_counts(inst)
    phi = mid * mid - lo * hi
    if phi < 0:
        raise InternalContradiction(
            f"negative Stanley defect {phi} for counts {(lo, mid, hi)}"
        )
    return phi


def flat_check(inst):
    return N(inst, inst.a) == N(inst, inst.a + 1)


def interval_filter(P, pins):
    """Sound necessary conditions for a nonzero pinned count.

    Returns True when the pins are provably unsatisfiable.  A False answer
    proves nothing.
    """
    n = P.n
    seen_pos = {}
    seen_el = {}
    for u, p in pins:
        if not 1 <= p <= n:
            return True
        if seen_pos.setdefault(p, u) != u or seen_el.setdefault(u, p) != p:
            return True
    items = sorted(seen_el.items(), key=lambda t: t[1])
    for u, p in items:
        below = bin(P.down[u]).count("1")
        above = bin(P.up[u]).count("1")
        if below + 1 > p or above + 1 > n - p + 1:
            return True
    for i, (u, p) in enumerate(items):
        for v, q in items[i + 1:]:
            if P.less(v, u):
                return True
            if P.less(u, v):
                between = bin(P.up[u] & P.down[v]).count("1")
                if between > q - p - 1:
                    return True
    return False


def is_vanishing_pins(P, pins, use_filter=True):
    pins = list(pins)
    if use_filter and interval_filter(P, pins):
        return True
    return count_pinned(P, pins) == 0


def is_vanishing(inst, use_filter=True):
    """True iff N_{z,c}(P, x, a) = 0; the filter only ever short-circuits to True."""
    return is_vanishing_pins(inst.P, inst.pins(), use_filter)


def companions(f, x, b):
    """(lower, upper) companion of ``x`` in ``f`` around value ``b``."""
    n = len(f.order)
    pos = f.f
    if pos[x] not in (b - 1, b, b + 1):
        raise PreconditionViolated(f"f(x) = {pos[x]} is not within one of {b}")
    if b - 1 < 1 or b + 1 > n:
        raise PreconditionViolated(f"window {b - 1}..{b + 1} leaves [1, {n}]")
    others = [f.at(p) for p in (b - 1, b, b + 1) if f.at(p) != x]
    return others[0], others[1]
