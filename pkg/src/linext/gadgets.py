"""Poset transformers whose contracts are exact counting identities.

Every constructor returns a fresh poset together with the labels of the
elements it designates (``marks``), so compositions never depend on where a
previous gadget happened to put things.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .counting import CountInstance, count_pinned
from .errors import PreconditionViolated
from .poset import Poset, antichain, chain, disjoint_sum


@dataclass(frozen=True)
class GadgetOutput:
    P: Poset
    marks: dict
    params: dict = field(default_factory=dict)
    provenance: str = ""
    instance: CountInstance | None = None

    def __post_init__(self):
        if not self.provenance:
            raise ValueError("provenance must be nonempty")
        for role, u in self.marks.items():
            if not 0 <= u < self.P.n:
                raise ValueError(f"mark {role}={u} is not a label of the poset")

    @property
    def x(self):
        return self.marks["x"]

    def record(self):
        """Plain-data summary used in transcripts."""
        return {
            "gadget": self.provenance,
            "size": self.P.n,
            "marks": dict(self.marks),
            "params": {k: (str(v) if not isinstance(v, (int, str, list)) else v)
                       for k, v in self.params.items()},
        }


def _require_minimal(P, x, what="x"):
    P._check(x)
    if P.down[x]:
        raise PreconditionViolated(f"{what}={x} is not a minimal element")


def _embed(P, skip, offset):
    """Labels of ``P`` minus ``skip`` packed from ``offset`` upward."""
    mapping = {}
    for u in range(P.n):
        if u != skip:
            mapping[u] = offset + len(mapping)
    return mapping


# -- padding and bounding ----------------------------------------------------------


def pad_fixed(inst, k):
    """Add ``k - k'`` isolated elements pinned at n+1, n+2, ...; every N is preserved."""
    extra = k - inst.k
    if extra < 0:
        raise PreconditionViolated(f"cannot pad {inst.k} fixed elements down to {k}")
    if extra == 0:
        return inst
    n = inst.n
    P = disjoint_sum(inst.P, antichain(extra))
    pins = list(inst.zfixed) + [(n + i, n + i + 1) for i in range(extra)]
    return CountInstance(P, pins, inst.x, inst.a)


def is_bounded(P):
    return len(P.minimals()) == 1 and len(P.maximals()) == 1 and P.n >= 2


def ensure_bounded(inst):
    """Adjoin a global bottom and top; all values shift up by one.

    The new extremes are forced to positions 1 and n+2, so they are not added
    to the pinned list and every N value is preserved.  An instance whose
    poset already has a unique minimum and maximum, neither equal to x, is
    returned unchanged.
    """
    P = inst.P
    if is_bounded(P):
        (lo,), (hi,) = P.minimals(), P.maximals()
        if inst.x not in (lo, hi):
            return inst
    n = P.n
    pairs = [(u + 1, v + 1) for u, v in P.relations()]
    pairs += [(0, u + 1) for u in range(n)] + [(u + 1, n + 1) for u in range(n)]
    pairs.append((0, n + 1))
    Q = Poset.from_relations(n + 2, pairs)
    pins = [(z + 1, c + 1) for z, c in inst.zfixed]
    return CountInstance(Q, pins, inst.x + 1, inst.a + 1)


# -- flatness to Stanley equality ------------------------------------------------------


def flat_diagnostics(inst):
    """(M1, M2, M3) for a flatness instance at values a and a+1.

    M1: x at a with an element above x at a+1.
    M2: x at a+1 with an element below x at a.
    M3: x at a with an element incomparable to x at a+1.
    """
    P, x, a = inst.P, inst.x, inst.a
    zs = {z for z, _ in inst.zfixed}
    base = list(inst.zfixed)
    m1 = m2 = m3 = 0
    for y in range(P.n):
        if y == x or y in zs:
            continue
        if P.less(x, y):
            m1 += count_pinned(P, base + [(x, a), (y, a + 1)])
        elif P.less(y, x):
            m2 += count_pinned(P, base + [(x, a + 1), (y, a)])
        else:
            m3 += count_pinned(P, base + [(x, a), (y, a + 1)])
    return m1, m2, m3


def flat_to_stanley(inst):
    """Stanley instance with k+2 pins that is an equality iff ``inst`` is flat.

    ``inst`` must come out of :func:`ensure_bounded`.  The new poset is
    ``P + C_3`` with chain u < v < w; u is pinned at a, w at a+4, x is asked
    at b = a+2, and fixed values above a shift up by three.
    """
    P = inst.P
    a = inst.a
    if not is_bounded(P):
        raise PreconditionViolated("instance must be bounded; run ensure_bounded first")
    cs = [c for _, c in inst.zfixed]
    if a in cs or a + 1 in cs:
        raise PreconditionViolated(f"a={a} or a+1 is a fixed value")
    if not 1 <= a or a + 1 > P.n:
        raise PreconditionViolated(f"need 1 <= a < n, got a={a}, n={P.n}")
    n = P.n
    u, v, w = n, n + 1, n + 2
    Q = disjoint_sum(P, chain(3))
    ell = sum(1 for c in cs if c < a)
    pins = list(inst.zfixed[:ell]) + [(u, a), (w, a + 4)]
    pins += [(z, c + 3) for z, c in inst.zfixed[ell:]]
    out = CountInstance(Q, pins, inst.x, a + 2)
    m1, m2, m3 = flat_diagnostics(inst)
    return GadgetOutput(
        Q,
        {"x": inst.x, "u": u, "v": v, "w": w},
        {"b": a + 2, "ell": ell, "m1": m1, "m2": m2, "m3": m3},
        "flat_to_stanley",
        out,
    )


# -- relative numbers of linear extensions ----------------------------------------------


def crle_to_flat(P, x, Q, y):
    """Poset R with N(R,z,n+1) = e(P) e(Q-y) and N(R,z,n) = e(P-x) e(Q), n = |P|.

    R is (P* - x) (+) {z} (+) (Q - y) with an extra element w that copies x
    below z and y above z.
    """
    _require_minimal(P, x)
    _require_minimal(Q, y, "y")
    n, m = P.n, Q.n
    pmap = _embed(P, x, 0)
    qmap = _embed(Q, y, n - 1)
    w, z = n + m - 2, n + m - 1
    pairs = [(pmap[v], pmap[u]) for u, v in P.relations() if u != x]  # dual order
    pairs += [(qmap[u], qmap[v]) for u, v in Q.relations() if u != y]
    pairs += [(p, z) for p in pmap.values()] + [(z, q) for q in qmap.values()]
    pairs += [(pmap[p], w) for p in range(P.n) if P.less(x, p)]
    pairs += [(w, qmap[q]) for q in range(Q.n) if Q.less(y, q)]
    R = Poset.from_relations(n + m, pairs)
    return GadgetOutput(
        R,
        {"z": z, "w": w},
        {"c": n},
        "crle_to_flat",
        CountInstance(R, (), z, n),
    )


def mediant_gadget(P, x, Q, y):
    """Poset R, minimal z with rho(R,z) = m + 1/(1 + rho(Q,y)/rho(P,x)), m = |P|."""
    _require_minimal(P, x)
    _require_minimal(Q, y, "y")
    m, nq = P.n, Q.n
    pmap = _embed(P, x, 0)
    qmap = _embed(Q, y, m - 1)
    v, w, z = m + nq - 2, m + nq - 1, m + nq
    pairs = [(pmap[b], pmap[a]) for a, b in P.relations() if a != x]
    pairs += [(qmap[a], qmap[b]) for a, b in Q.relations() if a != y]
    pairs += [(p, v) for p in pmap.values()] + [(v, q) for q in qmap.values()]
    pairs += [(pmap[p], w) for p in range(P.n) if P.less(x, p)]
    pairs += [(w, qmap[q]) for q in range(Q.n) if Q.less(y, q)]
    pairs += [(z, q) for q in qmap.values()] + [(z, v)]
    R = Poset.from_relations(m + nq + 1, pairs)
    return GadgetOutput(R, {"x": z, "z": z, "v": v, "w": w}, {"m": m}, "mediant_gadget")


def _ks_poset(P, x):
    """P plus a new minimal z lying below everything except x."""
    _require_minimal(P, x)
    z = P.n
    pairs = P.relations() + [(z, u) for u in range(P.n) if u != x]
    return Poset.from_relations(P.n + 1, pairs), z


def reciprocal_plus_one(P, x):
    """(Q, y) with rho(Q, y) = 1 + 1/rho(P, x)."""
    Q, z = _ks_poset(P, x)
    return GadgetOutput(Q, {"x": z, "y": z, "old_x": x}, {}, "reciprocal_plus_one")


def plus_one(P, x):
    """(Q, x) with rho(Q, x) = 1 + rho(P, x); same Q as reciprocal_plus_one."""
    Q, z = _ks_poset(P, x)
    return GadgetOutput(Q, {"x": x, "y": x, "z": z}, {}, "plus_one")


def plus_many(P, x, times):
    out = GadgetOutput(P, {"x": x}, {}, "identity")
    for _ in range(times):
        out = plus_one(out.P, out.x)
    return out


def quad_to_crle(P1, x1, P2, x2, P3, x3, P4, x4):
    """Two (poset, minimal element) pairs with equal rho iff rho1 rho2 = rho3 rho4.

    rho(P, x) = N + 1/(1 + rho1/rho3) and rho(Q, y) = N + 1/(1 + rho4/rho2) with
    N = max(|P2|, |P3|); the side built on the smaller of P2, P3 is lifted to N
    by repeated plus_one.
    """
    for i, (P, x) in enumerate(((P1, x1), (P2, x2), (P3, x3), (P4, x4)), 1):
        _require_minimal(P, x, f"x{i}")
    n2, n3 = P2.n, P3.n
    left = mediant_gadget(P3, x3, P1, x1)
    right = mediant_gadget(P2, x2, P4, x4)
    left = plus_many(left.P, left.x, max(0, n2 - n3))
    right = plus_many(right.P, right.x, max(0, n3 - n2))
    params = {"n": [P1.n, n2, n3, P4.n], "lift_left": max(0, n2 - n3),
              "lift_right": max(0, n3 - n2)}
    return (
        GadgetOutput(left.P, {"x": left.x}, params, "quad_to_crle:P"),
        GadgetOutput(right.P, {"x": right.x}, params, "quad_to_crle:Q"),
    )


# -- continued-fraction posets -------------------------------------------------------------


def cf_poset(quotients):
    """Width-two poset with rho(P, x) = [a0; a1, ..., as] on sum(a_i) elements."""
    quotients = [int(q) for q in quotients]
    if not quotients or any(q < 1 for q in quotients):
        raise PreconditionViolated(f"cf_poset needs quotients >= 1, got {quotients}")
    last = quotients[-1]
    # C_{last-1} + {x}: x is the element after the chain
    P = disjoint_sum(chain(last - 1), chain(1))
    x = last - 1
    for a in reversed(quotients[:-1]):
        step = reciprocal_plus_one(P, x)
        P, x = step.P, step.x
        for _ in range(a - 1):
            step = plus_one(P, x)
            P, x = step.P, step.x
    return GadgetOutput(P, {"x": x}, {"quotients": quotients}, "cf_poset")


def cf_poset_reciprocal(quotients):
    """Poset with 1/rho(P, x) = [0; a1, ..., as]."""
    out = cf_poset(quotients)
    return GadgetOutput(out.P, out.marks, {"quotients": [0] + list(quotients)},
                        "cf_poset_reciprocal")
