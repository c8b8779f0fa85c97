"""Order polytopes, chain polytopes and their slices as exact constraint systems."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import config
from .errors import CapExceeded, PreconditionViolated
from .poset import bits


@dataclass(frozen=True)
class ConstraintSystem:
    """``A x <= b`` over ``vars`` coordinates; pinned coordinates in ``fixed``.

    Pinned columns are zero in ``A``: their constants are already moved into ``b``.
    """

    A: tuple
    b: tuple
    vars: int
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.A) != len(self.b):
            raise ValueError("A and b disagree on the number of rows")
        for row in self.A:
            if len(row) != self.vars:
                raise ValueError("row length differs from vars")
            for j in self.fixed:
                if row[j]:
                    raise ValueError(f"pinned coordinate {j} has a nonzero column")

    @property
    def free(self):
        return [j for j in range(self.vars) if j not in self.fixed]

    def contains(self, point):
        if any(point[j] != v for j, v in self.fixed.items()):
            return False
        return all(sum(a * p for a, p in zip(row, point)) <= bi
                   for row, bi in zip(self.A, self.b))

    def to_json(self):
        return {"A": [list(r) for r in self.A], "b": list(self.b), "vars": self.vars,
                "fixed": {str(k): v for k, v in sorted(self.fixed.items())}}

    @classmethod
    def from_json(cls, data):
        A = tuple(tuple(int(a) for a in row) for row in data["A"])
        vars_ = int(data.get("vars", len(A[0]) if A else 0))
        fixed = {int(k): int(v) for k, v in data.get("fixed", {}).items()}
        return cls(A, tuple(int(b) for b in data["b"]), vars_, fixed)


def _unit(n, j, s=1):
    row = [0] * n
    row[j] = s
    return row


def order_polytope(P):
    """0 <= a_x <= 1 and a_u <= a_v for every cover u < v."""
    n = P.n
    rows, rhs = [], []
    for j in range(n):
        rows.append(_unit(n, j, -1))
        rhs.append(0)
        rows.append(_unit(n, j, 1))
        rhs.append(1)
    for u, v in P.covers():
        row = [0] * n
        row[u], row[v] = 1, -1
        rows.append(row)
        rhs.append(0)
    return ConstraintSystem(tuple(map(tuple, rows)), tuple(rhs), n)


def maximal_chains(P):
    out = []
    covers_up = [[] for _ in range(P.n)]
    for u, v in P.covers():
        covers_up[u].append(v)

    def walk(u, acc):
        acc.append(u)
        if not covers_up[u]:
            out.append(tuple(acc))
        for v in covers_up[u]:
            walk(v, acc)
        acc.pop()

    for u in sorted(P.minimals()):
        walk(u, [])
    return out


def chain_polytope(P):
    """b_x >= 0 and one row sum(b over C) <= 1 per maximal chain C."""
    n = P.n
    rows = [_unit(n, j, -1) for j in range(n)]
    rhs = [0] * n
    for ch in maximal_chains(P):
        row = [0] * n
        for u in ch:
            row[u] = 1
        rows.append(row)
        rhs.append(1)
    return ConstraintSystem(tuple(map(tuple, rows)), tuple(rhs), n)


def pin(system, fixed):
    """Substitute constants for coordinates; rows left with no variable are dropped."""
    fixed = {**system.fixed, **fixed}
    rows, rhs = [], []
    for row, bi in zip(system.A, system.b):
        shift = sum(row[j] * v for j, v in fixed.items())
        new = tuple(0 if j in fixed else a for j, a in enumerate(row))
        if any(new):
            rows.append(new)
            rhs.append(bi - shift)
        elif shift > bi:
            raise PreconditionViolated("pinning makes the system infeasible")
    return ConstraintSystem(tuple(rows), tuple(rhs), system.vars, fixed)


def slices(P, zs):
    """S_0..S_k: the order polytope with a_x = 0 for x <= z_i and a_x = 1 for x >= z_{i+1}."""
    zs = list(zs)
    for lo, hi in zip(zs, zs[1:]):
        if not P.less(lo, hi):
            raise PreconditionViolated(f"fixed elements {zs} are not an increasing chain")
    base = order_polytope(P)
    out = []
    k = len(zs)
    for i in range(k + 1):
        fixed = {}
        if i >= 1:
            z = zs[i - 1]
            for u in bits(P.down[z]) + [z]:
                fixed[u] = 0
        if i < k:
            z = zs[i]
            for u in bits(P.up[z]) + [z]:
                fixed[u] = 1
        out.append(pin(base, fixed))
    return out


# -- total unimodularity -------------------------------------------------------------------


def bareiss_det(M):
    """Exact integer determinant by fraction-free elimination."""
    M = [list(r) for r in M]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def reduce_for_tu(A):
    """Drop rows and columns whose removal cannot change total unimodularity.

    Zero rows, rows with a single nonzero (once that entry is +-1), repeated
    rows and negated rows, and zero columns.
    """
    kept, seen = [], set()
    for row in A:
        nz = [a for a in row if a]
        if len(nz) <= 1:
            continue
        key = tuple(row)
        neg = tuple(-a for a in row)
        if key in seen or neg in seen:
            continue
        seen.add(key)
        kept.append(key)
    if not kept:
        return []
    cols = [j for j in range(len(kept[0])) if any(r[j] for r in kept)]
    return [tuple(r[j] for j in cols) for r in kept]


def is_totally_unimodular(A, cap=None, reduce=True):
    """Every square minor has determinant in {0, 1, -1}.

    Brute force over all minors; ``min(rows, cols)`` after reduction must not
    exceed ``cap``.
    """
    cap = config.CAPS.minor if cap is None else cap
    A = [tuple(r) for r in A]
    if any(a not in (-1, 0, 1) for r in A for a in r):
        return False
    if reduce:
        A = reduce_for_tu(A)
    if not A:
        return True
    m, n = len(A), len(A[0])
    size = min(m, n)
    if size > cap:
        raise CapExceeded(f"{m}x{n} matrix has minors of order {size} > cap {cap}; raise --cap-minor")
    for k in range(2, size + 1):
        for rows in combinations(range(m), k):
            sub = [A[i] for i in rows]
            for cols in combinations(range(n), k):
                if bareiss_det([[r[j] for j in cols] for r in sub]) not in (-1, 0, 1):
                    return False
    return True


# -- vertices -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexPolytope:
    """Convex hull of exact rational points in ``ambient`` coordinates."""

    vertices: tuple
    ambient: int

    def __post_init__(self):
        pts = sorted(set(tuple(Fraction(c) for c in p) for p in self.vertices))
        if not pts:
            raise ValueError("empty vertex list")
        if any(len(p) != self.ambient for p in pts):
            raise ValueError("vertex of wrong dimension")
        object.__setattr__(self, "vertices", tuple(pts))

    @property
    def fixedmask(self):
        """Coordinates on which every vertex agrees."""
        first = self.vertices[0]
        return frozenset(j for j in range(self.ambient)
                         if all(p[j] == first[j] for p in self.vertices))

    @property
    def free(self):
        mask = self.fixedmask
        return [j for j in range(self.ambient) if j not in mask]

    def scaled(self, lam):
        lam = Fraction(lam)
        return VertexPolytope(tuple(tuple(lam * c for c in p) for p in self.vertices), self.ambient)

    def to_json(self):
        return {"ambient": self.ambient,
                "vertices": [[str(c) for c in p] for p in self.vertices]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(tuple(Fraction(c) for c in p) for p in data["vertices"]),
                   int(data["ambient"]))


def vertices(system, cap=None):
    """0/1 feasible points of a system carved out of the unit cube.

    For order-polytope-type systems these are exactly the vertices.
    """
    cap = config.CAPS.free_vars if cap is None else cap
    free = system.free
    if len(free) > cap:
        raise CapExceeded(f"{len(free)} free coordinates exceed --cap-free-vars {cap}")
    n = system.vars
    point = [0] * n
    for j, v in system.fixed.items():
        point[j] = v
    order = {j: i for i, j in enumerate(free)}
    # a row can be checked once its last free coordinate is assigned
    due = [[] for _ in free]
    for row, bi in zip(system.A, system.b):
        idx = [order[j] for j, a in enumerate(row) if a]
        if idx:
            due[max(idx)].append((row, bi))
    out = []

    def rec(i):
        if i == len(free):
            out.append(tuple(point))
            return
        j = free[i]
        for val in (0, 1):
            point[j] = val
            if all(sum(a * p for a, p in zip(row, point)) <= bi for row, bi in due[i]):
                rec(i + 1)
        point[j] = 0

    rec(0)
    if not out:
        raise PreconditionViolated("system has no 0/1 point")
    return VertexPolytope(tuple(out), n)


def _solve(M, rhs):
    """Exact solution of a square system, or None if singular."""
    n = len(M)
    aug = [[Fraction(a) for a in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col] / aug[col][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def vertices_bruteforce(system):
    """Vertices as feasible intersections of |free| tight rows (oracle, tiny n only)."""
    free = system.free
    d = len(free)
    bounds = [(tuple(row[j] for j in free), bi) for row, bi in zip(system.A, system.b)]
    # the cube bounds are implied by the slice construction but may have been dropped
    for i in range(d):
        e = [0] * d
        e[i] = 1
        bounds.append((tuple(e), 1))
        e = [0] * d
        e[i] = -1
        bounds.append((tuple(e), 0))
    found = set()
    for rows in combinations(bounds, d):
        sol = _solve([r for r, _ in rows], [b for _, b in rows])
        if sol is None:
            continue
        if all(sum(a * s for a, s in zip(r, sol)) <= b for r, b in bounds):
            pt = [Fraction(0)] * system.vars
            for j, v in system.fixed.items():
                pt[j] = Fraction(v)
            for j, s in zip(free, sol):
                pt[j] = s
            found.add(tuple(pt))
    if d == 0:
        pt = [Fraction(0)] * system.vars
        for j, v in system.fixed.items():
            pt[j] = Fraction(v)
        found.add(tuple(pt))
    return VertexPolytope(tuple(found), system.vars)


def order_filters(P):
    """Up-closed subsets of P, as bitmasks (oracle for the vertices of O_P)."""
    return [mask for mask in range(1 << P.n)
            if all(P.up[u] & ~mask == 0 for u in bits(mask))]
