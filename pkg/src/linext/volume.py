"""Exact volumes and mixed volumes of small rational polytopes.

Volumes use the pyramid decomposition over facets,

    Vol_d(K) = 1/d * sum_F dist(c, F) * Vol_{d-1}(F),

with ``c`` the centroid of the points.  Writing the facet as ``n.x = b`` and
projecting it along a coordinate ``j`` with ``n_j != 0`` turns every term into
``(b - n.c) / |n_j| * Vol_{d-1}(proj F)``, so the norms cancel and everything
stays rational.  Qhull proposes candidate facets; each one is rebuilt and
checked exactly before it is used, and a brute-force subset search takes over
whenever Qhull fails.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from . import config
from .counting import count_pinned
from .errors import (
    CapExceeded,
    DegenerateInput,
    DimensionMismatch,
    InternalContradiction,
    PreconditionViolated,
    SingularInterpolation,
)
from .polytope import VertexPolytope, slices, vertices


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _dot(p, q):
    return sum(a * b for a, b in zip(p, q))


def affine_rank(points):
    """Dimension of the affine hull of exact points."""
    if not points:
        return -1
    pts = _to_int(points)[0]
    base = pts[0]
    rows = [list(_sub(p, base)) for p in pts[1:]]
    rank = 0
    for col in range(len(base)):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        top = rows[rank]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            if f:
                # fraction-free elimination keeps the rows integral
                rows[r] = [top[col] * x - f * y for x, y in zip(rows[r], top)]
        rank += 1
    return rank


def _to_int(points):
    """Scale rational points to integer points; returns (points, common denominator)."""
    den = 1
    for p in points:
        for c in p:
            if isinstance(c, Fraction):
                den = math.lcm(den, c.denominator)
    if den == 1:
        return [tuple(int(c) for c in p) for p in points], 1
    return [tuple(int(c * den) for c in p) for p in points], den


def _hyperplane(points):
    """Normal n (primitive, integer) and offset b with n.p = b for the given d points in R^d."""
    d = len(points[0])
    base = points[0]
    rows = [[Fraction(c) for c in _sub(p, base)] for p in points[1:]]
    # reduced row echelon form of the (d-1) x d system
    pivots = []
    r = 0
    for col in range(d):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if r != d - 1:
        return None
    free = next(c for c in range(d) if c not in pivots)
    normal = [Fraction(0)] * d
    normal[free] = Fraction(1)
    for i, col in enumerate(pivots):
        normal[col] = -rows[i][free]
    den = math.lcm(*(c.denominator for c in normal))
    ints = [int(c * den) for c in normal]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    return tuple(ints), _dot(ints, base)


def _orient(normal, offset, points):
    """Flip to n.p <= b for all points; None if the plane is not supporting."""
    vals = [_dot(normal, p) for p in points]
    if all(v <= offset for v in vals):
        return normal, offset
    if all(v >= offset for v in vals):
        return tuple(-c for c in normal), -offset
    return None


def _facets_bruteforce(points, d):
    found = {}
    for subset in combinations(points, d):
        hp = _hyperplane(list(subset))
        if hp is None:
            continue
        hp = _orient(*hp, points)
        if hp is None or hp in found:
            continue
        on = [p for p in points if _dot(hp[0], p) == hp[1]]
        if affine_rank(on) == d - 1:
            found[hp] = on
    return found


def _facets_qhull(points, d):
    arr = np.array([[float(c) for c in p] for p in points])
    hull = ConvexHull(arr)
    scale = max(1.0, float(np.abs(arr).max()))
    found = {}
    for eq in hull.equations:
        dist = arr @ eq[:-1] + eq[-1]
        near = [points[i] for i in np.flatnonzero(np.abs(dist) <= 1e-9 * scale)]
        hp = None
        # rebuild the plane exactly from an affinely independent subset
        for subset in _independent_subsets(near, d):
            hp = _hyperplane(subset)
            if hp is not None:
                break
        if hp is None:
            raise DegenerateInput("could not rebuild a facet exactly")
        hp = _orient(*hp, points)
        if hp is None:
            raise DegenerateInput("qhull facet is not supporting in exact arithmetic")
        if hp in found:
            continue
        on = [p for p in points if _dot(hp[0], p) == hp[1]]
        if affine_rank(on) != d - 1:
            raise DegenerateInput("qhull facet is not a facet in exact arithmetic")
        found[hp] = on
    return found


def _independent_subsets(pts, d):
    """Greedy choice of d affinely independent points, then a fallback sweep."""
    chosen = [pts[0]]
    for p in pts[1:]:
        if len(chosen) == d:
            break
        if affine_rank(chosen + [p]) == len(chosen):
            chosen.append(p)
    if len(chosen) == d:
        yield chosen
    yield from (list(s) for s in combinations(pts, d))


def _hull_2d(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _area_2d(points):
    hull = _hull_2d(points)
    if len(hull) < 3:
        return Fraction(0)
    s = sum(hull[i][0] * hull[i - 1][1] - hull[i - 1][0] * hull[i][1]
            for i in range(len(hull)))
    return Fraction(abs(s), 2)


def full_volume(points, d, bruteforce=False):
    """d-volume of the hull of points in Q^d; 0 if they are not full-dimensional."""
    pts, den = _to_int([tuple(Fraction(c) for c in p) for p in points])
    return _int_volume(sorted(set(pts)), d, bruteforce) / Fraction(den) ** d


def _int_volume(points, d, bruteforce):
    if d == 0:
        return Fraction(1)
    if affine_rank(points) < d:
        return Fraction(0)
    if d == 1:
        return Fraction(max(p[0] for p in points) - min(p[0] for p in points))
    if d == 2 and not bruteforce:
        return _area_2d(points)
    if bruteforce:
        facets = _facets_bruteforce(points, d)
    else:
        try:
            facets = _facets_qhull(points, d)
        except (QhullError, DegenerateInput):
            facets = _facets_bruteforce(points, d)
    # heights are measured from the centroid sum(points) / len(points)
    total_pt = [sum(p[j] for p in points) for j in range(d)]
    size = len(points)
    total = Fraction(0)
    for (normal, offset), on in facets.items():
        j = max(range(d), key=lambda i: abs(normal[i]))
        height = Fraction(offset * size - _dot(normal, total_pt), size * abs(normal[j]))
        proj = sorted({p[:j] + p[j + 1:] for p in on})
        total += height * _int_volume(proj, d - 1, bruteforce)
    return total / d


def volume(V, dim=None, strict=False, bruteforce=False):
    """Volume of ``V`` inside the coordinate subspace of its non-constant coordinates.

    ``dim`` asks for the ``dim``-volume: a body with fewer free coordinates
    (or lower affine dimension) gets 0, unless ``strict`` is set, in which
    case such input raises DegenerateInput.
    """
    free = V.free
    d = len(free) if dim is None else dim
    if d > config.CAPS.dim:
        raise CapExceeded(f"dimension {d} exceeds --cap-dim {config.CAPS.dim}")
    if len(free) > d:
        raise DimensionMismatch(
            f"body moves in {len(free)} coordinates; its {d}-volume is not axis-aligned")
    pts = [tuple(p[j] for j in free) for p in V.vertices]
    if len(free) < d:
        if strict:
            raise DegenerateInput(f"body has {len(free)} free coordinates, asked for {d}")
        return Fraction(0)
    if strict and affine_rank(pts) < d:
        raise DegenerateInput(f"points span fewer than {d} dimensions")
    return full_volume(pts, d, bruteforce)


def minkowski_combination(weights, polys):
    """sum_i w_i K_i as all sums of one vertex per summand."""
    polys = list(polys)
    weights = [Fraction(w) for w in weights]
    if len(weights) != len(polys) or not polys:
        raise DimensionMismatch("need one weight per polytope")
    amb = polys[0].ambient
    if any(P.ambient != amb for P in polys):
        raise DimensionMismatch("summands live in different ambient dimensions")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    pts = {tuple([Fraction(0)] * amb)}
    for w, P in zip(weights, polys):
        pts = {tuple(a + w * b for a, b in zip(p, q)) for p in pts for q in P.vertices}
        pts = _prune(pts)
    return VertexPolytope(tuple(pts), amb)


def _prune(pts):
    """Drop points that are certainly not vertices, keeping the hull intact."""
    pts = list(pts)
    if len(pts) < 8:
        return pts
    first = pts[0]
    free = [j for j in range(len(first)) if any(p[j] != first[j] for p in pts)]
    d = len(free)
    if d < 2:
        if d == 0:
            return pts[:1]
        j = free[0]
        return [min(pts, key=lambda p: p[j]), max(pts, key=lambda p: p[j])]
    arr = np.array([[float(p[j]) for j in free] for p in pts])
    try:
        hull = ConvexHull(arr)
    except QhullError:
        return pts
    # keep every point lying on some facet plane, which includes all vertices
    scale = max(1.0, float(np.abs(arr).max()))
    dist = arr @ hull.equations[:, :-1].T + hull.equations[:, -1]
    keep = np.flatnonzero((np.abs(dist) <= 1e-7 * scale).any(axis=1))
    return [pts[i] for i in keep]


# -- mixed volumes -------------------------------------------------------------------


def _multinomial(exps):
    out = math.factorial(sum(exps))
    for e in exps:
        out //= math.factorial(e)
    return out


def _interpolate_1d(xs, ys):
    """Coefficients c_0..c_m of the polynomial through (xs, ys), exactly."""
    m = len(xs)
    rows = [[Fraction(x) ** k for k in range(m)] for x in xs]
    aug = [row + [Fraction(y)] for row, y in zip(rows, ys)]
    for col in range(m):
        piv = next(r for r in range(col, m) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(m):
            if r != col and aug[r][col]:
                f = aug[r][col] / aug[col][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][m] / aug[i][i] for i in range(m)]


def _free_union(bodies):
    coords = set()
    for K in bodies:
        coords.update(K.free)
    return sorted(coords)


def volume_polynomial(bodies, d=None):
    """Coefficients of Vol_d(l_1 K_1 + ... + l_r K_r) keyed by exponent tuples.

    Homogeneity lets l_1 = 1; the remaining weights run over {1..d+1}^(r-1)
    and the tensor interpolation is solved exactly.
    """
    bodies = list(bodies)
    r = len(bodies)
    if r > 3:
        raise CapExceeded(f"{r} distinct bodies; at most 3 are supported")
    free = _free_union(bodies)
    d = len(free) if d is None else d
    if d > config.CAPS.mixed_dim:
        raise CapExceeded(f"mixed volume in dimension {d} exceeds cap {config.CAPS.mixed_dim}")
    if len(free) > d:
        raise DimensionMismatch(f"bodies move in {len(free)} coordinates but d = {d}")
    grid = list(range(1, d + 2))
    values = {}
    for lam in product(grid, repeat=r - 1):
        weights = (1,) + lam
        S = minkowski_combination(weights, bodies)
        values[lam] = volume(S, dim=d) if len(free) == d else Fraction(0)
    # successive 1-d interpolation along each remaining weight
    table = {k: v for k, v in values.items()}
    for axis in range(r - 1):
        new = {}
        others = {k[:axis] + k[axis + 1:] for k in table}
        for rest in others:
            keys = [rest[:axis] + (g,) + rest[axis:] for g in grid]
            coeffs = _interpolate_1d(grid, [table[k] for k in keys])
            for e, c in enumerate(coeffs):
                new[rest[:axis] + (e,) + rest[axis:]] = c
        table = new
    poly = {}
    for exps, c in table.items():
        if sum(exps) > d:
            if c != 0:
                raise SingularInterpolation(f"nonzero coefficient beyond degree {d}: {exps}")
            continue
        poly[(d - sum(exps),) + exps] = c
    return poly


def _merge(entries):
    """Distinct bodies with summed multiplicities, in first-seen order."""
    bodies, mults = [], []
    for K, m in entries:
        m = int(m)
        if m < 0:
            raise ValueError("multiplicities must be nonnegative")
        if m == 0:
            continue
        if K in bodies:
            mults[bodies.index(K)] += m
        else:
            bodies.append(K)
            mults.append(m)
    return bodies, tuple(mults)


def _coefficient(poly, exps):
    return poly.get(exps, Fraction(0)) / _multinomial(exps)


def mixed_volume(entries):
    """V(K_1^{m_1}, ..., K_r^{m_r}) for ``entries`` = [(K_i, m_i)], normalized so V(K,...,K) = Vol(K).

    Repeated bodies are merged, so at most three distinct ones may appear.
    """
    bodies, exps = _merge(entries)
    if not bodies:
        return Fraction(1)
    poly = volume_polynomial(bodies, sum(exps))
    return _coefficient(poly, exps)


def af_defect(K, L, Qs=()):
    """V(K,L,Q..)^2 - V(K,K,Q..) V(L,L,Q..); negative values are a bug.

    ``Qs`` is a list of (body, multiplicity); a body may coincide with K or L.
    """
    bodies, _ = _merge([(K, 1), (L, 1)] + list(Qs))
    rest = {}
    for Q, m in Qs:
        if int(m) > 0:
            i = bodies.index(Q)
            rest[i] = rest.get(i, 0) + int(m)
    d = 2 + sum(rest.values())
    poly = volume_polynomial(bodies, d)
    ik, il = bodies.index(K), bodies.index(L)

    def V(bk, bl):
        exps = [0] * len(bodies)
        for i, m in rest.items():
            exps[i] += m
        exps[ik] += bk
        exps[il] += bl
        return _coefficient(poly, tuple(exps))

    delta = V(1, 1) ** 2 - V(2, 0) * V(0, 2)
    if delta < 0:
        raise InternalContradiction(f"Alexandrov-Fenchel defect {delta} < 0")
    return delta


# -- slices and the counting side ----------------------------------------------------


def slice_polytopes(P, zs):
    return [vertices(S) for S in slices(P, zs)]


def sta_multiplicities(n, cs):
    """(c_1 - 1, c_2 - c_1 - 1, ..., n - c_k)."""
    cs = list(cs)
    if cs != sorted(cs) or len(set(cs)) != len(cs):
        raise PreconditionViolated(f"values {cs} must be strictly increasing")
    bounds = [0] + cs + [n + 1]
    return [hi - lo - 1 for lo, hi in zip(bounds, bounds[1:])]


def verify_sta_pol(P, zs, cs):
    """(lhs, rhs, equal) for V(S_0^{c_1-1}, ..., S_k^{n-c_k}) = N_{z,c}(P) / (n-k)!."""
    zs, cs = list(zs), list(cs)
    if len(zs) != len(cs):
        raise PreconditionViolated("need one value per fixed element")
    mults = sta_multiplicities(P.n, cs)
    S = slice_polytopes(P, zs)
    lhs = mixed_volume(list(zip(S, mults)))
    rhs = Fraction(count_pinned(P, list(zip(zs, cs))), math.factorial(P.n - len(zs)))
    return lhs, rhs, lhs == rhs


def stanley_af_defect(inst):
    """delta on the two slices next to x, for an instance whose z's and x form a chain.

    With m = n - k - 1 this satisfies m!^2 * delta = N(a)^2 - N(a+1) N(a-1).
    Requires a - 1 and a + 1 to be free values, so both slices carry x's neighbours.
    """
    P, x, a = inst.P, inst.x, inst.a
    pins = sorted(list(inst.zfixed) + [(x, a)], key=lambda t: t[1])
    zs = [z for z, _ in pins]
    cs = [c for _, c in pins]
    j = zs.index(x)
    mults = sta_multiplicities(P.n, cs)
    if mults[j] < 1 or mults[j + 1] < 1:
        raise PreconditionViolated("a - 1 and a + 1 must be free values")
    S = slice_polytopes(P, zs)
    rest = list(zip(S, mults))
    rest[j] = (S[j], mults[j] - 1)
    rest[j + 1] = (S[j + 1], mults[j + 1] - 1)
    return af_defect(S[j], S[j + 1], rest)
