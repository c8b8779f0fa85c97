"""Named identity checks run by ``linext selftest``.

Each suite returns how many instances it checked and the failures it saw;
a suite that raises counts as failed.  ``quick`` uses small random samples,
``full`` widens them and adds the exhaustive n <= 6 sweep.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import contfrac, corpus, decide, gadgets, oracles, polytope, volume
from .counting import CountInstance, N, count, count_pinned, rho, stanley_defect
from .poset import delete


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    error: str = ""

    @property
    def ok(self):
        return not self.failures and not self.error

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        extra = f" error={self.error}" if self.error else ""
        if self.failures:
            extra += f" first_failure={self.failures[0]}"
        return f"{status} {self.name}: {self.checked} checked in {self.seconds:.1f}s{extra}"


def _rand_instance(rng, n, k):
    P = corpus.random_poset(n, rng.uniform(0.1, 0.6), rng=rng)
    labels = rng.sample(range(n), k + 1)
    values = rng.sample(range(1, n + 1), k + 1)
    pins = list(zip(labels[:k], values[:k]))
    return CountInstance(P, pins, labels[k], values[k])


def suite_counts(rng, size):
    r = SuiteResult("e(P), N and rho agree with enumeration")
    for _ in range(size):
        inst = _rand_instance(rng, rng.randint(1, 7), 0)
        P = inst.P
        exts = oracles.extensions(P)
        r.checked += 1
        if count(P) != len(exts):
            r.failures.append(P.relations())
        a = rng.randint(1, P.n)
        if N(inst, a) != oracles.count_pinned(P, [(inst.x, a)], exts):
            r.failures.append((P.relations(), inst.x, a))
        if not P.down[inst.x] and rho(P, inst.x) != oracles.rho(P, inst.x):
            r.failures.append(("rho", P.relations(), inst.x))
    return r


def suite_stanley(rng, size):
    r = SuiteResult("Stanley inequality N(a)^2 >= N(a-1) N(a+1)")
    for _ in range(size):
        n = rng.randint(3, 8)
        inst = _rand_instance(rng, n, rng.randint(0, 2))
        stanley_defect(inst)  # raises on a negative value
        r.checked += 1
    return r


def suite_esta1(rng, size, exhaustive):
    r = SuiteResult("one-pin vanishing battery matches brute force")
    posets = []
    if exhaustive:
        for n in range(2, 7):
            posets += corpus.unlabeled_posets(n)
    for P in posets:
        table = oracles.PinTable(P)
        n = P.n
        for z, x, c, a in product(range(n), range(n), range(1, n + 1), range(1, n + 1)):
            if z == x or c == a:
                continue
            lo, mid, hi = table.stanley(z, c, x, a)
            r.checked += 1
            if decide.esta1_decide(P, z, c, x, a).equal != (mid * mid == lo * hi):
                r.failures.append((P.relations(), z, c, x, a))
    for _ in range(size):
        inst = _rand_instance(rng, rng.randint(3, 8), 1)
        (z, c), = inst.zfixed
        got = decide.esta1_decide(inst.P, z, c, inst.x, inst.a).equal
        r.checked += 1
        if got != decide.esta_bruteforce(inst).equal:
            r.failures.append((inst.P.relations(), z, c, inst.x, inst.a))
    return r


def suite_padding(rng, size):
    r = SuiteResult("padding with pinned isolated elements preserves N")
    for _ in range(size):
        n = rng.randint(2, 6)
        inst = _rand_instance(rng, n, rng.randint(0, 1))
        padded = gadgets.pad_fixed(inst, inst.k + rng.randint(1, 2))
        r.checked += 1
        for a in range(0, n + 2):
            if N(inst, a) != N(padded, a):
                r.failures.append((inst.P.relations(), inst.zfixed, inst.x, a))
    return r


def _flat_instance(rng):
    n = rng.randint(2, 5)
    P = corpus.random_poset(n, rng.uniform(0.1, 0.6), rng=rng)
    x = rng.randrange(n)
    a = rng.randint(1, n - 1) if n > 1 else 1
    return gadgets.ensure_bounded(CountInstance(P, (), x, a))


def suite_flat(rng, size):
    r = SuiteResult("flatness gadget: M-identities and flat iff equality")
    for _ in range(size):
        inst = _flat_instance(rng)
        out = gadgets.flat_to_stanley(inst)
        m1, m2, m3 = (out.params[k] for k in ("m1", "m2", "m3"))
        Q = out.instance
        b = Q.a
        r.checked += 1
        ok = (N(Q, b) == m1 + m2 + 2 * m3 and N(Q, b + 1) == 2 * m2 + 2 * m3
              and N(Q, b - 1) == 2 * m1 + 2 * m3
              and stanley_defect(Q) == (m1 - m2) ** 2
              and (N(inst) == N(inst, inst.a + 1)) == (stanley_defect(Q) == 0))
        if not ok:
            r.failures.append((inst.P.relations(), inst.x, inst.a))
    return r


def _pointed(rng, lo=1, hi=5):
    n = rng.randint(lo, hi)
    P = corpus.random_poset(n, rng.uniform(0.1, 0.7), rng=rng)
    x = rng.choice(sorted(P.minimals()))
    return P, x


def suite_crle(rng, size):
    r = SuiteResult("relative-count gadget product identities")
    for _ in range(size):
        P, x = _pointed(rng)
        Q, y = _pointed(rng)
        out = gadgets.crle_to_flat(P, x, Q, y)
        R, z, n = out.P, out.marks["z"], P.n
        r.checked += 1
        eP, eQ = count(P), count(Q)
        ePx, eQy = count(delete(P, x)[0]), count(delete(Q, y)[0])
        if (count_pinned(R, [(z, n + 1)]) != eP * eQy
                or count_pinned(R, [(z, n)]) != ePx * eQ):
            r.failures.append((P.relations(), x, Q.relations(), y))
    return r


def suite_ks(rng, size):
    r = SuiteResult("reciprocal-plus-one and plus-one formulas")
    for _ in range(size):
        P, x = _pointed(rng)
        base = rho(P, x)
        a = gadgets.reciprocal_plus_one(P, x)
        b = gadgets.plus_one(P, x)
        r.checked += 1
        if rho(a.P, a.x) != 1 + 1 / base or rho(b.P, b.x) != 1 + base:
            r.failures.append((P.relations(), x))
    return r


def suite_mediant(rng, size):
    r = SuiteResult("mediant formula rho = m + 1/(1 + rho(Q)/rho(P))")
    for _ in range(size):
        P, x = _pointed(rng)
        Q, y = _pointed(rng)
        out = gadgets.mediant_gadget(P, x, Q, y)
        want = P.n + 1 / (1 + rho(Q, y) / rho(P, x))
        r.checked += 1
        if rho(out.P, out.x) != want:
            r.failures.append((P.relations(), x, Q.relations(), y))
    return r


def suite_quad(rng, size):
    r = SuiteResult("quad-to-relative biconditional and sizes")
    for _ in range(size):
        pairs = [_pointed(rng, 1, 4) for _ in range(4)]
        if rng.random() < 0.5:
            # force a true instance: P4 := copy of P1 and P3 := copy of P2
            pairs[3], pairs[2] = pairs[0], pairs[1]
        flat = [v for p in pairs for v in p]
        left, right = gadgets.quad_to_crle(*flat)
        (P1, x1), (P2, x2), (P3, x3), (P4, x4) = pairs
        top = max(P2.n, P3.n)
        holds = rho(P1, x1) * rho(P2, x2) == rho(P3, x3) * rho(P4, x4)
        r.checked += 1
        if (holds != (rho(left.P, left.x) == rho(right.P, right.x))
                or left.P.n != P1.n + top + 1 or right.P.n != P4.n + top + 1):
            r.failures.append([(P.relations(), x) for P, x in pairs])
    return r


def suite_cf_poset(rng, size, limit):
    r = SuiteResult("continued-fraction posets: value, size and width")
    for total in range(1, limit + 1):
        for qs in _compositions(total):
            out = gadgets.cf_poset(qs)
            r.checked += 1
            if (rho(out.P, out.x) != contfrac.cf_value(qs) or out.P.n != total
                    or out.P.width() > 2):
                r.failures.append(qs)
    return r


def _compositions(total):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def suite_cf_roundtrip(rng, size, limit):
    r = SuiteResult("continued fractions round trip and both forms give one sum")
    for p in range(0, limit + 1):
        for q in range(1, limit + 1):
            e = contfrac.cf_expand(p, q)
            r.checked += 1
            if contfrac.cf_value(e.quotients) != Fraction(p, q):
                r.failures.append((p, q))
            if contfrac.cf_value(contfrac.alternate_form(e.quotients)) != Fraction(p, q):
                r.failures.append(("alt", p, q))
            if 1 <= p <= q and contfrac.quotient_sum(p, q) != contfrac.quotient_sum_alternate(p, q):
                r.failures.append(("sum", p, q))
    return r


def suite_volume(rng, size, nmax):
    r = SuiteResult("Vol(order polytope) = Vol(chain polytope) = e(P)/n!")
    for n in range(1, nmax + 1):
        for P in corpus.unlabeled_posets(n):
            want = Fraction(count(P), math.factorial(n))
            o = volume.volume(polytope.vertices(polytope.order_polytope(P)), dim=n)
            c = volume.volume(polytope.vertices(polytope.chain_polytope(P)), dim=n)
            r.checked += 1
            if o != want or c != want:
                r.failures.append(P.relations())
    return r


def _chains_of(P, k):
    """Increasing label tuples forming chains of length k."""
    out = []

    def rec(acc):
        if len(acc) == k:
            out.append(tuple(acc))
            return
        for u in range(P.n):
            if not acc or P.less(acc[-1], u):
                rec(acc + [u])

    rec([])
    return out


def suite_tu(rng, size, nmax):
    r = SuiteResult("slice systems are totally unimodular")
    for n in range(1, nmax + 1):
        for P in corpus.unlabeled_posets(n):
            for k in (0, 1):
                for zs in _chains_of(P, k):
                    for S in polytope.slices(P, zs):
                        r.checked += 1
                        if not polytope.is_totally_unimodular(S.A, cap=6):
                            r.failures.append((P.relations(), zs))
    return r


def suite_sta_pol(rng, size, nmax):
    r = SuiteResult("mixed volume of slices equals N_{z,c}(P)/(n-k)!")
    for n in range(1, nmax + 1):
        for P in corpus.unlabeled_posets(n):
            for z in range(n):
                for c in range(1, n + 1):
                    lhs, rhs, eq = volume.verify_sta_pol(P, [z], [c])
                    r.checked += 1
                    if not eq:
                        r.failures.append((P.relations(), z, c, lhs, rhs))
    return r


def suite_af(rng, size, nmax):
    r = SuiteResult("Alexandrov-Fenchel defect matches the Stanley defect")
    for n in range(3, nmax + 1):
        for P in corpus.unlabeled_posets(n):
            for x in range(n):
                for a in range(2, n):
                    inst = CountInstance(P, (), x, a)
                    delta = volume.stanley_af_defect(inst)
                    r.checked += 1
                    scale = math.factorial(n - 1) ** 2
                    if delta * scale != stanley_defect(inst):
                        r.failures.append((P.relations(), x, a))
    return r


def suite_witness(rng, size):
    r = SuiteResult("witness instance is an equality iff rho(P, x) = A/B")
    for _ in range(size):
        P, x = _pointed(rng, 2, 5)
        true = rho(P, x)
        if rng.random() < 0.5:
            target = true
        else:
            target = Fraction(rng.randint(1, 3 * P.n), rng.randint(1, 3))
            target = min(max(target, Fraction(1)), Fraction(P.n))
        if target == 1:
            continue
        w = decide.hardness_witness(decide.VerInstance(P, x, target.numerator, target.denominator))
        r.checked += 1
        if decide.esta_bruteforce(w.instance).equal != (true == target):
            r.failures.append((P.relations(), x, str(target)))
    return r


def suite_yao_knuth(rng, size, n):
    r = SuiteResult("quotient-sum mean near (6/pi^2)(ln n)^2 and a thin tail")
    mean = float(contfrac.yao_knuth_mean(n))
    lead = contfrac.yao_knuth_leading(n)
    r.checked = n
    if abs(mean - lead) > 0.3 * lead or contfrac.tail_fraction(n) > 0.45:
        r.failures.append((n, mean, lead))
    return r


def run(level="quick", seed=0):
    full = level == "full"
    s = 10 if full else 1
    plan = [
        (suite_counts, (40 * s,)),
        (suite_stanley, (100 * s,)),
        (suite_esta1, (50 * s, full)),
        (suite_padding, (30 * s,)),
        (suite_flat, (30 * s,)),
        (suite_crle, (30 * s,)),
        (suite_ks, (30 * s,)),
        (suite_mediant, (30 * s,)),
        (suite_quad, (20 * s,)),
        (suite_cf_poset, (0, 9 if full else 6)),
        (suite_cf_roundtrip, (0, 200 if full else 40)),
        (suite_volume, (0, 5 if full else 3)),
        (suite_tu, (0, 5 if full else 3)),
        (suite_sta_pol, (0, 4 if full else 3)),
        (suite_af, (0, 5 if full else 4)),
        (suite_witness, (10 * s if full else 6,)),
        (suite_yao_knuth, (0, 10 ** 4 if full else 10 ** 3)),
    ]
    results = []
    for i, (fn, args) in enumerate(plan):
        rng = random.Random(f"{seed}:{i}")
        start = time.perf_counter()
        try:
            res = fn(rng, *args)
        except Exception as exc:  # a crash is a failed suite, not a crashed run
            res = SuiteResult(fn.__name__, error=f"{type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results
