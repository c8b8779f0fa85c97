"""Continued fractions, quotient sums, and the search for a good ``m``.

Logarithms are natural throughout.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotFound, PreconditionViolated


@dataclass(frozen=True)
class CFExpansion:
    quotients: tuple
    value: Fraction

    @property
    def qsum(self):
        """Sum of the quotients after the integer part."""
        return sum(self.quotients[1:])

    def __str__(self):
        head, *tail = self.quotients
        if not tail:
            return f"[{head}]"
        return f"[{head}; {', '.join(map(str, tail))}]"


def _check_quotients(quotients):
    if not quotients:
        raise PreconditionViolated("empty quotient list")
    if quotients[0] < 0 or any(q < 1 for q in quotients[1:]):
        raise PreconditionViolated(f"bad quotients {list(quotients)}")


def cf_value(quotients):
    """[a0; a1, ..., as] evaluated exactly."""
    quotients = [int(q) for q in quotients]
    _check_quotients(quotients)
    value = Fraction(quotients[-1])
    for q in reversed(quotients[:-1]):
        value = q + 1 / value
    return value


def normalize(quotients):
    """Canonical form: a trailing 1 is folded into the previous quotient."""
    quotients = list(quotients)
    _check_quotients(quotients)
    if len(quotients) > 1 and quotients[-1] == 1:
        quotients.pop()
        quotients[-1] += 1
    return tuple(quotients)


def cf_expand(num, den):
    """Euclid's quotients of ``num/den``, canonical form."""
    if den < 1 or num < 0:
        raise PreconditionViolated("need num >= 0 and den >= 1")
    g = math.gcd(num, den)
    p, q = num // g, den // g
    quotients = []
    while True:
        a, r = divmod(p, q)
        quotients.append(a)
        if r == 0:
            break
        p, q = q, r
    return CFExpansion(normalize(quotients), Fraction(num, den))


def alternate_form(quotients):
    """The other representation of the same rational (trailing 1 split off)."""
    quotients = list(normalize(quotients))
    if len(quotients) == 1 and quotients[0] == 0:
        return tuple(quotients)
    quotients[-1] -= 1
    quotients.append(1)
    return tuple(quotients)


def quotient_sum(m, A):
    """S_A(m): sum of a1..as where m/A = [0; a1, ..., as].

    m = A gives 1/1 = [0; 1], so S_A(A) = 1.
    """
    if not 1 <= m <= A:
        raise PreconditionViolated(f"need 1 <= m <= A, got m={m}, A={A}")
    return sum(cf_expand(m, A).quotients)


def quotient_sum_alternate(m, A):
    """S_A(m) computed on the non-canonical representation."""
    return sum(alternate_form(cf_expand(m, A).quotients))


def yao_knuth_mean(n):
    """(1/n) sum_{m=1}^{n} S_n(m), exactly."""
    if n < 2:
        raise PreconditionViolated("need n >= 2")
    return Fraction(sum(quotient_sum(m, n) for m in range(1, n + 1)), n)


def yao_knuth_leading(n):
    return 6 / math.pi ** 2 * math.log(n) ** 2


def tail_fraction(n):
    """Share of m in [n] with S_n(m) > 2 (ln n)^2."""
    bound = 2 * math.log(n) ** 2
    return sum(quotient_sum(m, n) > bound for m in range(1, n + 1)) / n


@dataclass
class GoodM:
    m: int
    A: int
    B: int
    sum_A: int
    sum_B: int
    bound_A: float
    bound_B: float
    slack: float = 1.0
    method: str = "sample"
    tried: int = 0

    def as_dict(self):
        return dict(self.__dict__)


def _is_good(m, A, B, slack):
    sa, sb = quotient_sum(m, A), quotient_sum(m, B)
    ba = 2 * math.log(A) ** 2 * slack
    bb = 2 * math.log(B) ** 2 * slack
    return sa <= ba and sb <= bb, sa, sb, ba, bb


def find_good_m(A, B, seed=0, samples=64, slack=1.5):
    """Find m in [B] with S_A(m) <= 2 ln(A)^2 and S_B(m) <= 2 ln(B)^2.

    Seeded sampling first, then an ascending scan.  When no m meets the
    bounds, the scan is repeated with both bounds multiplied by ``slack``;
    the factor used is recorded on the result.
    """
    if math.gcd(A, B) != 1 or not B < A < 2 * B:
        raise PreconditionViolated(f"need coprime B < A < 2B, got A={A}, B={B}")
    rng = random.Random(seed)
    tried = 0
    for _ in range(min(samples, B)):
        m = rng.randint(1, B)
        tried += 1
        ok, sa, sb, ba, bb = _is_good(m, A, B, 1.0)
        if ok:
            return GoodM(m, A, B, sa, sb, ba, bb, 1.0, "sample", tried)
    for factor, method in ((1.0, "scan"), (slack, "scan+slack")):
        for m in range(1, B + 1):
            tried += 1
            ok, sa, sb, ba, bb = _is_good(m, A, B, factor)
            if ok:
                # re-verify independently of the search loop
                assert quotient_sum(m, A) == sa and quotient_sum(m, B) == sb
                return GoodM(m, A, B, sa, sb, ba, bb, factor, method, tried)
    raise NotFound(f"no m in [1, {B}] meets the bounds for A={A}, B={B} even with slack {slack}")
