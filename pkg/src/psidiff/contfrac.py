"""Continued fractions of rationals and quadratic surds.

Conventions fixed throughout the package: q_{-1} = 0, q_0 = 1, partial
quotients a_j >= 1 for j >= 1, and canonical rational expansions end with a
quotient >= 2 unless the expansion is a single integer. Surd expansions are
produced by the (P, Q) state recursion, whose first repeated state yields the
preperiod and the minimal period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import islice
from typing import Iterator, Sequence

from .errors import RationalInputError
from .exact import QuadExt, squarefree_decompose


@dataclass(frozen=True)
class CFExpansion:
    """Continued fraction [a0; preperiod..., (period...)].

    An empty period means the value is rational; a nonempty period repeats
    forever, so the value is a quadratic irrational.
    """

    a0: int
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        for a in (*self.preperiod, *self.period):
            if a < 1:
                raise ValueError("partial quotients after a0 must be >= 1")
        if not self.period and len(self.preperiod) >= 1 and self.preperiod[-1] < 2:
            raise ValueError("canonical rational expansion must end with a quotient >= 2")

    @property
    def is_rational(self) -> bool:
        return not self.period

    def partial_quotient(self, j: int) -> int:
        """a_j for any j >= 0, unrolling the period."""
        if j < 0:
            raise IndexError("quotient index must be >= 0")
        if j == 0:
            return self.a0
        k = len(self.preperiod)
        if j <= k:
            return self.preperiod[j - 1]
        if not self.period:
            raise IndexError(f"rational expansion has no quotient a_{j}")
        return self.period[(j - k - 1) % len(self.period)]

    def quotients(self) -> Iterator[int]:
        """All partial quotients, an infinite stream for irrational values."""
        yield self.a0
        yield from self.preperiod
        while self.period:
            yield from self.period

    def value(self) -> QuadExt | Fraction:
        """Exact value: a Fraction when rational, a QuadExt otherwise."""
        p_prev, q_prev = 1, 0
        p, q = self.a0, 1
        for a in self.preperiod:
            p, p_prev = a * p + p_prev, p
            q, q_prev = a * q + q_prev, q
        if self.is_rational:
            return Fraction(p, q)
        omega = _period_tail(self, 0)
        return (p * omega + p_prev) / (q * omega + q_prev)

    def __str__(self) -> str:
        parts = [",".join(map(str, self.preperiod))] if self.preperiod else []
        if self.period:
            parts.append("(" + ",".join(map(str, self.period)) + ")")
        if not parts:
            return f"[{self.a0}]"
        return f"[{self.a0};{','.join(parts)}]"


@dataclass(frozen=True)
class Convergent:
    index: int
    p: int
    q: int


def rational_to_cf(num: int, den: int) -> CFExpansion:
    """Canonical finite expansion of num/den (last quotient >= 2 unless length 1)."""
    if den < 1:
        raise ValueError("denominator must be positive")
    g = math.gcd(num, den)
    num, den = num // g, den // g
    quotients = []
    while den:
        a, rem = divmod(num, den)
        quotients.append(a)
        num, den = den, rem
    if len(quotients) > 1 and quotients[-1] == 1:
        quotients.pop()
        quotients[-1] += 1
    return CFExpansion(quotients[0], tuple(quotients[1:]))


def expand_quadratic(x: QuadExt) -> CFExpansion:
    """Eventually periodic expansion of an irrational quadratic element.

    Writes x = (P + sqrt(N))/Q with Q | N - P^2 and runs the integer surd
    recursion; the expansion is read off when a (P, Q) state repeats.
    """
    if x.is_rational:
        raise RationalInputError("expansion of a rational via expand_quadratic")
    scale = math.lcm(x.a.denominator, x.b.denominator)
    A = int(x.a * scale)
    B = int(x.b * scale)
    N = B * B * x.D
    if B > 0:
        P, Q = A, scale
    else:
        P, Q = -A, -scale
    if (N - P * P) % Q:
        P *= abs(Q)
        N *= Q * Q
        Q *= abs(Q)
    s = math.isqrt(N)
    quotients: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    i = 0
    while True:
        if Q > 0:
            a = (P + s) // Q
        else:
            a = -((P + s) // -Q) - 1
        quotients.append(a)
        P = a * Q - P
        Q = (N - P * P) // Q
        i += 1
        state = (P, Q)
        if state in seen:
            j = seen[state]
            break
        seen[state] = i
    return CFExpansion(quotients[0], tuple(quotients[1:j]), tuple(quotients[j:i]))


def convergent_stream(cf: CFExpansion) -> Iterator[Convergent]:
    p_prev, q_prev = 1, 0
    p, q = cf.a0, 1
    index = 0
    yield Convergent(0, p, q)
    quotients = cf.quotients()
    next(quotients)
    for a in quotients:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        index += 1
        yield Convergent(index, p, q)


def convergents(cf: CFExpansion, n: int) -> list[Convergent]:
    """Convergents 0..n; a rational expansion stops at its last index."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return list(islice(convergent_stream(cf), n + 1))


def denominators_up_to(cf: CFExpansion, bound: int) -> list[Convergent]:
    """All convergents with q <= bound, in index order (q_0 = q_1 = 1 both kept)."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    out = []
    for conv in convergent_stream(cf):
        if conv.q > bound:
            break
        out.append(conv)
    return out


def continuant(word: Sequence[int]) -> int:
    """<a_1, ..., a_n>: denominator of [0; a_1, ..., a_n]; <> = 1."""
    for a in word:
        if a < 1:
            raise ValueError("continuant entries must be >= 1")
    prev, cur = 0, 1
    for a in word:
        prev, cur = cur, a * cur + prev
    return cur


@lru_cache(maxsize=None)
def _period_tail(cf: CFExpansion, offset: int) -> QuadExt:
    """Value of the purely periodic fraction on the period rotated by offset."""
    m = len(cf.period)
    block = cf.period[offset:] + cf.period[:offset]
    p_prev, q_prev = 1, 0
    p, q = block[0], 1
    for a in block[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    # omega = (p*omega + p_prev) / (q*omega + q_prev)
    disc = (q_prev - p) ** 2 + 4 * q * p_prev
    _, f = squarefree_decompose(disc)
    if f == 1:
        raise RationalInputError("period block does not define an irrational")
    root = QuadExt(Fraction(0), Fraction(1), disc)
    return ((p - q_prev) + root) / (2 * q)


def tail(cf: CFExpansion, r: int) -> QuadExt:
    """Exact tail [a_r; a_{r+1}, ...] of a periodic expansion, r >= 1."""
    if cf.is_rational:
        raise RationalInputError("tails are defined for irrational expansions only")
    if r < 1:
        raise ValueError("tail index must be >= 1")
    k = len(cf.preperiod)
    if r >= k + 1:
        return _period_tail(cf, (r - k - 1) % len(cf.period))
    x = _period_tail(cf, 0)
    for j in range(k, r - 1, -1):
        x = cf.partial_quotient(j) + x.inverse()
    return x


def is_nonintegral_sum_and_diff(x: QuadExt, y: QuadExt) -> bool:
    """True iff neither x+y nor x-y is an integer (both inputs irrational)."""
    if x.is_rational or y.is_rational:
        raise RationalInputError("both numbers must be irrational")
    if x.D != y.D:
        return True
    for combined in (x + y, x - y):
        if combined.b == 0 and combined.a.denominator == 1:
            return False
    return True
