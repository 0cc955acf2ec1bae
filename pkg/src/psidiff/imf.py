"""The irrationality measure function psi, its reciprocal, and d(t) profiles.

psi(t) is the least distance ||q*x|| over 1 <= q <= t; it is piecewise constant
and drops exactly at convergent denominators, so d(t) = 1/psi_beta - 1/psi_alpha
is piecewise constant between the merged denominators of the two numbers. All
values are exact quadratic-field elements; d(t) is kept as a pair of them
because alpha and beta generally live in different fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import contfrac
from .contfrac import CFExpansion, Convergent, is_nonintegral_sum_and_diff
from .errors import (
    FormMismatchError,
    IntegralSumOrDiffError,
    RationalInputError,
    UndecidedSignError,
)
from .exact import DEFAULT_CAP_BITS, Interval, QuadExt, render_decimal


@dataclass(frozen=True)
class PsiValue:
    """psi at one argument: the minimizing index r, q_r, ||q_r x|| and its reciprocal."""

    index: int
    q: int
    value: QuadExt
    inv_value: QuadExt


def _require_irrational(cf: CFExpansion) -> QuadExt:
    value = cf.value()
    if isinstance(value, Fraction):
        raise RationalInputError("psi is computed for irrational numbers only")
    return value


def _bracketing_convergents(cf: CFExpansion, t: int) -> tuple[Convergent, Convergent, Convergent]:
    """(c_{r-1}, c_r, c_{r+1}) where r is the largest index with q_r <= t."""
    if t < 1:
        raise ValueError("t must be >= 1")
    prev = Convergent(-1, 1, 0)
    stream = contfrac.convergent_stream(cf)
    cur = next(stream)
    for nxt in stream:
        if nxt.q > t:
            return prev, cur, nxt
        prev, cur = cur, nxt


def psi(alpha: CFExpansion, t: int) -> PsiValue:
    """Exact psi_alpha(t) = ||q_r alpha|| with r the largest index, q_r <= t."""
    x = _require_irrational(alpha)
    prev, cur, _ = _bracketing_convergents(alpha, t)
    value = abs(cur.q * x - cur.p)
    inv_value = cur.q * contfrac.tail(alpha, cur.index + 1) + prev.q
    return PsiValue(cur.index, cur.q, value, inv_value)


def convergent_distance(alpha: CFExpansion, n: int) -> QuadExt:
    """xi_n = |q_n alpha - p_n|, the n-th convergent remainder.

    Equals psi_alpha(q_n) for n >= 1; at n = 0 with a_1 = 1 it differs (the
    nearest integer to alpha is then p_1, not p_0), and it is this remainder
    that satisfies xi_{n-1}/xi_n = alpha_{n+1} and the reciprocal identities.
    """
    x = _require_irrational(alpha)
    if n < 0:
        raise ValueError("index must be >= 0")
    conv = contfrac.convergents(alpha, n)[n]
    return abs(conv.q * x - conv.p)


def inv_psi(alpha: CFExpansion, t: int) -> QuadExt:
    """1/psi_alpha(t) through both closed forms, asserted exactly equal.

    Form one is q_r a_{r+1} + q_{r-1}; form two is q_{r+1} + q_r / a_{r+2}
    with a_* the exact continued-fraction tails.
    """
    _require_irrational(alpha)
    prev, cur, nxt = _bracketing_convergents(alpha, t)
    first = cur.q * contfrac.tail(alpha, cur.index + 1) + prev.q
    second = nxt.q + cur.q / contfrac.tail(alpha, cur.index + 2)
    if first != second:
        raise FormMismatchError(
            f"closed forms of 1/psi disagree at t={t}: {first} vs {second}"
        )
    return first


def check_pair(alpha: CFExpansion, beta: CFExpansion) -> None:
    """Validate the standing hypothesis alpha +- beta not in Z."""
    a, b = _require_irrational(alpha), _require_irrational(beta)
    if not is_nonintegral_sum_and_diff(a, b):
        raise IntegralSumOrDiffError("alpha + beta or alpha - beta is an integer")


@dataclass(frozen=True)
class DValue:
    """d(t) = 1/psi_beta(t) - 1/psi_alpha(t), kept as two exact field elements."""

    inv_psi_beta: QuadExt
    inv_psi_alpha: QuadExt
    alpha_index: int
    beta_index: int

    def as_quadext(self) -> QuadExt | None:
        """The difference as a single element when both parts share a field."""
        if (
            self.inv_psi_beta.is_rational
            or self.inv_psi_alpha.is_rational
            or self.inv_psi_beta.D == self.inv_psi_alpha.D
        ):
            return self.inv_psi_beta - self.inv_psi_alpha
        return None

    def enclosure(self, bits: int) -> Interval:
        return self.inv_psi_beta.enclosure(bits) - self.inv_psi_alpha.enclosure(bits)

    def abs_enclosure(self, bits: int) -> Interval:
        return abs(self.enclosure(bits))

    def sign(self, cap_bits: int = DEFAULT_CAP_BITS) -> int:
        """Strict sign of d; exact in a shared field, else by refinement."""
        exact = self.as_quadext()
        if exact is not None:
            s = exact.sign()
            if s == 0:
                raise UndecidedSignError("d(t) is exactly zero")
            return s
        bits = 32
        while True:
            enc = self.enclosure(bits)
            if enc.lo > 0:
                return 1
            if enc.hi < 0:
                return -1
            if bits >= cap_bits:
                raise UndecidedSignError(f"sign of d undecided at {cap_bits} bits")
            bits = min(2 * bits, cap_bits)

    def render(self, digits: int = 12) -> str:
        exact = self.as_quadext()
        if exact is not None:
            return render_decimal(exact, digits)
        return render_decimal(self.enclosure, digits)


def d_at(alpha: CFExpansion, beta: CFExpansion, t: int) -> DValue:
    """Exact d(t) for a valid pair; raises if alpha +- beta is integral."""
    check_pair(alpha, beta)
    return _d_unchecked(alpha, beta, t)


def _d_unchecked(alpha: CFExpansion, beta: CFExpansion, t: int) -> DValue:
    inv_a = inv_psi(alpha, t)
    inv_b = inv_psi(beta, t)
    _, cur_a, _ = _bracketing_convergents(alpha, t)
    _, cur_b, _ = _bracketing_convergents(beta, t)
    return DValue(inv_b, inv_a, cur_a.index, cur_b.index)


@dataclass(frozen=True)
class ProfileEntry:
    t: int
    inv_psi_alpha: QuadExt
    inv_psi_beta: QuadExt
    d: DValue


@dataclass(frozen=True)
class BreakpointProfile:
    alpha: CFExpansion
    beta: CFExpansion
    t_min: int
    t_max: int
    entries: tuple[ProfileEntry, ...]


def merged_denominators(
    alpha: CFExpansion, beta: CFExpansion, t_min: int, t_max: int
) -> list[int]:
    """Distinct convergent denominators of either number within [t_min, t_max]."""
    values = {c.q for c in contfrac.denominators_up_to(alpha, t_max)}
    values |= {c.q for c in contfrac.denominators_up_to(beta, t_max)}
    return sorted(v for v in values if v >= t_min)


def breakpoint_profile(
    alpha: CFExpansion, beta: CFExpansion, t_min: int, t_max: int
) -> BreakpointProfile:
    """One entry per merged denominator in range, plus the step active at t_min."""
    if not 1 <= t_min <= t_max:
        raise ValueError("need 1 <= t_min <= t_max")
    check_pair(alpha, beta)
    points = merged_denominators(alpha, beta, t_min, t_max)
    if not points or points[0] > t_min:
        points.insert(0, t_min)
    entries = []
    for t in points:
        d = _d_unchecked(alpha, beta, t)
        entries.append(ProfileEntry(t, d.inv_psi_alpha, d.inv_psi_beta, d))
    return BreakpointProfile(alpha, beta, t_min, t_max, tuple(entries))


def sign_changes(profile: BreakpointProfile, cap_bits: int = DEFAULT_CAP_BITS) -> list[int]:
    """Breakpoints where the strict sign of d flips versus the previous entry."""
    if not profile.entries:
        raise ValueError("empty profile")
    flips = []
    previous = profile.entries[0].d.sign(cap_bits)
    for entry in profile.entries[1:]:
        s = entry.d.sign(cap_bits)
        if s != previous:
            flips.append(entry.t)
        previous = s
    return flips


@dataclass(frozen=True)
class Letter:
    """One letter of the merged word: kind B (both), Q (alpha only), T (beta only)."""

    kind: str
    n: int | None
    s: int | None
    value: int

    def __str__(self) -> str:
        if self.kind == "B":
            return f"B({self.n},{self.s})"
        if self.kind == "Q":
            return f"Q({self.n})"
        return f"T({self.s})"


@dataclass(frozen=True)
class MergedWord:
    alpha: CFExpansion
    beta: CFExpansion
    letters: tuple[Letter, ...]


def _distinct_denominators(cf: CFExpansion) -> Iterator[tuple[int, int]]:
    """(value, index) with one entry per distinct q; the duplicated 1 keeps index 1."""
    stream = contfrac.convergent_stream(cf)
    cur = next(stream)
    for nxt in stream:
        if nxt.q == cur.q:
            cur = nxt
            continue
        yield cur.q, cur.index
        cur = nxt
    yield cur.q, cur.index


def merged_word(alpha: CFExpansion, beta: CFExpansion, count: int) -> MergedWord:
    """First ``count`` letters of the merged word over {B, Q, T}."""
    if count < 1:
        raise ValueError("count must be >= 1")
    check_pair(alpha, beta)
    qs = _distinct_denominators(alpha)
    ts = _distinct_denominators(beta)
    q_val, q_idx = next(qs)
    t_val, t_idx = next(ts)
    letters = []
    while len(letters) < count:
        if q_val == t_val:
            letters.append(Letter("B", q_idx, t_idx, q_val))
            q_val, q_idx = next(qs)
            t_val, t_idx = next(ts)
        elif q_val < t_val:
            letters.append(Letter("Q", q_idx, None, q_val))
            q_val, q_idx = next(qs)
        else:
            letters.append(Letter("T", None, t_idx, t_val))
            t_val, t_idx = next(ts)
    return MergedWord(alpha, beta, tuple(letters))


def profile_to_csv(profile: BreakpointProfile, digits: int = 12) -> str:
    """CSV rendering with header t,inv_psi_alpha,inv_psi_beta,d,digits=<n>."""
    lines = [f"t,inv_psi_alpha,inv_psi_beta,d,digits={digits}"]
    for entry in profile.entries:
        lines.append(
            ",".join(
                (
                    str(entry.t),
                    render_decimal(entry.inv_psi_alpha, digits),
                    render_decimal(entry.inv_psi_beta, digits),
                    entry.d.render(digits),
                )
            )
        )
    return "\n".join(lines) + "\n"
