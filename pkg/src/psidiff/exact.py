"""Exact arithmetic substrate: quadratic-field elements and rational intervals.

Rationals are ``fractions.Fraction`` (always canonical: positive denominator,
reduced). ``QuadExt`` is an element a + b*sqrt(D) of a real quadratic field
with D squarefree; all field operations and sign tests are exact. ``Interval``
is a rational enclosure used for quantities that live outside a single
quadratic field (sqrt(tau), the optimal constant C, ...); comparisons against
such quantities go through ``refine_compare``, which doubles the working
precision until the intervals separate or a cap is hit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

from .errors import MixedFieldError, NegativeArgumentError

Rat = Fraction

RatLike = Union[int, Fraction]

DEFAULT_CAP_BITS = 4096


def _small_primes(limit: int = 10_000) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=1)
def _prime_table() -> list[int]:
    return _small_primes()


@lru_cache(maxsize=8192)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split n > 0 as s*s*f with f squarefree; returns (s, f)."""
    if n <= 0:
        raise ValueError("positive integer required")
    s, f = 1, 1
    for p in _prime_table():
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            s *= p ** (e // 2)
            if e % 2:
                f *= p
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            s *= r
        elif n < 10**8:
            # no prime factor <= 1e4 remains, so n < 1e8 has no square divisor
            f *= n
        else:
            from sympy import factorint  # rare: large cofactor with unknown structure

            for p, e in factorint(n).items():
                s *= p ** (e // 2)
                if e % 2:
                    f *= p
    return s, f


def _as_fraction(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class QuadExt:
    """Exact element a + b*sqrt(D) of Q(sqrt(D)), D squarefree and not a square.

    Construction normalizes the radicand: QuadExt(0, 1, 8) becomes 0 + 2*sqrt(2).
    Elements with b == 0 are exact rationals and interoperate with any field.
    """

    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self) -> None:
        a = _as_fraction(self.a)
        b = _as_fraction(self.b)
        if self.D <= 0:
            raise ValueError("D must be positive")
        s, f = squarefree_decompose(self.D)
        if f == 1:
            raise ValueError("D must not be a perfect square")
        if s != 1:
            b *= s
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", f)

    # -- field bookkeeping -------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other: QuadExt | RatLike) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.D == self.D:
                return other
            if other.b == 0:
                return QuadExt(other.a, Fraction(0), self.D)
            if self.b == 0:
                return other
            raise MixedFieldError(
                f"cannot combine sqrt({self.D}) with sqrt({other.D})"
            )
        return QuadExt(_as_fraction(other), Fraction(0), self.D)

    def _pair(self, other: QuadExt | RatLike) -> tuple["QuadExt", "QuadExt"]:
        rhs = self._coerce(other)
        lhs = rhs._coerce(self)
        return lhs, rhs

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: QuadExt | RatLike) -> "QuadExt":
        x, y = self._pair(other)
        return QuadExt(x.a + y.a, x.b + y.b, x.D)

    __radd__ = __add__

    def __sub__(self, other: QuadExt | RatLike) -> "QuadExt":
        x, y = self._pair(other)
        return QuadExt(x.a - y.a, x.b - y.b, x.D)

    def __rsub__(self, other: QuadExt | RatLike) -> "QuadExt":
        return (-self) + other

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.a, -self.b, self.D)

    def __mul__(self, other: QuadExt | RatLike) -> "QuadExt":
        x, y = self._pair(other)
        return QuadExt(x.a * y.a + x.b * y.b * x.D, x.a * y.b + x.b * y.a, x.D)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero quadratic element")
        return QuadExt(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other: QuadExt | RatLike) -> "QuadExt":
        x, y = self._pair(other)
        return x * y.inverse()

    def __rtruediv__(self, other: QuadExt | RatLike) -> "QuadExt":
        return self.inverse() * other

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def __abs__(self) -> "QuadExt":
        return -self if self.sign() < 0 else self

    # -- exact order --------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(D): compares a^2 against b^2*D."""
        if self.b == 0:
            return -1 if self.a < 0 else (0 if self.a == 0 else 1)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        n = self.norm()
        major = 1 if self.a > 0 else -1
        return major * (-1 if n < 0 else (0 if n == 0 else 1))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadExt):
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.D == other.D and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def _cmp(self, other: QuadExt | RatLike) -> int:
        return (self - other).sign()

    def __lt__(self, other: QuadExt | RatLike) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: QuadExt | RatLike) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: QuadExt | RatLike) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: QuadExt | RatLike) -> bool:
        return self._cmp(other) >= 0

    # -- conversions ----------------------------------------------------------

    def floor(self) -> int:
        """Unique integer floor, exact.

        Rational elements floor directly; irrational ones are bracketed by a
        refining enclosure (the value is never an integer), then the bracket is
        certified by exact sign tests in the field.
        """
        if self.b == 0:
            return math.floor(self.a)
        bits = 32
        while True:
            enc = self.enclosure(bits)
            lo, hi = math.floor(enc.lo), math.floor(enc.hi)
            if lo == hi:
                if (self - lo).sign() > 0 and (self - (lo + 1)).sign() < 0:
                    return lo
            bits *= 2

    __floor__ = floor

    def nearest_int(self) -> int:
        f = self.floor()
        return f + 1 if (self - f)._cmp(Fraction(1, 2)) > 0 else f

    def dist_to_nearest_int(self) -> "QuadExt":
        """||x||: exact distance to the nearest integer."""
        return abs(self - self.nearest_int())

    def enclosure(self, bits: int) -> "Interval":
        """Rational enclosure of width <= 2**-bits."""
        if self.b == 0:
            return Interval(self.a, self.a, bits)
        guard = max(0, _mag_bits(self.b)) + 2
        root = sqrt_enclosure(Fraction(self.D), bits + guard)
        if self.b > 0:
            lo, hi = self.a + self.b * root.lo, self.a + self.b * root.hi
        else:
            lo, hi = self.a + self.b * root.hi, self.a + self.b * root.lo
        return Interval(lo, hi, bits)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}√{self.D}"

    def __repr__(self) -> str:
        return f"QuadExt({self.a!r}, {self.b!r}, {self.D})"


def _mag_bits(x: Fraction) -> int:
    """ceil(log2(|x|)) for x != 0, a cheap magnitude estimate."""
    return abs(x.numerator).bit_length() - x.denominator.bit_length() + 1


TAU = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
PHI = QuadExt(Fraction(-1, 2), Fraction(1, 2), 5)
SQRT5 = QuadExt(Fraction(0), Fraction(1), 5)


@dataclass(frozen=True)
class Interval:
    """Closed rational interval [lo, hi] tagged with its working precision."""

    lo: Fraction
    hi: Fraction
    precision_bits: int = 64

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", _as_fraction(self.lo))
        object.__setattr__(self, "hi", _as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")
        if self.precision_bits <= 0:
            raise ValueError("precision_bits must be positive")

    @classmethod
    def point(cls, value: RatLike, bits: int = 64) -> "Interval":
        v = _as_fraction(value)
        return cls(v, v, bits)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: RatLike) -> bool:
        return self.lo <= value <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other: "Interval | RatLike") -> "Interval":
        o = _as_interval(other)
        return Interval(self.lo + o.lo, self.hi + o.hi, min(self.precision_bits, o.precision_bits))

    __radd__ = __add__

    def __sub__(self, other: "Interval | RatLike") -> "Interval":
        return self + (-_as_interval(other))

    def __rsub__(self, other: "Interval | RatLike") -> "Interval":
        return (-self) + other

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo, self.precision_bits)

    def __mul__(self, other: "Interval | RatLike") -> "Interval":
        o = _as_interval(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(products), max(products), min(self.precision_bits, o.precision_bits))

    __rmul__ = __mul__

    def __truediv__(self, other: "Interval | RatLike") -> "Interval":
        o = _as_interval(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("division by interval containing zero")
        inv = Interval(1 / o.hi, 1 / o.lo, o.precision_bits)
        return self * inv

    def __rtruediv__(self, other: "Interval | RatLike") -> "Interval":
        return _as_interval(other) / self

    def __abs__(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi), self.precision_bits)

    def __pow__(self, n: int) -> "Interval":
        if n < 0:
            raise ValueError("negative interval powers unsupported")
        out = Interval.point(1, self.precision_bits)
        for _ in range(n):
            out = (out * self).outward(self.precision_bits)
        return out

    def outward(self, bits: int) -> "Interval":
        """Round endpoints outward onto the dyadic grid 2**-bits.

        Keeps denominators bounded through long products at the cost of at
        most 2**(1-bits) of extra width.
        """
        scale = 1 << bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(-math.floor(-self.hi * scale), scale)
        return Interval(lo, hi, self.precision_bits)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _as_interval(x: "Interval | RatLike") -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(_as_fraction(x))


def sqrt_enclosure(q: Fraction, bits: int) -> Interval:
    """Enclosure of sqrt(q) for q >= 0 with width <= 2**(1-bits)."""
    if q < 0:
        raise NegativeArgumentError("square root of a negative rational")
    if q == 0:
        return Interval.point(0, bits)
    n, d = q.numerator, q.denominator
    scaled = (n * d) << (2 * bits)
    root = math.isqrt(scaled)
    lo = Fraction(root // d, 1 << bits)
    up = root if root * root == scaled else root + 1
    hi = Fraction(-((-up) // d), 1 << bits)  # ceil(up / d) scaled back
    return Interval(lo, hi, bits)


def sqrt_interval(x: Interval) -> Interval:
    """Enclosure of {sqrt(v) : v in x}; requires x.lo >= 0."""
    if x.lo < 0:
        raise NegativeArgumentError("square root of an interval reaching below zero")
    bits = x.precision_bits
    return Interval(sqrt_enclosure(x.lo, bits).lo, sqrt_enclosure(x.hi, bits).hi, bits)


class Comparison(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    UNDECIDED = "undecided"


# Anything comparable: exact values, fixed intervals, or enclosure generators
# mapping a bit count to an Interval.
Enclosable = Union[int, Fraction, QuadExt, Interval, Callable[[int], Interval]]


def enclosure_of(x: Enclosable, bits: int) -> Interval:
    if isinstance(x, QuadExt):
        return x.enclosure(bits)
    if isinstance(x, Interval):
        return x
    if isinstance(x, (int, Fraction)):
        return Interval.point(x, bits)
    if callable(x):
        return x(bits)
    raise TypeError(f"cannot form an enclosure of {type(x).__name__}")


def _exact_operand(x: Enclosable) -> QuadExt | None:
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadExt(_as_fraction(x), Fraction(0), 2)
    return None


def refine_compare(
    lhs: Enclosable,
    rhs: Enclosable,
    cap_bits: int = DEFAULT_CAP_BITS,
    start_bits: int = 32,
) -> Comparison:
    """Decide lhs vs rhs, exactly when both live in one quadratic field.

    Same-field operands (and rationals) short-circuit to an exact sign test,
    which is the only way EQUAL can be returned. Otherwise both sides are
    enclosed at doubling precision until the intervals separate; UNDECIDED
    means the cap was reached with the intervals still overlapping.
    """
    xl, xr = _exact_operand(lhs), _exact_operand(rhs)
    if xl is not None and xr is not None:
        try:
            s = (xl - xr).sign()
        except MixedFieldError:
            s = None
        if s is not None:
            return (Comparison.LESS, Comparison.EQUAL, Comparison.GREATER)[s + 1]
    bits = start_bits
    while True:
        el = enclosure_of(lhs, bits)
        er = enclosure_of(rhs, bits)
        if el.hi < er.lo:
            return Comparison.LESS
        if el.lo > er.hi:
            return Comparison.GREATER
        if bits >= cap_bits:
            return Comparison.UNDECIDED
        bits = min(2 * bits, cap_bits)


# -- named constants ----------------------------------------------------------

_CONST_NAMES = ("tau", "phi", "K", "C")


def _refine_to_width(make: Callable[[int], Interval], precision_bits: int) -> Interval:
    target = Fraction(1, 1 << precision_bits)
    bits = precision_bits + 8
    while True:
        enc = make(bits)
        if enc.width <= target:
            return Interval(enc.lo, enc.hi, precision_bits)
        bits *= 2


def sqrt_tau_enclosure(bits: int) -> Interval:
    return sqrt_interval(TAU.enclosure(bits))


def c_enclosure(bits: int) -> Interval:
    """C = sqrt(5) * (1 - sqrt(phi))."""
    return SQRT5.enclosure(bits) * (1 - sqrt_interval(PHI.enclosure(bits)))


def c_alt_enclosure(bits: int) -> Interval:
    """The product form of the same constant: K * (sqrt(tau) + tau**(-3/2))."""
    t = TAU.enclosure(bits)
    st = sqrt_interval(t)
    return (st - 1) * (st + 1 / (t * st))


@lru_cache(maxsize=256)
def const(name: str, precision_bits: int = 64) -> Interval:
    """Enclosure of a named constant with width <= 2**-precision_bits."""
    if name == "tau":
        return TAU.enclosure(precision_bits)
    if name == "phi":
        return PHI.enclosure(precision_bits)
    if name == "K":
        return _refine_to_width(lambda b: sqrt_tau_enclosure(b) - 1, precision_bits)
    if name == "C":
        return _refine_to_width(c_enclosure, precision_bits)
    raise ValueError(f"unknown constant {name!r}; expected one of {_CONST_NAMES}")


# -- decimal rendering --------------------------------------------------------


def _format_scaled(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def render_decimal(x: Enclosable, digits: int = 12, cap_bits: int = DEFAULT_CAP_BITS) -> str:
    """Correctly rounded decimal string with ``digits`` places (ties to even).

    Exact rationals round exactly; irrational values are refined until both
    enclosure endpoints round to the same string, which terminates because an
    irrational never sits on a rounding boundary.
    """
    scale = 10**digits
    exact = _exact_operand(x)
    if exact is not None and exact.is_rational:
        return _format_scaled(round(exact.a * scale), digits)
    bits = 64
    while True:
        enc = enclosure_of(x, bits)
        lo, hi = round(enc.lo * scale), round(enc.hi * scale)
        if lo == hi:
            return _format_scaled(lo, digits)
        if bits >= cap_bits:
            raise ValueError(
                f"cannot round to {digits} digits within {cap_bits} bits; "
                "the value may be an exact rounding boundary"
            )
        bits = min(2 * bits, cap_bits)
