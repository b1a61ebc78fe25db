"""Rigorous interval arithmetic and conclusive strict comparisons.

Every conjecture-level verdict in this package ultimately comes from this
module: expressions over integers are evaluated as MPFR intervals with
directed rounding (outward at every step), precision is doubled until the
two sides separate, and an exact big-integer comparison backs up the rare
cases where intervals alone would be expensive.  A verdict of "holds" is
never produced from a non-separating comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

import gmpy2

DEFAULT_BITS_START = 96
DEFAULT_BITS_CAP = 4096
DEFAULT_BIGINT_DIGIT_CAP = 10_000_000

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


class PrecisionError(Exception):
    pass


class NonpositiveArgumentError(PrecisionError):
    """Logarithm (or similar) of a nonpositive argument."""


class InconclusiveAtCapError(PrecisionError):
    """Both the interval precision cap and the exact fallback cap were exceeded."""


@lru_cache(maxsize=64)
def _ctx(bits: int):
    """(round-down, round-up) context pair at the given precision."""
    down = gmpy2.context(precision=bits, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=bits, round=gmpy2.RoundUp)
    return down, up


Number = Union[int, Fraction, "IntervalValue"]


class IntervalValue:
    """An enclosure [lo, hi] of a real number at a stated working precision.

    All operations round outward, so the true real result of composing
    operations on members always lies inside the result interval.
    """

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo, hi, bits: int):
        if not lo <= hi:
            raise ValueError(f"invalid interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.bits = bits

    # -- construction -----------------------------------------------------

    @classmethod
    def from_number(cls, x: Number, bits: int) -> "IntervalValue":
        if isinstance(x, IntervalValue):
            return x if x.bits == bits else cls(x.lo, x.hi, bits)
        down, up = _ctx(bits)
        if isinstance(x, Fraction):
            num, den = gmpy2.mpz(x.numerator), gmpy2.mpz(x.denominator)
            return cls(down.div(num, den), up.div(num, den), bits)
        z = gmpy2.mpz(x)
        return cls(down.add(z, 0), up.add(z, 0), bits)

    # -- queries ----------------------------------------------------------

    def width(self):
        _, up = _ctx(self.bits)
        return up.sub(self.hi, self.lo)

    def contains(self, x: Number) -> bool:
        if isinstance(x, Fraction):
            x = gmpy2.mpq(x.numerator, x.denominator)
        return self.lo <= x <= self.hi

    def contained_in(self, other: "IntervalValue") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def midpoint_float(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        return f"IntervalValue({self.lo!r}, {self.hi!r}, bits={self.bits})"

    # -- arithmetic (outward rounding) ------------------------------------

    def _coerce(self, other: Number) -> "IntervalValue":
        return IntervalValue.from_number(other, self.bits)

    def __add__(self, other: Number) -> "IntervalValue":
        o = self._coerce(other)
        down, up = _ctx(self.bits)
        return IntervalValue(down.add(self.lo, o.lo), up.add(self.hi, o.hi), self.bits)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "IntervalValue":
        o = self._coerce(other)
        down, up = _ctx(self.bits)
        return IntervalValue(down.sub(self.lo, o.hi), up.sub(self.hi, o.lo), self.bits)

    def __rsub__(self, other: Number) -> "IntervalValue":
        return self._coerce(other).__sub__(self)

    def __neg__(self) -> "IntervalValue":
        return IntervalValue(-self.hi, -self.lo, self.bits)

    def __mul__(self, other: Number) -> "IntervalValue":
        o = self._coerce(other)
        down, up = _ctx(self.bits)
        cands = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo = min(down.mul(a, b) for a, b in cands)
        hi = max(up.mul(a, b) for a, b in cands)
        return IntervalValue(lo, hi, self.bits)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "IntervalValue":
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        down, up = _ctx(self.bits)
        cands = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo = min(down.div(a, b) for a, b in cands)
        hi = max(up.div(a, b) for a, b in cands)
        return IntervalValue(lo, hi, self.bits)

    def __rtruediv__(self, other: Number) -> "IntervalValue":
        return self._coerce(other).__truediv__(self)

    # -- elementary functions ---------------------------------------------

    def ln(self) -> "IntervalValue":
        if self.lo <= 0:
            raise NonpositiveArgumentError("log of nonpositive interval")
        down, up = _ctx(self.bits)
        return IntervalValue(down.log(self.lo), up.log(self.hi), self.bits)

    def exp(self) -> "IntervalValue":
        down, up = _ctx(self.bits)
        return IntervalValue(down.exp(self.lo), up.exp(self.hi), self.bits)

    def expm1(self) -> "IntervalValue":
        down, up = _ctx(self.bits)
        return IntervalValue(down.expm1(self.lo), up.expm1(self.hi), self.bits)

    def sq(self) -> "IntervalValue":
        down, up = _ctx(self.bits)
        if self.lo >= 0:
            return IntervalValue(down.mul(self.lo, self.lo), up.mul(self.hi, self.hi), self.bits)
        if self.hi <= 0:
            return IntervalValue(down.mul(self.hi, self.hi), up.mul(self.lo, self.lo), self.bits)
        hi = max(up.mul(self.lo, self.lo), up.mul(self.hi, self.hi))
        return IntervalValue(gmpy2.mpfr(0), hi, self.bits)

    def pow_int(self, n: int) -> "IntervalValue":
        """Integer power by binary exponentiation on intervals."""
        if n < 0:
            return IntervalValue.from_number(1, self.bits) / self.pow_int(-n)
        result = IntervalValue.from_number(1, self.bits)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base.sq()
            n >>= 1
        return result


def ln_enclose(x: Union[int, IntervalValue], bits: int = DEFAULT_BITS_START) -> IntervalValue:
    """Enclosure of the natural logarithm of a positive integer or interval."""
    if bits < 53:
        raise ValueError("bits must be >= 53")
    if isinstance(x, int):
        if x <= 0:
            raise NonpositiveArgumentError(f"log({x})")
        x = IntervalValue.from_number(x, bits)
    return x.ln()


@dataclass(frozen=True)
class Verdict:
    """Outcome of one strict comparison lhs < rhs.

    holds  <=> lhs.hi < rhs.lo at the reported precision;
    fails  <=> lhs.lo > rhs.hi;
    inconclusive only when the escalation cap was reached.
    ``method`` records which route settled it ("interval" or "bigint").
    """

    outcome: str
    lhs: IntervalValue
    rhs: IntervalValue
    bits_used: int
    method: str = "interval"

    @property
    def holds(self) -> bool:
        return self.outcome == HOLDS


Expr = Union[int, Fraction, IntervalValue, Callable[[int], IntervalValue]]


def _eval_expr(expr: Expr, bits: int) -> IntervalValue:
    if callable(expr):
        return expr(bits)
    return IntervalValue.from_number(expr, bits)


def compare_strict(
    lhs: Expr,
    rhs: Expr,
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
) -> Verdict:
    """Decide lhs < rhs rigorously, doubling precision until separation.

    ``lhs``/``rhs`` are constants or callables ``bits -> IntervalValue``.
    Returns a holds/fails verdict with the separating enclosures, or
    inconclusive once ``bits_cap`` is reached.
    """
    if bits_start > bits_cap:
        raise ValueError("bits_start must not exceed bits_cap")
    bits = bits_start
    while True:
        li = _eval_expr(lhs, bits)
        ri = _eval_expr(rhs, bits)
        if li.hi < ri.lo:
            return Verdict(HOLDS, li, ri, bits)
        if li.lo > ri.hi:
            return Verdict(FAILS, li, ri, bits)
        if bits >= bits_cap:
            return Verdict(INCONCLUSIVE, li, ri, bits)
        bits = min(bits * 2, bits_cap)


def firoozbakht_exact(
    k: int,
    p_k: int,
    p_next: int,
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
    digit_cap: int = DEFAULT_BIGINT_DIGIT_CAP,
) -> Verdict:
    """Decide p_next^k < p_k^(k+1), the integer form of the gap conjecture.

    The interval route compares k*ln(p_next) against (k+1)*ln(p_k); if the
    precision cap does not separate them, falls back to the exact
    big-integer power comparison (equality is impossible for distinct
    primes, by unique factorization: p_next^k = p_k^(k+1) would equate
    powers of different primes).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 1 < p_k < p_next:
        raise ValueError("need 1 < p_k < p_next")

    verdict = compare_strict(
        lambda bits: ln_enclose(p_next, bits) * k,
        lambda bits: ln_enclose(p_k, bits) * (k + 1),
        bits_start,
        bits_cap,
    )
    if verdict.outcome != INCONCLUSIVE:
        return verdict

    digits = (k + 1) * len(str(p_k))
    if digits > digit_cap:
        raise InconclusiveAtCapError(
            f"interval cap {bits_cap} bits and bigint cap {digit_cap} digits both exceeded"
        )
    outcome = HOLDS if p_next**k < p_k ** (k + 1) else FAILS
    return Verdict(outcome, verdict.lhs, verdict.rhs, verdict.bits_used, method="bigint")
