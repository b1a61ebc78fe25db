"""Evaluation of the gap-bound family and related prime-count bounds.

Two central quantities, both upper bounds on the gap after the k-th prime:

  power_gap_bound   f(k, p) = p^(1+1/k) - p      (from the power conjecture)
  log_gap_bound     l(p)    = ln^2 p - ln p      (the Cramer-style bound)

plus the four sufficient-condition right-hand sides l - b(p) whose extra
terms push b from 1.17 toward 1, two explicit rational-in-log bounds on
pi(x), two standalone log inequalities, and the integer coefficient
recurrence the condition coefficients approximate.  All evaluations return
enclosures; rounding to display precision happens only at the reporting
layer (round-half-even, 3 decimals).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_EVEN
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import gmpy2

from .precision import (
    DEFAULT_BITS_CAP,
    DEFAULT_BITS_START,
    FAILS,
    HOLDS,
    IntervalValue,
    NonpositiveArgumentError,
    PrecisionError,
    Verdict,
    compare_strict,
    ln_enclose,
)

# Validity thresholds and coefficients of the explicit bounds, kept in one
# place so library code and tests share a single source of truth.
PI_LOWER_MIN_X = 1772201        # x/(ln x - 1 - 1/ln x - 1/ln^2 x) < pi(x) from here on
PI_UPPER_MIN_X = Fraction("5.43")   # stated threshold for pi(x) < x/(ln x - 1 - 1.17/ln x)
# The stated threshold above is too low: the upper bound is violated at many
# integers, the first being x = 59753 (prime, pi = 6041 > bound ~ 6040.787).
# The flag returned by axler_pi_bounds reports the stated threshold verbatim;
# see PI_UPPER_FIRST_COUNTEREXAMPLE before relying on it for small x.
PI_UPPER_FIRST_COUNTEREXAMPLE = 59753
RATIO_STEP_MIN_X = 285967       # (x+ln^2 x)/(...) < x/(...) chain step threshold
DIRECT_CHECK_MAX_K = 133115     # below this index the gap bound is checked one gap at a time
DIRECT_CHECK_MIN_P = 1772201    # p at index DIRECT_CHECK_MAX_K
SUFFICIENT_MIN_K = 10           # sufficient conditions are stated for k > 9 ...
SUFFICIENT_MIN_P = 29           # ... equivalently p_k >= 29
SMALL_PRIME_DIRECT_MAX = 89     # record-based verification checks p <= 89 one by one
CROSSOVER_INDEX = 1412          # first index from which f < l holds for good
CROSSOVER_PRIME = 11783

# Subtracted terms of the four sufficient conditions, as exact rationals:
# condition i is  l(p) - c0 - c1/L - c2/L^2 - c3/L^3  with L = ln p.
CONDITION_COEFFS: Tuple[Tuple[Fraction, ...], ...] = (
    (Fraction("1.17"),),
    (Fraction(1), Fraction("3.83")),
    (Fraction(1), Fraction("3.35"), Fraction("15.43")),
    (Fraction(1), Fraction("3.35"), Fraction("12.65"), Fraction("89.6")),
)


class NotApplicableError(PrecisionError):
    """A bound was evaluated below its domain of validity (denominator <= 0)."""


def eval_f(k: int, p_k: int, bits: int = DEFAULT_BITS_START) -> IntervalValue:
    """Enclosure of f(k, p) = p^(1+1/k) - p = p * (exp(ln(p)/k) - 1)."""
    if k < 1 or p_k < 2:
        raise ValueError("need k >= 1 and p_k >= 2")
    growth = (ln_enclose(p_k, bits) / k).expm1()
    return growth * p_k


def eval_ell(p_k: int, bits: int = DEFAULT_BITS_START) -> IntervalValue:
    """Enclosure of l(p) = ln^2 p - ln p."""
    if p_k < 2:
        raise ValueError("need p_k >= 2")
    L = ln_enclose(p_k, bits)
    return L.sq() - L


def eval_thm4_rhs(
    p_k: int, bits: int = DEFAULT_BITS_START
) -> Tuple[IntervalValue, IntervalValue, IntervalValue, IntervalValue]:
    """Enclosures of the four sufficient-condition right-hand sides at p_k."""
    if p_k < SUFFICIENT_MIN_P:
        raise ValueError(f"need p_k >= {SUFFICIENT_MIN_P}")
    L = ln_enclose(p_k, bits)
    ell = L.sq() - L
    out = []
    for coeffs in CONDITION_COEFFS:
        rhs = ell - coeffs[0]
        Lpow = L
        for c in coeffs[1:]:
            rhs = rhs - IntervalValue.from_number(c, bits) / Lpow
            Lpow = Lpow * L
        out.append(rhs)
    return tuple(out)


def axler_pi_bounds(
    x: int, bits: int = DEFAULT_BITS_START
) -> Tuple[IntervalValue, IntervalValue, Tuple[bool, bool]]:
    """Explicit lower/upper bounds on pi(x) with their validity flags.

    lower = x / (ln x - 1 - 1/ln x - 1/ln^2 x), stated valid for x >= 1772201;
    upper = x / (ln x - 1 - 1.17/ln x),         stated valid for x >= 5.43.
    Both enclosures are returned regardless; the flags report whether the
    stated threshold is met.  Caution: the stated upper threshold is too
    low -- the upper inequality is empirically false at x = 59753 and many
    larger integers (see PI_UPPER_FIRST_COUNTEREXAMPLE).
    """
    if x < 2:
        raise ValueError("need x >= 2")
    L = ln_enclose(x, bits)
    lower_den = L - 1 - 1 / L - 1 / L.sq()
    upper_den = L - 1 - IntervalValue.from_number(Fraction("1.17"), bits) / L
    if lower_den.lo <= 0 or upper_den.lo <= 0:
        raise NotApplicableError(f"denominator not positive at x={x}")
    lower = IntervalValue.from_number(x, bits) / lower_den
    upper = IntervalValue.from_number(x, bits) / upper_den
    flags = (x >= PI_LOWER_MIN_X, Fraction(x) >= PI_UPPER_MIN_X)
    return lower, upper, flags


def check_eq4(
    x: int,
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
) -> Verdict:
    """Verdict of (x + ln^2 x)/(ln x - 1 - 1/ln x) < x/(ln x - 1 - 1/ln x - 1/ln^2 x)."""
    if x < 3:
        raise ValueError("need x >= 3")

    def lhs(bits: int) -> IntervalValue:
        L = ln_enclose(x, bits)
        den = L - 1 - 1 / L
        if den.lo <= 0:
            raise NotApplicableError(f"lhs denominator not positive at x={x}")
        return (L.sq() + x) / den

    def rhs(bits: int) -> IntervalValue:
        L = ln_enclose(x, bits)
        den = L - 1 - 1 / L - 1 / L.sq()
        if den.lo <= 0:
            raise NotApplicableError(f"rhs denominator not positive at x={x}")
        return IntervalValue.from_number(x, bits) / den

    return compare_strict(lhs, rhs, bits_start, bits_cap)


Rational = Union[int, Fraction]


def check_eq9(
    x: Rational,
    y: Rational,
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
) -> Verdict:
    """Verdict of y/(x+y) < ln(x+y) - ln(x) for positive rationals."""
    x = Fraction(x)
    y = Fraction(y)
    if x <= 0 or y <= 0:
        raise NonpositiveArgumentError("x and y must be positive")

    def lhs(bits: int) -> IntervalValue:
        return IntervalValue.from_number(y / (x + y), bits)

    def rhs(bits: int) -> IntervalValue:
        xi = IntervalValue.from_number(x, bits)
        si = IntervalValue.from_number(x + y, bits)
        return si.ln() - xi.ln()

    return compare_strict(lhs, rhs, bits_start, bits_cap)


@dataclass(frozen=True)
class PanaitopolCoefficients:
    """Exact integers k_1..k_n with k_m + sum_{j=1}^{m-1} j! * k_{m-j} = m * m!."""

    terms: Tuple[int, ...]

    def satisfies_recurrence(self) -> bool:
        for m in range(1, len(self.terms) + 1):
            total = self.terms[m - 1] + sum(
                math.factorial(j) * self.terms[m - 1 - j] for j in range(1, m)
            )
            if total != m * math.factorial(m):
                return False
        return True


def panaitopol_coefficients(n: int) -> PanaitopolCoefficients:
    """First n terms of the integer sequence the condition coefficients approximate."""
    if not 1 <= n <= 64:
        raise ValueError("need 1 <= n <= 64")
    terms: List[int] = []
    for m in range(1, n + 1):
        k_m = m * math.factorial(m) - sum(
            math.factorial(j) * terms[m - 1 - j] for j in range(1, m)
        )
        terms.append(k_m)
    return PanaitopolCoefficients(tuple(terms))


@dataclass(frozen=True)
class BoundProfile:
    """All bound expressions evaluated at one (k, p_k).

    ``f_k`` is None when the prime's index is unknown (records ingested
    beyond the scan horizon); the log-only bounds never need k.
    """

    k: int
    p_k: int
    f_k: Optional[IntervalValue]
    ell_k: IntervalValue
    thm4_rhs: Optional[Tuple[IntervalValue, IntervalValue, IntervalValue, IntervalValue]]


def bound_profile(k: int, p_k: int, bits: int = DEFAULT_BITS_START) -> BoundProfile:
    f = eval_f(k, p_k, bits) if k > 0 else None
    thm4 = eval_thm4_rhs(p_k, bits) if p_k >= SUFFICIENT_MIN_P else None
    return BoundProfile(k, p_k, f, eval_ell(p_k, bits), thm4)


# -- display rounding ------------------------------------------------------


def _to_decimal(value, digits: int = 45) -> Decimal:
    """mpfr/mpz -> Decimal with enough digits that display rounding can't flip."""
    if value == 0:
        return Decimal(0)
    if isinstance(value, (int, gmpy2.mpz)):
        return Decimal(int(value))
    mant, exp, _ = value.digits(10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    return Decimal(f"{sign}0.{mant}E{exp}")


def _round_places(value, places: int) -> str:
    q = Decimal(1).scaleb(-places)
    return str(_to_decimal(value).quantize(q, rounding=ROUND_HALF_EVEN))


def display_value(
    build,
    places: int = 3,
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
) -> str:
    """Round an enclosure to a fixed number of decimals, half-even.

    ``build`` is ``bits -> IntervalValue``.  Precision escalates until both
    endpoints round to the same string, so the result is the rounding of
    the exact real value.
    """
    bits = bits_start
    while True:
        iv = build(bits)
        lo = _round_places(iv.lo, places)
        hi = _round_places(iv.hi, places)
        if lo == hi:
            return lo
        if bits >= bits_cap:
            raise PrecisionError(
                f"enclosure did not settle at {places} decimals by {bits_cap} bits"
            )
        bits = min(bits * 2, bits_cap)


def display_interval(iv: IntervalValue, places: int = 3) -> str:
    """Midpoint of an enclosure rounded for human display (no rigor claim)."""
    mid = (iv.lo + iv.hi) / 2
    return _round_places(mid, places)
