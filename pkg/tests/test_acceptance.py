"""Acceptance gate: ten criteria, one printed pass/fail line each.

Each test computes its verdict first, prints a single line

    ACCEPTANCE <n>: PASS|FAIL - <detail>

and only then asserts, so the line is emitted either way.  Criterion 8 is
expected to fail: the second half of that criterion asserts an inequality
that is simply false (first counterexample x = 59753); the test reports
that honestly instead of weakening the check.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np

from gapbounds.bounds import (
    PI_LOWER_MIN_X,
    axler_pi_bounds,
    check_eq4,
    check_eq9,
    display_value,
    eval_ell,
    eval_f,
    panaitopol_coefficients,
)
from gapbounds.precision import (
    FAILS,
    HOLDS,
    compare_strict,
    firoozbakht_exact,
)
from gapbounds.reference import REFERENCE_ROWS
from gapbounds.sieve import DEFAULT_CONFIG, iter_prime_chunks, pi
from gapbounds.verify import (
    ALL_HOLD,
    find_crossover,
    near_miss_scan,
    screen_eps,
    verify_asymptotic,
    verify_firoozbakht,
    verify_theorem1_range,
    _stream_event_arrays,
)


def report(n, ok, detail):
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def test_criterion_01_reference_table():
    t0 = time.monotonic()
    mismatches = []
    for r in REFERENCE_ROWS:
        f_str = display_value(lambda bits: eval_f(r.k, r.p_k, bits))
        ell_str = display_value(lambda bits: eval_ell(r.p_k, bits))
        if (f_str, ell_str) != (r.f_ref, r.ell_ref):
            mismatches.append((r.k, f_str, ell_str))
    elapsed = time.monotonic() - t0
    ok = not mismatches and elapsed < 1.0
    assert report(
        1, ok,
        f"13/13 rows match at 3 decimals (round-half-even) in {elapsed:.2f}s"
        if ok else f"mismatches={mismatches} elapsed={elapsed:.2f}s",
    )


def test_criterion_02_direct_range():
    t0 = time.monotonic()
    rep = verify_theorem1_range()
    elapsed = time.monotonic() - t0
    ok = (rep.outcome == ALL_HOLD and rep.witnesses == []
          and rep.stats["events"] == 133105 and elapsed < 5.0)
    assert report(
        2, ok,
        f"gap < l-1 for all 9 < k < 133115 ({rep.stats['events']} events, "
        f"0 violations, min margin {rep.stats['min_margin']:.3f}) in {elapsed:.1f}s",
    )


def test_criterion_03_scaled_exhaustive_verification():
    limit = 10**9
    exhaustive = verify_firoozbakht(limit)
    records = verify_firoozbakht(limit, mode="records")

    # event-for-event agreement below 1e7: the per-event bound records mode
    # relies on (gap < l(p) - 1.17 for p > 89, direct checks otherwise)
    # holds at every event the exhaustive sweep decided
    misses = 0
    for ks, ps, qs in _stream_event_arrays(2, 10**7, DEFAULT_CONFIG):
        sel = (ks > 9) & (ps > 89)
        if not sel.any():
            continue
        L = np.log(ps[sel].astype(np.float64))
        margin = (L * L - L - 1.17) - (qs[sel] - ps[sel]).astype(np.float64)
        eps = screen_eps(L * L)
        for i in np.nonzero(margin <= eps)[0]:
            p = int(ps[sel][i])
            gap = int(qs[sel][i] - p)
            v = compare_strict(gap, lambda bits: eval_ell(p, bits) - Fraction("1.17"))
            if v.outcome != HOLDS:
                misses += 1

    ok = (exhaustive.outcome == ALL_HOLD
          and exhaustive.stats["inconclusive"] == 0
          and records.outcome == ALL_HOLD
          and misses == 0)
    assert report(
        3, ok,
        f"exhaustive to 1e9: {exhaustive.stats['events']} events, 0 violations, "
        f"0 inconclusive; records mode agrees; event-for-event agreement below "
        f"1e7 with {misses} disagreements",
    )


def test_criterion_04_crossover():
    got = find_crossover(10**8)
    ok = got == (1412, 11783)
    assert report(4, ok, f"minimal index with f_k < l_k onward is {got}, "
                         f"expected (1412, 11783)")


def test_criterion_05_near_miss():
    rep = near_miss_scan(2_100_000, lo=2_000_000)
    hits = [w for w in rep.witnesses if w["p_k"] == 2010733 and w["q"] == 2010929]
    gap_ok = False
    if hits:
        v = compare_strict(hits[0]["gap"],
                           lambda bits: eval_f(149689, 2010733, bits))
        gap_ok = v.outcome == HOLDS and hits[0]["gap"] == 148
    ok = bool(hits) and gap_ok
    assert report(
        5, ok,
        f"scan of [2.0e6, 2.1e6] finds q=2010929 for p=2010733 "
        f"({len(rep.witnesses)} near-misses total); actual gap 148 < f_k rigorously",
    )


def test_criterion_06_sandwich():
    rep = verify_asymptotic(10**8)
    maxima = [w["max_abs_dev"] for w in rep.stats["windows"]]
    ok = (rep.outcome == ALL_HOLD and rep.witnesses == []
          and rep.stats["window_maxima_decreasing"] and len(maxima) >= 2)
    assert report(
        6, ok,
        f"l-1-3.83/ln p < f < l-1 for all primes in [1772201, 1e8]; "
        f"per-decade max |f-(l-1)| decreasing: {[f'{m:.4f}' for m in maxima]}",
    )


def test_criterion_07_ratio_and_log_inequalities():
    ok4 = check_eq4(285967).outcome == HOLDS
    samples = np.unique(
        np.geomspace(285967, 10**12, 10_000).astype(np.int64)
    )
    bad4 = [int(x) for x in samples if check_eq4(int(x)).outcome != HOLDS]

    rng = random.Random(20150917)
    bad9 = 0
    for _ in range(10_000):
        x = Fraction(rng.randint(1, 10**9), rng.randint(1, 10**4))
        y = Fraction(rng.randint(1, 10**9), rng.randint(1, 10**4))
        if check_eq9(x, y).outcome != HOLDS:
            bad9 += 1

    ok = ok4 and not bad4 and bad9 == 0
    assert report(
        7, ok,
        f"ratio inequality holds at 285967 and {len(samples)} log-spaced "
        f"samples to 1e12 ({len(bad4)} failures); log inequality holds on "
        f"10000 random positive pairs ({bad9} failures)",
    )


def test_criterion_08_pi_bound_instances():
    # first half: the two-sided instance check at the stated threshold
    lower, upper, flags = axler_pi_bounds(PI_LOWER_MIN_X)
    true_pi = pi(PI_LOWER_MIN_X)
    ok_a = (true_pi == 133115 and lower.hi < true_pi < upper.lo
            and flags == (True, True))

    # second half, as stated: pi(x) < x/(ln x - 1 - 1.17/ln x) for every
    # integer x in [6, 1e6].  This claim is false; the scan reports the
    # counterexamples instead of papering over them.
    n = 1_000_000
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    counts = np.cumsum(mask)
    xs = np.arange(6, n + 1, dtype=np.float64)
    L = np.log(xs)
    ub = xs / (L - 1.0 - 1.17 / L)
    candidates = np.nonzero(counts[6:] >= ub - screen_eps(ub))[0] + 6
    violations = []
    for x in candidates:
        _, u, _ = axler_pi_bounds(int(x), bits=128)
        if int(counts[x]) > u.hi:
            violations.append(int(x))
    ok_b = not violations

    ok = ok_a and ok_b
    detail = (
        f"lower {float(lower.hi):.3f} < pi(1772201) = {true_pi} < "
        f"upper {float(upper.lo):.3f}; "
    )
    if ok_b:
        detail += "upper bound holds for all integer x in [6, 1e6]"
    else:
        detail += (
            f"upper bound FALSE for {len(violations)} integers in [6, 1e6], "
            f"first counterexample x = {violations[0]} "
            f"(pi = {int(counts[violations[0]])}); the stated validity "
            f"threshold 5.43 appears to have lost a 10^9 factor in "
            f"transcription (last observed violating prime: 2634800809)"
        )
    assert report(8, ok, detail)


def test_criterion_09_panaitopol():
    # hand derivation of the first five terms from
    # k_m = m*m! - sum_{j=1}^{m-1} j! * k_{m-j}:
    #   k_1 = 1*1!                                      = 1
    #   k_2 = 2*2! - 1!*k_1 = 4 - 1                     = 3
    #   k_3 = 3*3! - (1!*k_2 + 2!*k_1) = 18 - 3 - 2     = 13
    #   k_4 = 4*4! - (1!*k_3 + 2!*k_2 + 3!*k_1)
    #       = 96 - 13 - 6 - 6                           = 71
    #   k_5 = 5*5! - (1!*k_4 + 2!*k_3 + 3!*k_2 + 4!*k_1)
    #       = 600 - 71 - 26 - 18 - 24                   = 461
    expected = (1, 3, 13, 71, 461)
    coeffs = panaitopol_coefficients(64)
    ok = coeffs.terms[:5] == expected and coeffs.satisfies_recurrence()
    assert report(
        9, ok,
        f"first five coefficients {coeffs.terms[:5]} match the hand "
        f"derivation; recurrence verified by substitution for n <= 64",
    )


def test_criterion_10_oracle_equivalence():
    primes = np.concatenate(list(iter_prime_chunks(2, 20_000)))
    rng = random.Random(4001)
    disagreements = 0
    for _ in range(10_000):
        k = rng.randrange(1, 2000)
        p, q = int(primes[k - 1]), int(primes[k])
        expected = HOLDS if q**k < p ** (k + 1) else FAILS
        if firoozbakht_exact(k, p, q).outcome != expected:
            disagreements += 1
    falsifier = firoozbakht_exact(149689, 2010733, 2010929)
    ok = disagreements == 0 and falsifier.outcome == FAILS
    assert report(
        10, ok,
        f"agrees with big-integer power comparison on 10000 random "
        f"consecutive-prime pairs (k <= 2000), {disagreements} disagreements; "
        f"injected falsifier (149689, 2010733, 2010929) -> fails",
    )
