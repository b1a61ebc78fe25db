"""Verification sweeps over prime gaps.

Each sweep streams the sieve segment by segment and classifies every gap
event with a two-stage scheme:

  1. a vectorized float64 screen whose rounding error is bounded outward
     by a generous ulp budget (an interval technique, just batched), and
  2. rigorous MPFR interval comparison for any event the screen cannot
     separate, escalating precision until it is conclusive.

A "holds" verdict therefore never rests on an unseparated comparison;
screens only ever short-circuit events whose margin dwarfs the error
budget.  All sweeps are deterministic for fixed configuration.
"""

from __future__ import annotations

import json
import math
import os
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import records as records_mod
from . import sieve
from .bounds import (
    CONDITION_COEFFS,
    CROSSOVER_PRIME,
    DIRECT_CHECK_MAX_K,
    DIRECT_CHECK_MIN_P,
    SMALL_PRIME_DIRECT_MAX,
    SUFFICIENT_MIN_K,
    eval_ell,
    eval_f,
    eval_thm4_rhs,
)
from .precision import (
    DEFAULT_BITS_CAP,
    DEFAULT_BITS_START,
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    IntervalValue,
    compare_strict,
    firoozbakht_exact,
    ln_enclose,
)
from .records import RecordTable
from .sieve import DEFAULT_CONFIG, SieveConfig

ALL_HOLD = "all-hold"
VIOLATION = "violation"
K_UNAVAILABLE = "k-unavailable"

# Outward error budget for the float64 screen: actual rounding error of the
# screened expressions is a few ulp of the largest intermediate; 4096 ulp
# leaves orders of magnitude of slack while remaining negligible next to
# the margins that occur in practice.
SCREEN_ULPS = 4096.0
_EPS64 = float(np.finfo(np.float64).eps)


def screen_eps(scale):
    """Absolute outward error bound for a float64-screened expression."""
    return SCREEN_ULPS * _EPS64 * scale


@dataclass
class VerdictReport:
    """Outcome of one verification sweep."""

    check_id: str
    range: Tuple[int, int]
    outcome: str  # all-hold / violation / k-unavailable / inconclusive
    witnesses: List[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "range": list(self.range),
            "outcome": self.outcome,
            "witnesses": self.witnesses,
            "stats": self.stats,
        }

    def comparable(self) -> dict:
        """Copy with timing fields dropped, for determinism comparisons."""
        d = self.to_dict()
        d["stats"] = {k: v for k, v in d["stats"].items() if k != "elapsed_s"}
        return d


# -- checkpointing ---------------------------------------------------------

CHECKPOINT_SCHEMA_VERSION = 1


class CheckpointError(Exception):
    pass


@dataclass
class Checkpoint:
    """Resumable sweep state, persisted as versioned JSON."""

    schema_version: int
    limit: int
    last_hi: int        # exclusive end of the last fully processed segment
    k_at_last_hi: int   # primes counted below last_hi
    last_prime: int     # largest prime below last_hi
    records: List[dict] = field(default_factory=list)

    def save(self, path: str) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            json.dump(asdict(self), fh, indent=1)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> "Checkpoint":
        with open(path) as fh:
            data = json.load(fh)
        if data.get("schema_version") != CHECKPOINT_SCHEMA_VERSION:
            raise CheckpointError(
                f"unsupported checkpoint schema {data.get('schema_version')}"
            )
        return cls(**data)

    def revalidate(self, config: SieveConfig) -> None:
        """Re-sieve the last completed segment and cross-check its tail."""
        lo = max(2, self.last_hi - config.segment_size)
        chunk = sieve.sieve_range(lo, self.last_hi, config).primes
        if len(chunk) == 0 or int(chunk[-1]) != self.last_prime:
            raise CheckpointError(
                f"checkpoint overlap mismatch: segment [{lo}, {self.last_hi}) "
                f"ends at {int(chunk[-1]) if len(chunk) else None}, "
                f"checkpoint says {self.last_prime}"
            )


# -- event-stream helper ---------------------------------------------------


def _stream_event_arrays(lo, hi, config, k_at_lo=0, tail=True):
    """Yield (k, p, p_next) int64 array triples per segment, indices global.

    The final event's successor is found past ``hi`` when ``tail`` is set,
    so every prime below hi opens exactly one event.
    """
    prev = None
    k = k_at_lo
    for chunk in sieve.iter_prime_chunks(lo, hi, config):
        if prev is not None:
            primes = np.concatenate((np.array([prev], dtype=np.int64), chunk))
            base_k = k
        else:
            primes = chunk
            base_k = k + 1
        if len(primes) > 1:
            ks = base_k + np.arange(len(primes) - 1, dtype=np.int64)
            yield ks, primes[:-1], primes[1:]
        k += len(chunk)
        prev = int(chunk[-1])
    if prev is not None and tail:
        nxt = sieve.next_prime_after(prev, config)
        yield (
            np.array([k], dtype=np.int64),
            np.array([prev], dtype=np.int64),
            np.array([nxt], dtype=np.int64),
        )


def _witness(k, p, p_next, lhs, rhs) -> dict:
    return {"k": int(k), "p_k": int(p), "p_next": int(p_next),
            "lhs": lhs, "rhs": rhs}


# -- direct-range gap bound check ------------------------------------------


def verify_theorem1_range(
    config: SieveConfig = DEFAULT_CONFIG,
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
) -> VerdictReport:
    """Check gap < l(p_k) - 1 for every index 9 < k < 133115 one gap at a time."""
    t0 = time.monotonic()
    checked = 0
    escalations = 0
    witnesses: List[dict] = []
    min_margin = math.inf
    for ks, ps, qs in _stream_event_arrays(2, DIRECT_CHECK_MIN_P + 1, config):
        sel = (ks > SUFFICIENT_MIN_K - 1) & (ks < DIRECT_CHECK_MAX_K)
        if not sel.any():
            continue
        ks, ps, qs = ks[sel], ps[sel], qs[sel]
        L = np.log(ps.astype(np.float64))
        margin = (L * L - L - 1.0) - (qs - ps).astype(np.float64)
        eps = screen_eps(L * L)
        min_margin = min(min_margin, float(margin.min()))
        checked += len(ks)
        for i in np.nonzero(margin <= eps)[0]:
            escalations += 1
            gap = int(qs[i] - ps[i])
            p = int(ps[i])
            v = compare_strict(
                gap, lambda bits: eval_ell(p, bits) - 1, bits_start, bits_cap
            )
            if v.outcome != HOLDS:
                witnesses.append(
                    _witness(ks[i], p, qs[i], gap, float(v.rhs.midpoint_float()))
                )
    outcome = ALL_HOLD if not witnesses else VIOLATION
    return VerdictReport(
        check_id="direct-range-gap-bound",
        range=(SUFFICIENT_MIN_K, DIRECT_CHECK_MAX_K - 1),
        outcome=outcome,
        witnesses=witnesses,
        stats={
            "events": checked,
            "escalations": escalations,
            "min_margin": min_margin,
            "elapsed_s": time.monotonic() - t0,
        },
    )


# -- conjecture verification -----------------------------------------------


def verify_firoozbakht(
    limit: int,
    mode: str = "exhaustive",
    config: SieveConfig = DEFAULT_CONFIG,
    record_table: Optional[RecordTable] = None,
    checkpoint_path: Optional[str] = None,
    checkpoint_every: int = 64,
    extra_events: Sequence[Tuple[int, int, int]] = (),
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
) -> VerdictReport:
    """Verify p_{k+1} < p_k^(1+1/k) for every prime p_k < limit.

    exhaustive: every gap event is decided, via the batched screen with
    rigorous escalation of anything not clearly separated.

    records: the gaps after small primes (p_k <= 89) are decided directly;
    for larger primes only record gaps are checked against the sufficient
    condition gap < l(p) - 1.17.  That covers all intermediate primes
    because the right-hand side increases with p while every intermediate
    gap is at most the preceding record's gap; the sufficient condition in
    turn implies the power bound.

    ``extra_events`` are injected (k, p_k, p_next) triples decided with the
    rigorous path; a falsifying injection turns the outcome into violation.
    """
    if mode not in ("exhaustive", "records"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.monotonic()
    witnesses: List[dict] = []
    inconclusive = 0
    stats: dict = {"mode": mode}

    if mode == "exhaustive":
        events, escalations = _exhaustive_sweep(
            limit, config, witnesses, checkpoint_path, checkpoint_every,
            bits_start, bits_cap, stats,
        )
        stats["events"] = events
        stats["escalations"] = escalations
    else:
        table = record_table or records_mod.scan_records(limit, config)
        table = table.truncated(limit) if table.limit > limit else table
        small_checked = 0
        for ev in sieve.gap_events(2, SMALL_PRIME_DIRECT_MAX + 1, 0, config):
            v = firoozbakht_exact(ev.k, ev.p_k, ev.p_next, bits_start, bits_cap)
            small_checked += 1
            if v.outcome == FAILS:
                witnesses.append(_witness(ev.k, ev.p_k, ev.p_next, "gap", "power-bound"))
            elif v.outcome == INCONCLUSIVE:
                inconclusive += 1
        rec_checked = 0
        k_unavailable = 0
        for rec in table.records:
            if rec.p_start < SMALL_PRIME_DIRECT_MAX or rec.p_start >= limit:
                continue
            rec_checked += 1
            if rec.k_start == 0:
                k_unavailable += 1  # log-only check still decides the record
            p = rec.p_start
            v = compare_strict(
                rec.gap,
                lambda bits: eval_ell(p, bits) - Fraction("1.17"),
                bits_start,
                bits_cap,
            )
            if v.outcome == FAILS:
                witnesses.append(
                    _witness(rec.k_start, p, p + rec.gap, rec.gap,
                             float(v.rhs.midpoint_float()))
                )
            elif v.outcome == INCONCLUSIVE:
                inconclusive += 1
        stats["small_events"] = small_checked
        stats["records_checked"] = rec_checked
        stats["records_without_index"] = k_unavailable
        stats["coverage"] = (
            "record-level success of gap < l(p) - 1.17 covers all intermediate "
            "primes: the bound increases with p and intermediate gaps are "
            "smaller than the covering record's gap"
        )

    for k, p, q in extra_events:
        v = firoozbakht_exact(int(k), int(p), int(q), bits_start, bits_cap)
        if v.outcome == FAILS:
            witnesses.append(_witness(k, p, q, f"{q}^{k}", f"{p}^{k + 1}"))
        elif v.outcome == INCONCLUSIVE:
            inconclusive += 1

    if witnesses:
        outcome = VIOLATION
    elif inconclusive:
        outcome = INCONCLUSIVE
    else:
        outcome = ALL_HOLD
    stats["inconclusive"] = inconclusive
    stats["elapsed_s"] = time.monotonic() - t0
    return VerdictReport("firoozbakht", (2, limit), outcome, witnesses, stats)


def _exhaustive_sweep(
    limit, config, witnesses, checkpoint_path, checkpoint_every,
    bits_start, bits_cap, stats,
):
    """Screen every gap event below limit; rigorous escalation; checkpoints."""
    start_lo = 2
    k = 0
    prev: Optional[int] = None
    best_gap = 0
    rec_list: List[dict] = []
    if checkpoint_path and os.path.exists(checkpoint_path):
        cp = Checkpoint.load(checkpoint_path)
        if cp.limit == limit and cp.last_hi < limit:
            cp.revalidate(config)
            start_lo = cp.last_hi
            k = cp.k_at_last_hi
            prev = cp.last_prime
            rec_list = list(cp.records)
            best_gap = max((r["gap"] for r in rec_list), default=0)
            stats["resumed_from"] = cp.last_hi

    events = 0
    escalations = 0
    min_margin = math.inf
    segments_done = 0
    for a, b, chunk in sieve.iter_segment_ranges(start_lo, limit, config):
        if len(chunk) == 0:
            segments_done += 1
            continue
        if prev is not None:
            primes = np.concatenate((np.array([prev], dtype=np.int64), chunk))
            base_k = k
        else:
            primes = chunk
            base_k = k + 1
        if len(primes) > 1:
            ks = base_k + np.arange(len(primes) - 1, dtype=np.float64)
            pf = primes[:-1].astype(np.float64)
            qf = primes[1:].astype(np.float64)
            lhs_scale = (ks + 1.0) * np.log(pf)
            margin = lhs_scale - ks * np.log(qf)
            eps = screen_eps(lhs_scale)
            min_margin = min(min_margin, float(margin.min()))
            events += len(margin)
            for i in np.nonzero(margin <= eps)[0]:
                escalations += 1
                v = firoozbakht_exact(
                    int(base_k + i), int(primes[i]), int(primes[i + 1]),
                    bits_start, bits_cap,
                )
                if v.outcome == FAILS:
                    witnesses.append(
                        _witness(base_k + i, primes[i], primes[i + 1],
                                 "power of next", "power of current")
                    )
            gaps = np.diff(primes)
            running = np.maximum.accumulate(np.concatenate(([best_gap], gaps)))
            for i in np.nonzero(gaps > running[:-1])[0]:
                rec_list.append(
                    {"gap": int(gaps[i]), "p_start": int(primes[i]),
                     "k_start": int(base_k + i), "source": "scanned"}
                )
            best_gap = int(running[-1])
        k += len(chunk)
        prev = int(chunk[-1])
        segments_done += 1
        if checkpoint_path and segments_done % checkpoint_every == 0:
            Checkpoint(
                CHECKPOINT_SCHEMA_VERSION, limit, b, k, prev, rec_list
            ).save(checkpoint_path)

    # gap opened by the last prime below the limit
    if prev is not None:
        nxt = sieve.next_prime_after(prev, config)
        events += 1
        v = firoozbakht_exact(k, prev, nxt, bits_start, bits_cap)
        if v.outcome == FAILS:
            witnesses.append(_witness(k, prev, nxt, "power of next", "power of current"))
    if checkpoint_path:
        Checkpoint(
            CHECKPOINT_SCHEMA_VERSION, limit, limit, k, prev or 0, rec_list
        ).save(checkpoint_path)
    stats["min_margin"] = min_margin
    stats["records_seen"] = len(rec_list)
    return events, escalations


# -- sufficient-condition sweep --------------------------------------------


def verify_sufficient_conditions(
    limit: int,
    config: SieveConfig = DEFAULT_CONFIG,
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
    max_miss_witnesses: int = 50,
) -> VerdictReport:
    """Tally which of the four conditions gap < l(p) - b(p) hold per event.

    A condition failure is a "sufficient-condition miss", recorded as data;
    it is not a conjecture violation (the conditions are sufficient, not
    necessary).  The conjecture itself is screened alongside and decides
    the outcome.
    """
    t0 = time.monotonic()
    coeff_rows = [[float(c) for c in coeffs] for coeffs in CONDITION_COEFFS]
    hold_counts = [0, 0, 0, 0]
    miss_counts = [0, 0, 0, 0]
    miss_witnesses: List[dict] = []
    witnesses: List[dict] = []
    events = 0
    escalations = 0
    for ks, ps, qs in _stream_event_arrays(2, limit, config):
        sel = ks > SUFFICIENT_MIN_K - 1
        if not sel.any():
            continue
        ks, ps, qs = ks[sel], ps[sel], qs[sel]
        events += len(ks)
        L = np.log(ps.astype(np.float64))
        ell = L * L - L
        gapf = (qs - ps).astype(np.float64)
        eps = screen_eps(L * L)
        for ci, coeffs in enumerate(coeff_rows):
            rhs = ell - coeffs[0]
            Lpow = L.copy()
            for c in coeffs[1:]:
                rhs -= c / Lpow
                Lpow *= L
            margin = rhs - gapf
            clear_hold = margin > eps
            hold_counts[ci] += int(clear_hold.sum())
            for i in np.nonzero(~clear_hold)[0]:
                escalations += 1
                p = int(ps[i])
                gap = int(qs[i] - ps[i])
                v = compare_strict(
                    gap,
                    lambda bits, _p=p, _ci=ci: eval_thm4_rhs(_p, bits)[_ci],
                    bits_start,
                    bits_cap,
                )
                if v.outcome == HOLDS:
                    hold_counts[ci] += 1
                else:
                    miss_counts[ci] += 1
                    if len(miss_witnesses) < max_miss_witnesses:
                        miss_witnesses.append(
                            {"condition": ci + 1,
                             **_witness(ks[i], p, qs[i], gap,
                                        float(v.rhs.midpoint_float()))}
                        )
        # conjecture screen rides along to fix the outcome
        lhs_scale = (ks + 1.0) * L
        cmarg = lhs_scale - ks.astype(np.float64) * np.log(qs.astype(np.float64))
        for i in np.nonzero(cmarg <= screen_eps(lhs_scale))[0]:
            v = firoozbakht_exact(int(ks[i]), int(ps[i]), int(qs[i]),
                                  bits_start, bits_cap)
            if v.outcome == FAILS:
                witnesses.append(_witness(ks[i], ps[i], qs[i],
                                          "power of next", "power of current"))
    outcome = VIOLATION if witnesses else ALL_HOLD
    return VerdictReport(
        check_id="sufficient-conditions",
        range=(SUFFICIENT_MIN_K, limit),
        outcome=outcome,
        witnesses=witnesses,
        stats={
            "events": events,
            "hold_counts": hold_counts,
            "miss_counts": miss_counts,
            "sufficient_condition_misses": miss_witnesses,
            "escalations": escalations,
            "elapsed_s": time.monotonic() - t0,
        },
    )


# -- near-miss scanner -----------------------------------------------------


def near_miss_scan(
    limit: int,
    lo: int = CROSSOVER_PRIME,
    config: SieveConfig = DEFAULT_CONFIG,
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
) -> VerdictReport:
    """Find primes q in [p_k + f_k, p_k + l_k] for p_k in [lo, limit).

    Such a q is a would-be falsifier: were q the very next prime, the
    power bound would fail while the log bound still held.  q need not be
    p_{k+1}.  Membership is only claimed when interval-certain; cases the
    screen cannot separate from a boundary are listed separately.
    """
    if lo < CROSSOVER_PRIME:
        raise ValueError(f"scan starts at the crossover prime {CROSSOVER_PRIME}")
    t0 = time.monotonic()
    # window primes are held in memory (8 bytes per prime); desk-scale
    # limits up to ~1e8 stay well under a gigabyte
    pad = int(math.log(max(limit, 3)) ** 2) + 64
    k_at_lo = sieve.pi(lo - 1, config)
    chunks = list(sieve.iter_prime_chunks(lo, limit + pad, config))
    primes = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)
    witnesses: List[dict] = []
    ambiguous: List[dict] = []
    events = 0
    sel = np.nonzero(primes < limit)[0]
    if len(sel) and sel[-1] + 1 >= len(primes):
        sel = sel[:-1]  # successor fell outside the padded window
    if len(sel):
        ks = k_at_lo + 1 + sel.astype(np.int64)
        ps = primes[sel]
        nexts = primes[sel + 1]
        events = len(ks)
        L = np.log(ps.astype(np.float64))
        ell = L * L - L
        f = ps.astype(np.float64) * np.expm1(L / ks.astype(np.float64))
        eps = screen_eps(L * L)
        lo_b = ps.astype(np.float64) + f
        hi_b = ps.astype(np.float64) + ell
        j0 = np.searchsorted(primes, np.ceil(lo_b - eps).astype(np.int64))
        j1 = np.searchsorted(primes, np.floor(hi_b + eps).astype(np.int64), "right")
        for i in np.nonzero(j1 > j0)[0]:
            for j in range(int(j0[i]), int(j1[i])):
                q = int(primes[j])
                p = int(ps[i])
                kk = int(ks[i])
                d = q - p
                if lo_b[i] + eps[i] <= q <= hi_b[i] - eps[i]:
                    certain = True
                else:
                    # boundary-ambiguous under the screen: settle rigorously
                    not_below = compare_strict(
                        d, lambda bits: eval_f(kk, p, bits), bits_start, bits_cap
                    )
                    not_above = compare_strict(
                        lambda bits: eval_ell(p, bits), d, bits_start, bits_cap
                    )
                    if INCONCLUSIVE in (not_below.outcome, not_above.outcome):
                        ambiguous.append({"k": kk, "p_k": p, "q": q})
                        continue
                    certain = (not_below.outcome == FAILS) and (not_above.outcome == FAILS)
                if certain:
                    witnesses.append(
                        {"k": kk, "p_k": p, "q": q, "p_next": int(nexts[i]),
                         "f_k": float(f[i]), "ell_k": float(ell[i]),
                         "gap": int(nexts[i] - ps[i])}
                    )

    outcome = ALL_HOLD  # a near-miss is data, not a violation
    return VerdictReport(
        check_id="near-miss",
        range=(lo, limit),
        outcome=outcome,
        witnesses=witnesses,
        stats={
            "events": events,
            "near_misses": len(witnesses),
            "boundary_ambiguous": ambiguous,
            "elapsed_s": time.monotonic() - t0,
        },
    )


# -- asymptotic sandwich ---------------------------------------------------


def verify_asymptotic(
    limit: int,
    config: SieveConfig = DEFAULT_CONFIG,
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
) -> VerdictReport:
    """Check l-1-3.83/ln p < f < l-1 for every p >= 1772201 below limit.

    Also tracks max |f - (l - 1)| per decade window; the maxima must
    decrease window over window as the two sides close in.
    """
    if limit < DIRECT_CHECK_MIN_P:
        raise ValueError(f"limit must be >= {DIRECT_CHECK_MIN_P}")
    t0 = time.monotonic()
    witnesses: List[dict] = []
    escalations = 0
    events = 0
    # decade windows: [1772201, 1e7), [1e7, 1e8), ...
    edges = [DIRECT_CHECK_MIN_P]
    e = 10**7
    while e < limit:
        edges.append(e)
        e *= 10
    edges.append(limit)
    maxima = [0.0] * (len(edges) - 1)

    k = 0
    for chunk in sieve.iter_prime_chunks(2, limit, config):
        primes = chunk
        ks_all = k + 1 + np.arange(len(primes), dtype=np.int64)
        sel = primes >= DIRECT_CHECK_MIN_P
        if sel.any():
            ps = primes[sel]
            ks = ks_all[sel]
            L = np.log(ps.astype(np.float64))
            ell = L * L - L
            f = ps.astype(np.float64) * np.expm1(L / ks.astype(np.float64))
            eps = screen_eps(L * L)
            upper = (ell - 1.0) - f
            lower = f - (ell - 1.0 - 3.83 / L)
            events += len(ps)
            for i in np.nonzero((upper <= eps) | (lower <= eps))[0]:
                escalations += 1
                p = int(ps[i])
                kk = int(ks[i])
                vu = compare_strict(
                    lambda bits: eval_f(kk, p, bits),
                    lambda bits: eval_ell(p, bits) - 1,
                    bits_start, bits_cap,
                )
                vl = compare_strict(
                    lambda bits: eval_ell(p, bits) - 1
                    - IntervalValue.from_number(Fraction("3.83"), bits)
                    / ln_enclose(p, bits),
                    lambda bits: eval_f(kk, p, bits),
                    bits_start, bits_cap,
                )
                if vu.outcome != HOLDS or vl.outcome != HOLDS:
                    witnesses.append(_witness(kk, p, 0, float(f[i]),
                                              float(ell[i] - 1.0)))
            dev = np.abs(f - (ell - 1.0))
            pos = np.searchsorted(edges, ps, "right") - 1
            for w in np.unique(pos):
                maxima[w] = max(maxima[w], float(dev[pos == w].max()))
        k += len(chunk)

    windows = [
        {"decade": f"[{edges[i]}, {edges[i + 1]})", "max_abs_dev": maxima[i],
         "sandwich_ok": True}
        for i in range(len(edges) - 1)
        if maxima[i] > 0.0
    ]
    decreasing = all(
        windows[i]["max_abs_dev"] > windows[i + 1]["max_abs_dev"]
        for i in range(len(windows) - 1)
    )
    outcome = ALL_HOLD if not witnesses else VIOLATION
    return VerdictReport(
        check_id="asymptotic-sandwich",
        range=(DIRECT_CHECK_MIN_P, limit),
        outcome=outcome,
        witnesses=witnesses,
        stats={
            "events": events,
            "escalations": escalations,
            "windows": windows,
            "window_maxima_decreasing": decreasing,
            "elapsed_s": time.monotonic() - t0,
        },
    )


# -- crossover search ------------------------------------------------------


def find_crossover(
    limit: int,
    config: SieveConfig = DEFAULT_CONFIG,
    bits_start: int = DEFAULT_BITS_START,
    bits_cap: int = DEFAULT_BITS_CAP,
) -> Tuple[int, int]:
    """Minimal index K with f_k < l_k for all K <= k <= pi(limit).

    Returns (K, p_K), decided interval-rigorously: every comparison near
    the screen's error budget is settled by precision escalation.
    """
    last_bad = 0
    last_bad_p = 0
    k = 0
    for chunk in sieve.iter_prime_chunks(2, limit + 1, config):
        primes = chunk
        base_k = k + 1
        ks = base_k + np.arange(len(primes), dtype=np.int64)
        sel = primes <= limit
        ps = primes[sel]
        ks = ks[sel]
        L = np.log(ps.astype(np.float64))
        ell = L * L - L
        f = ps.astype(np.float64) * np.expm1(L / ks.astype(np.float64))
        eps = screen_eps(np.maximum(L * L, np.abs(f)))
        margin = ell - f
        bad = margin < -eps       # clearly f >= ell
        unsure = np.abs(margin) <= eps
        for i in np.nonzero(unsure)[0]:
            p = int(ps[i])
            kk = int(ks[i])
            v = compare_strict(
                lambda bits: eval_f(kk, p, bits),
                lambda bits: eval_ell(p, bits),
                bits_start, bits_cap,
            )
            if v.outcome != HOLDS:
                bad[i] = True
        if bad.any():
            i = int(np.nonzero(bad)[0][-1])
            last_bad = int(ks[i])
            last_bad_p = int(ps[i])
        k += len(chunk)
    if last_bad == 0:
        return 1, 2
    # K is the index right after the last failure; find p_K
    p_K = sieve.next_prime_after(last_bad_p, config)
    return last_bad + 1, p_K
