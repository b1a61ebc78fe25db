"""Segmented prime sieve, prime counting, and gap-event enumeration.

The sieve is the throughput-critical layer: everything downstream (record
scanning, bound sweeps, conjecture checks) streams over its output. Segments
are sieved with an odd-only numpy bitset seeded by base primes up to sqrt(hi);
gap events are produced by a sequential merge that carries the last prime of
each segment into the next, so no boundary gap is ever dropped.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

DEFAULT_SEGMENT_SIZE = 1 << 22
DEFAULT_LIMIT = 26_000_000_000


class SieveError(Exception):
    """Base class for sieve failures."""


class RangeTooLargeError(SieveError):
    """Requested single segment exceeds the configured memory budget."""


class LimitExceededError(SieveError):
    """Requested bound exceeds the configured global limit."""


class InconsistentIndexError(SieveError):
    """Caller-supplied prime index contradicts a recount."""


@dataclass(frozen=True)
class SieveConfig:
    segment_size: int = DEFAULT_SEGMENT_SIZE
    limit: int = DEFAULT_LIMIT
    threads: int = 1

    def __post_init__(self):
        if self.segment_size < 64:
            raise ValueError("segment_size too small")
        if self.limit > DEFAULT_LIMIT:
            # Roughly 0.3 s per 1e9 on commodity hardware; warn so an
            # accidental huge limit does not look like a hang.
            est = 0.3 * self.limit / 1e9
            warnings.warn(
                f"limit {self.limit} above default {DEFAULT_LIMIT}; "
                f"projected sieve time ~{est:.0f}s",
                RuntimeWarning,
                stacklevel=2,
            )


DEFAULT_CONFIG = SieveConfig()


@dataclass(frozen=True)
class Segment:
    """Primes in the half-open range [lo, hi)."""

    lo: int
    hi: int
    primes: np.ndarray  # int64, strictly increasing


@dataclass(frozen=True)
class PrimeGapEvent:
    """A consecutive-prime pair (p_k, p_{k+1}) with its global index k (p_1 = 2)."""

    k: int
    p_k: int
    p_next: int

    @property
    def gap(self) -> int:
        return self.p_next - self.p_k


def base_primes(n: int) -> np.ndarray:
    """All primes <= n by a plain boolean sieve (n is small: sqrt of the range)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def _sieve_chunk(lo: int, hi: int, bases: np.ndarray) -> np.ndarray:
    """Primes in [lo, hi) using an odd-only bitset; bases must cover sqrt(hi)."""
    lo_odd = lo | 1
    n = max((hi - lo_odd + 1) // 2, 0)
    mask = np.ones(n, dtype=bool)
    for p in bases:
        p = int(p)
        if p == 2:
            continue
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        mask[(start - lo_odd) // 2 :: p] = False
    if lo_odd < 3:
        # index 0 is the number 1
        mask[0] = False
    primes = lo_odd + 2 * np.nonzero(mask)[0].astype(np.int64)
    if lo <= 2 < hi:
        primes = np.concatenate((np.array([2], dtype=np.int64), primes))
    return primes


def sieve_range(lo: int, hi: int, config: SieveConfig = DEFAULT_CONFIG) -> Segment:
    """Sieve one segment [lo, hi); the segment must fit the configured budget."""
    if not 2 <= lo < hi:
        raise ValueError(f"need 2 <= lo < hi, got [{lo}, {hi})")
    if hi - lo > config.segment_size:
        raise RangeTooLargeError(
            f"segment of {hi - lo} exceeds segment_size {config.segment_size}"
        )
    if hi > config.limit:
        raise LimitExceededError(f"hi={hi} above configured limit {config.limit}")
    bases = base_primes(math.isqrt(hi - 1) + 1)
    return Segment(lo, hi, _sieve_chunk(lo, hi, bases))


def iter_segment_ranges(
    lo: int, hi: int, config: SieveConfig = DEFAULT_CONFIG
) -> Iterator[tuple]:
    """Yield (a, b, primes) per segment of [lo, hi) in ascending order.

    Segments may be sieved by a thread pool; the merge order is always
    ascending regardless of completion order.
    """
    if hi > config.limit:
        raise LimitExceededError(f"hi={hi} above configured limit {config.limit}")
    lo = max(lo, 2)
    if lo >= hi:
        return
    bases = base_primes(math.isqrt(hi - 1) + 1)
    ranges = [
        (a, min(a + config.segment_size, hi))
        for a in range(lo, hi, config.segment_size)
    ]
    if config.threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            futures = [pool.submit(_sieve_chunk, a, b, bases) for a, b in ranges]
            for (a, b), fut in zip(ranges, futures):
                yield a, b, fut.result()
    else:
        for a, b in ranges:
            yield a, b, _sieve_chunk(a, b, bases)


def iter_prime_chunks(
    lo: int, hi: int, config: SieveConfig = DEFAULT_CONFIG
) -> Iterator[np.ndarray]:
    """Yield primes in [lo, hi) as ascending int64 arrays, one per segment."""
    for _, _, chunk in iter_segment_ranges(lo, hi, config):
        if len(chunk):
            yield chunk


def pi(x: int, config: SieveConfig = DEFAULT_CONFIG) -> int:
    """Exact prime count pi(x), streamed segment by segment (nothing stored)."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x > config.limit:
        raise LimitExceededError(f"x={x} above configured limit {config.limit}")
    if x < 2:
        return 0
    return sum(len(c) for c in iter_prime_chunks(2, x + 1, config))


def next_prime_after(x: int, config: SieveConfig = DEFAULT_CONFIG) -> int:
    """Least prime > x. Searches forward in widening windows."""
    window = 512
    lo = x + 1
    while True:
        hi = lo + window
        if hi > config.limit:
            # allow the lookahead to run one window past the configured limit
            hi = min(hi, config.limit + window)
        bases = base_primes(math.isqrt(hi - 1) + 1)
        chunk = _sieve_chunk(max(lo, 2), hi, bases)
        if len(chunk):
            return int(chunk[0])
        lo = hi
        window *= 2


def gap_events(
    lo: int,
    hi: int,
    k_at_lo: Optional[int] = None,
    config: SieveConfig = DEFAULT_CONFIG,
    verify_index: bool = False,
) -> Iterator[PrimeGapEvent]:
    """Events (k, p_k, p_{k+1}) for every prime p_k in [lo, hi).

    ``k_at_lo`` is the number of primes below lo; pass None to have it
    recounted.  The final event's p_next may lie beyond hi (one-prime
    lookahead), so concatenating adjacent ranges loses no boundary gap.
    """
    lo = max(lo, 2)
    if k_at_lo is None:
        k_at_lo = pi(lo - 1, config) if lo > 2 else 0
    elif verify_index:
        actual = pi(lo - 1, config) if lo > 2 else 0
        if actual != k_at_lo:
            raise InconsistentIndexError(
                f"k_at_lo={k_at_lo} but pi({lo - 1})={actual}"
            )
    k = k_at_lo
    prev: Optional[int] = None
    for chunk in iter_prime_chunks(lo, hi, config):
        if prev is not None:
            k += 1
            yield PrimeGapEvent(k, prev, int(chunk[0]))
        for a, b in zip(chunk[:-1], chunk[1:]):
            k += 1
            yield PrimeGapEvent(k, int(a), int(b))
        prev = int(chunk[-1])
    if prev is not None:
        k += 1
        yield PrimeGapEvent(k, prev, next_prime_after(prev, config))


def nth_prime(n: int, config: SieveConfig = DEFAULT_CONFIG) -> int:
    """The n-th prime, p_1 = 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    seen = 0
    # crude upper bound on p_n, grown on demand
    hi = max(32, int(n * (math.log(max(n, 2)) + math.log(math.log(max(n, 3))) + 1)) + 16)
    lo = 2
    while True:
        for chunk in iter_prime_chunks(lo, hi, config):
            if seen + len(chunk) >= n:
                return int(chunk[n - seen - 1])
            seen += len(chunk)
        lo, hi = hi, hi * 2
