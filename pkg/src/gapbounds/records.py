"""Maximal (record) prime gaps: scanning, OEIS b-file ingestion, merging.

A record gap is one strictly larger than every gap between smaller
consecutive primes.  Scanning finds them with exact indices in one
streaming pass; published tables can be ingested from b-files to extend
coverage beyond the sieve horizon, after a mandatory cross-check on the
overlap region.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from . import sieve
from .sieve import DEFAULT_CONFIG, SieveConfig

MAX_BFILE_VALUE = 2**64 - 1

SOURCE_SCANNED = "scanned"
SOURCE_INGESTED = "ingested"


class RecordsError(Exception):
    pass


class MalformedLineError(RecordsError):
    def __init__(self, line_no: int, line: str):
        super().__init__(f"malformed b-file line {line_no}: {line!r}")
        self.line_no = line_no


class NonMonotonicIndexError(RecordsError):
    def __init__(self, line_no: int, index: int):
        super().__init__(f"non-monotonic index {index} at b-file line {line_no}")
        self.line_no = line_no


class OverlapMismatchError(RecordsError):
    """Ingested records disagree with scanned records where both exist."""


@dataclass(frozen=True)
class GapRecord:
    gap: int
    p_start: int
    k_start: int  # 0 when the index is unknown (beyond the scan horizon)
    source: str = SOURCE_SCANNED


@dataclass(frozen=True)
class RecordTable:
    """Record gaps sorted by p_start; complete for p_start <= limit."""

    records: Tuple[GapRecord, ...]
    limit: int

    def __post_init__(self):
        prev_gap, prev_p = 0, 0
        for r in self.records:
            if r.gap <= prev_gap or r.p_start <= prev_p:
                raise ValueError("records must be strictly increasing in gap and p_start")
            prev_gap, prev_p = r.gap, r.p_start

    def truncated(self, limit: int) -> "RecordTable":
        kept = tuple(r for r in self.records if r.p_start < limit)
        return RecordTable(kept, min(limit, self.limit))


def scan_records(limit: int, config: SieveConfig = DEFAULT_CONFIG) -> RecordTable:
    """All maximal gaps with p_start < limit, each with its exact index."""
    if limit < 3:
        raise ValueError("limit must be >= 3")
    out: List[GapRecord] = []
    best = 0
    prev_p = None
    k = 0  # index of prev_p
    for chunk in sieve.iter_prime_chunks(2, limit, config):
        if prev_p is not None:
            primes = np.concatenate((np.array([prev_p], dtype=np.int64), chunk))
        else:
            primes = chunk
        gaps = np.diff(primes)
        if len(gaps):
            # running[i] = max(best so far, gaps[:i]) -> record iff gap beats it
            running = np.maximum.accumulate(np.concatenate(([best], gaps)))
            hits = np.nonzero(gaps > running[:-1])[0]
            base_k = k if prev_p is not None else 1
            for i in hits:
                out.append(
                    GapRecord(int(gaps[i]), int(primes[i]), base_k + int(i), SOURCE_SCANNED)
                )
            best = int(running[-1])
        k += len(chunk)
        prev_p = int(chunk[-1])
    # the gap opened by the last prime below the limit extends past it and is
    # judged against the next prime regardless of the horizon
    if prev_p is not None:
        nxt = sieve.next_prime_after(prev_p, config)
        if nxt - prev_p > best:
            out.append(GapRecord(nxt - prev_p, prev_p, k, SOURCE_SCANNED))
    return RecordTable(tuple(out), limit)


BfileText = Union[str, bytes]


def parse_bfile(text: BfileText) -> List[Tuple[int, int]]:
    """Parse OEIS b-file text into (n, a(n)) pairs in file order.

    Lines starting with '#' are comments; blank lines are allowed; every
    other line must be two base-10 integers.  Indices must be strictly
    increasing; values above 2^64 - 1 are rejected rather than truncated.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    pairs: List[Tuple[int, int]] = []
    prev_n = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLineError(line_no, raw)
        try:
            n, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(line_no, raw) from None
        if value < 0 or value > MAX_BFILE_VALUE:
            raise MalformedLineError(line_no, raw)
        if prev_n is not None and n <= prev_n:
            raise NonMonotonicIndexError(line_no, n)
        prev_n = n
        pairs.append((n, value))
    return pairs


def format_bfile(values: Iterable[int], start: int = 1, comment: str = "") -> str:
    """Serialize values as b-file text with indices start, start+1, ..."""
    lines = []
    if comment:
        lines.append(f"# {comment}")
    for i, v in enumerate(values, start=start):
        lines.append(f"{i} {v}")
    return "\n".join(lines) + "\n"


def table_to_bfiles(table: RecordTable) -> Tuple[str, str]:
    """(starts, gaps) b-file pair for a record table; round-trips exactly."""
    starts = format_bfile((r.p_start for r in table.records))
    gaps = format_bfile((r.gap for r in table.records))
    return starts, gaps


def merge_tables(
    scanned: RecordTable,
    ingested_starts: Sequence[int],
    ingested_gaps: Sequence[int],
) -> RecordTable:
    """Unify scanned records with an ingested table aligned by position.

    Inside the scan horizon every ingested record must match a scanned one
    exactly; any disagreement means corrupted external data and aborts the
    merge.  Ingested records beyond the horizon join with k_start = 0.
    """
    if len(ingested_starts) != len(ingested_gaps):
        raise ValueError("ingested starts and gaps must be aligned")
    merged: List[GapRecord] = list(scanned.records)
    scanned_by_p = {r.p_start: r for r in scanned.records}
    max_scanned_p = scanned.records[-1].p_start if scanned.records else 0
    for p, g in zip(ingested_starts, ingested_gaps):
        if p < scanned.limit or p <= max_scanned_p:
            match = scanned_by_p.get(p)
            if match is None or match.gap != g:
                raise OverlapMismatchError(
                    f"ingested record (p_start={p}, gap={g}) conflicts with scan "
                    f"({'absent' if match is None else f'gap={match.gap}'})"
                )
        else:
            merged.append(GapRecord(g, p, 0, SOURCE_INGESTED))
    merged.sort(key=lambda r: r.p_start)
    new_limit = max(scanned.limit, merged[-1].p_start + 1 if merged else scanned.limit)
    return RecordTable(tuple(merged), new_limit)
