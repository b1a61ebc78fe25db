"""Command-line front end.

Subcommands map one-to-one onto the library's verification sweeps and
reports.  Machine formats (csv/json) carry enclosure endpoints where the
schema has room for them; text output shows 3-decimal display values.

Exit codes: 0 success, 1 usage or I/O error, 2 violation found,
3 inconclusive result.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import sieve, verify
from .bounds import (
    CROSSOVER_PRIME,
    bound_profile,
    display_value,
    eval_ell,
    eval_f,
    panaitopol_coefficients,
)
from .precision import DEFAULT_BITS_CAP, DEFAULT_BITS_START
from .records import RecordTable, RecordsError, merge_tables, parse_bfile, scan_records
from .reference import REFERENCE_ROWS
from .sieve import DEFAULT_LIMIT, DEFAULT_SEGMENT_SIZE, SieveConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_INCONCLUSIVE = 3


@dataclass
class RunConfig:
    limit: int = 1_000_000
    segment_size: int = DEFAULT_SEGMENT_SIZE
    precision_start: int = DEFAULT_BITS_START
    precision_cap: int = DEFAULT_BITS_CAP
    threads: int = 1
    output_format: str = "text"
    checkpoint_path: Optional[str] = None
    record_files: Optional[List[str]] = None

    def __post_init__(self):
        for name in ("limit", "segment_size", "precision_start", "precision_cap", "threads"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.precision_start > self.precision_cap:
            raise ValueError("precision_start must not exceed precision_cap")
        if self.output_format not in ("csv", "json", "text"):
            raise ValueError(f"unknown format {self.output_format!r}")

    def sieve_config(self) -> SieveConfig:
        return SieveConfig(
            segment_size=self.segment_size,
            limit=max(DEFAULT_LIMIT, self.limit + self.segment_size),
            threads=self.threads,
        )


_CONFIG_KEYS = {
    "limit": int,
    "segment_size": int,
    "precision_start": int,
    "precision_cap": int,
    "threads": int,
    "format": str,
    "checkpoint": str,
}


def parse_config_file(path: str) -> dict:
    """Flat 'key = value' text config; '#' starts a comment."""
    values = {}
    with open(path) as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" in line:
                key, _, val = line.partition("=")
            else:
                parts = line.split(None, 1)
                if len(parts) != 2:
                    raise ValueError(f"bad config line {line_no}: {raw!r}")
                key, val = parts
            key = key.strip()
            val = val.strip()
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r} (line {line_no})")
            values[key] = _CONFIG_KEYS[key](val)
    return values


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """flags > config file > defaults."""
    merged: dict = {}
    if getattr(args, "config", None):
        merged.update(parse_config_file(args.config))
    mapping = {
        "limit": "limit",
        "segment_size": "segment_size",
        "precision_start": "precision_start",
        "precision_cap": "precision_cap",
        "threads": "threads",
        "format": "format",
        "checkpoint": "checkpoint",
    }
    for arg_name, key in mapping.items():
        val = getattr(args, arg_name, None)
        if val is not None:
            merged[key] = val
    kwargs = dict(
        limit=int(merged.get("limit", 1_000_000)),
        segment_size=int(merged.get("segment_size", DEFAULT_SEGMENT_SIZE)),
        precision_start=int(merged.get("precision_start", DEFAULT_BITS_START)),
        precision_cap=int(merged.get("precision_cap", DEFAULT_BITS_CAP)),
        threads=int(merged.get("threads", 1)),
        output_format=str(merged.get("format", "text")),
        checkpoint_path=merged.get("checkpoint"),
        record_files=getattr(args, "records", None),
    )
    return RunConfig(**kwargs)


# -- output helpers --------------------------------------------------------


def _emit(rows: List[dict], columns: List[str], fmt: str, out, title: str = ""):
    """Write rows in the chosen format; csv/json carry exactly ``columns``."""
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[c] for c in columns])
    elif fmt == "json":
        json.dump([{c: row[c] for c in columns} for row in rows], out, indent=1)
        out.write("\n")
    else:
        if title:
            out.write(title + "\n")
        widths = [max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c)
                  for c in columns]
        out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)) + "\n")
        for row in rows:
            out.write("  ".join(str(row[c]).rjust(w)
                                for c, w in zip(columns, widths)) + "\n")


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w"), True
    return sys.stdout, False


def _report_exit(report: verify.VerdictReport) -> int:
    if report.outcome == verify.VIOLATION:
        return EXIT_VIOLATION
    if report.outcome == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _write_report(report: verify.VerdictReport, fmt: str, out):
    if fmt == "json":
        json.dump(report.to_dict(), out, indent=1)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["check_id", "range_lo", "range_hi", "outcome", "witnesses"])
        writer.writerow([report.check_id, report.range[0], report.range[1],
                         report.outcome, json.dumps(report.witnesses)])
    else:
        out.write(f"{report.check_id}: {report.outcome} on {report.range}\n")
        for key, val in report.stats.items():
            out.write(f"  {key}: {val}\n")
        for w in report.witnesses[:20]:
            out.write(f"  witness: {w}\n")


# -- subcommands -----------------------------------------------------------


def cmd_table1(args) -> int:
    cfg = build_run_config(args)
    rows = []
    all_match = True
    for r in REFERENCE_ROWS:
        f_str = display_value(lambda bits: eval_f(r.k, r.p_k, bits),
                              bits_start=cfg.precision_start,
                              bits_cap=cfg.precision_cap)
        ell_str = display_value(lambda bits: eval_ell(r.p_k, bits),
                                bits_start=cfg.precision_start,
                                bits_cap=cfg.precision_cap)
        match = f_str == r.f_ref and ell_str == r.ell_ref
        all_match &= match
        rows.append({"k": r.k, "p_k": r.p_k, "gap": r.gap,
                     "f_k": f_str, "ell_k": ell_str,
                     "f_ref": r.f_ref, "ell_ref": r.ell_ref,
                     "match": "match" if match else "MISMATCH"})
    out, close = _open_out(args)
    try:
        _emit(rows, ["k", "p_k", "gap", "f_k", "ell_k", "f_ref", "ell_ref", "match"],
              cfg.output_format, out, title="reference gap-bound rows (recomputed)")
    finally:
        if close:
            out.close()
    return EXIT_OK if all_match else EXIT_VIOLATION


def _load_record_table(cfg: RunConfig, scan_limit: int) -> RecordTable:
    scfg = cfg.sieve_config()
    scanned = scan_records(scan_limit, scfg)
    if cfg.record_files:
        paths = cfg.record_files
        if len(paths) != 2:
            raise RecordsError(
                "--records needs two b-files: starting primes, then gap sizes"
            )
        with open(paths[0], "rb") as fh:
            starts = [v for _, v in parse_bfile(fh.read())]
        with open(paths[1], "rb") as fh:
            gaps = [v for _, v in parse_bfile(fh.read())]
        return merge_tables(scanned, starts, gaps)
    return scanned


def cmd_verify(args) -> int:
    cfg = build_run_config(args)
    scfg = cfg.sieve_config()
    mode = args.mode or "exhaustive"
    table = None
    if mode == "records":
        table = _load_record_table(cfg, cfg.limit)
    rep1 = verify.verify_firoozbakht(
        cfg.limit, mode=mode, config=scfg, record_table=table,
        checkpoint_path=cfg.checkpoint_path,
        bits_start=cfg.precision_start, bits_cap=cfg.precision_cap,
    )
    rep2 = verify.verify_sufficient_conditions(
        cfg.limit, config=scfg,
        bits_start=cfg.precision_start, bits_cap=cfg.precision_cap,
    )
    out, close = _open_out(args)
    try:
        if cfg.output_format == "json":
            json.dump({"firoozbakht": rep1.to_dict(),
                       "sufficient_conditions": rep2.to_dict()}, out, indent=1)
            out.write("\n")
        else:
            _write_report(rep1, cfg.output_format, out)
            _write_report(rep2, cfg.output_format, out)
    finally:
        if close:
            out.close()
    return max(_report_exit(rep1), _report_exit(rep2))


def cmd_scan_records(args) -> int:
    cfg = build_run_config(args)
    table = _load_record_table(cfg, cfg.limit)
    rows = [
        {"n": i, "gap": r.gap, "p_start": r.p_start, "k_start": r.k_start,
         "source": r.source}
        for i, r in enumerate(table.records, start=1)
    ]
    out, close = _open_out(args)
    try:
        _emit(rows, ["n", "gap", "p_start", "k_start", "source"],
              cfg.output_format, out, title=f"record gaps below {table.limit}")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_bounds(args) -> int:
    cfg = build_run_config(args)
    scfg = cfg.sieve_config()
    rows = []
    k = 0
    for chunk in sieve.iter_prime_chunks(2, cfg.limit, scfg):
        for p in chunk:
            k += 1
            prof = bound_profile(k, int(p), cfg.precision_start)
            row = {"k": k, "p_k": int(p),
                   "f_lo": str(prof.f_k.lo), "f_hi": str(prof.f_k.hi),
                   "ell_lo": str(prof.ell_k.lo), "ell_hi": str(prof.ell_k.hi)}
            if prof.thm4_rhs is not None:
                for i, _ in enumerate(prof.thm4_rhs, start=1):
                    row[f"c{i}"] = display_value(
                        lambda bits, _p=int(p), _i=i - 1: _thm4_one(_p, _i, bits),
                        bits_start=cfg.precision_start, bits_cap=cfg.precision_cap)
            else:
                row.update({f"c{i}": "" for i in range(1, 5)})
            rows.append(row)
    out, close = _open_out(args)
    try:
        _emit(rows, ["k", "p_k", "f_lo", "f_hi", "ell_lo", "ell_hi",
                     "c1", "c2", "c3", "c4"],
              cfg.output_format, out, title=f"bound profiles below {cfg.limit}")
    finally:
        if close:
            out.close()
    return EXIT_OK


def _thm4_one(p, i, bits):
    from .bounds import eval_thm4_rhs

    return eval_thm4_rhs(p, bits)[i]


def cmd_near_miss(args) -> int:
    cfg = build_run_config(args)
    lo = args.lo if args.lo is not None else CROSSOVER_PRIME
    report = verify.near_miss_scan(
        cfg.limit, lo=lo, config=cfg.sieve_config(),
        bits_start=cfg.precision_start, bits_cap=cfg.precision_cap,
    )
    rows = [
        {"k": w["k"], "p_k": w["p_k"], "q": w["q"], "p_next": w["p_next"],
         "f_k": f"{w['f_k']:.3f}", "ell_k": f"{w['ell_k']:.3f}"}
        for w in report.witnesses
    ]
    out, close = _open_out(args)
    try:
        _emit(rows, ["k", "p_k", "q", "p_next", "f_k", "ell_k"],
              cfg.output_format, out,
              title=f"would-be falsifiers in [{lo}, {cfg.limit})")
    finally:
        if close:
            out.close()
    return _report_exit(report)


def cmd_asymptotic(args) -> int:
    cfg = build_run_config(args)
    report = verify.verify_asymptotic(
        cfg.limit, config=cfg.sieve_config(),
        bits_start=cfg.precision_start, bits_cap=cfg.precision_cap,
    )
    rows = [
        {"decade": w["decade"], "max_abs_dev": f"{w['max_abs_dev']:.6f}",
         "sandwich_ok": w["sandwich_ok"]}
        for w in report.stats["windows"]
    ]
    out, close = _open_out(args)
    try:
        _emit(rows, ["decade", "max_abs_dev", "sandwich_ok"],
              cfg.output_format, out, title="sandwich deviation per decade")
    finally:
        if close:
            out.close()
    return _report_exit(report)


def cmd_panaitopol(args) -> int:
    cfg = build_run_config(args)
    n = min(args.terms, 64)
    coeffs = panaitopol_coefficients(n)
    # the subtracted-term coefficients of conditions 2..4, deepest first,
    # line up against the integer sequence
    approximants = {1: "3.83", 2: "15.43", 3: "89.6"}
    rows = [
        {"n": i + 1, "coefficient": term,
         "condition_coefficient": approximants.get(i, "")}
        for i, term in enumerate(coeffs.terms)
    ]
    out, close = _open_out(args)
    try:
        _emit(rows, ["n", "coefficient", "condition_coefficient"],
              cfg.output_format, out,
              title="integer coefficient sequence vs condition coefficients")
    finally:
        if close:
            out.close()
    return EXIT_OK


# -- parser ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--limit", type=lambda s: int(float(s)), default=None,
                   help="upper bound of the sweep (accepts 1e9 notation)")
    p.add_argument("--segment-size", dest="segment_size", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--precision-start", dest="precision_start", type=int, default=None)
    p.add_argument("--precision-cap", dest="precision_cap", type=int, default=None)
    p.add_argument("--format", choices=["csv", "json", "text"], default=None)
    p.add_argument("--checkpoint", default=None, help="checkpoint file path")
    p.add_argument("--records", action="append", default=None,
                   metavar="BFILE",
                   help="record table b-files: give twice, starts then gaps")
    p.add_argument("--out", default=None, help="write the report here")
    p.add_argument("--config", default=None, help="flat key=value config file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gapbounds",
                     description="Prime-gap bound verification toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="recompute the reference gap-bound rows")
    _add_common(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("verify", help="verify the power gap bound below --limit")
    _add_common(p)
    p.add_argument("--mode", choices=["exhaustive", "records"], default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan-records", help="scan maximal prime gaps")
    _add_common(p)
    p.set_defaults(func=cmd_scan_records)

    p = sub.add_parser("bounds", help="bound profiles for primes below --limit")
    _add_common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("near-miss", help="scan for would-be falsifiers")
    _add_common(p)
    p.add_argument("--lo", type=lambda s: int(float(s)), default=None,
                   help=f"scan start (default {CROSSOVER_PRIME})")
    p.set_defaults(func=cmd_near_miss)

    p = sub.add_parser("asymptotic", help="sandwich check for large primes")
    _add_common(p)
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("panaitopol", help="integer coefficient sequence")
    _add_common(p)
    p.add_argument("--terms", type=int, default=8)
    p.set_defaults(func=cmd_panaitopol)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RecordsError, ValueError, OSError) as exc:
        print(f"gapbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
