"""Prime gap scanning and rigorous verification of Cramer-style gap bounds."""

from .bounds import (
    BoundProfile,
    PanaitopolCoefficients,
    axler_pi_bounds,
    bound_profile,
    check_eq4,
    check_eq9,
    eval_ell,
    eval_f,
    eval_thm4_rhs,
    panaitopol_coefficients,
)
from .precision import (
    IntervalValue,
    Verdict,
    compare_strict,
    firoozbakht_exact,
    ln_enclose,
)
from .records import GapRecord, RecordTable, merge_tables, parse_bfile, scan_records
from .sieve import PrimeGapEvent, Segment, SieveConfig, gap_events, pi, sieve_range
from .verify import (
    VerdictReport,
    find_crossover,
    near_miss_scan,
    verify_asymptotic,
    verify_firoozbakht,
    verify_sufficient_conditions,
    verify_theorem1_range,
)

__version__ = "0.1.0"

__all__ = [
    "BoundProfile",
    "GapRecord",
    "IntervalValue",
    "PanaitopolCoefficients",
    "PrimeGapEvent",
    "RecordTable",
    "Segment",
    "SieveConfig",
    "Verdict",
    "VerdictReport",
    "axler_pi_bounds",
    "bound_profile",
    "check_eq4",
    "check_eq9",
    "compare_strict",
    "eval_ell",
    "eval_f",
    "eval_thm4_rhs",
    "find_crossover",
    "firoozbakht_exact",
    "gap_events",
    "ln_enclose",
    "merge_tables",
    "near_miss_scan",
    "panaitopol_coefficients",
    "parse_bfile",
    "pi",
    "scan_records",
    "sieve_range",
    "verify_asymptotic",
    "verify_firoozbakht",
    "verify_sufficient_conditions",
    "verify_theorem1_range",
]
