import json

import pytest

from gapbounds.records import scan_records
from gapbounds.sieve import SieveConfig, next_prime_after, pi, sieve_range
from gapbounds.verify import (
    ALL_HOLD,
    VIOLATION,
    Checkpoint,
    CheckpointError,
    find_crossover,
    near_miss_scan,
    verify_asymptotic,
    verify_firoozbakht,
    verify_sufficient_conditions,
    verify_theorem1_range,
)

SMALL_CFG = SieveConfig(segment_size=4096)


class TestDirectRange:
    def test_all_hold(self):
        report = verify_theorem1_range()
        assert report.outcome == ALL_HOLD
        assert report.witnesses == []
        # indices 10 .. 133114 inclusive
        assert report.stats["events"] == 133105
        assert report.range == (10, 133114)

    def test_margin_is_comfortable(self):
        # the screen never needs help here; record that fact
        report = verify_theorem1_range()
        assert report.stats["escalations"] == 0
        assert report.stats["min_margin"] > 1.0

    def test_instance_values(self):
        # k=10: p=29, gap 2, bound ln^2(29) - ln(29) - 1 ~ 6.97
        # k=30: p=113, gap 14, bound ~ 16.62
        import math

        assert 2 < math.log(29) ** 2 - math.log(29) - 1
        assert 14 < math.log(113) ** 2 - math.log(113) - 1


class TestFiroozbakhtExhaustive:
    def test_small_limit_all_hold(self):
        report = verify_firoozbakht(10_000)
        assert report.outcome == ALL_HOLD
        assert report.stats["events"] == pi(10_000 - 1)
        assert report.stats["inconclusive"] == 0

    def test_event_count_matches_pi(self):
        # every prime below the limit opens exactly one event
        for limit in (100, 5000, 50_000):
            report = verify_firoozbakht(limit)
            assert report.stats["events"] == pi(limit - 1)

    def test_segment_size_invariance(self):
        a = verify_firoozbakht(30_000)
        b = verify_firoozbakht(30_000, config=SMALL_CFG)
        assert a.comparable() == b.comparable()

    def test_deterministic(self):
        a = verify_firoozbakht(20_000)
        b = verify_firoozbakht(20_000)
        assert a.comparable() == b.comparable()

    def test_injected_falsifier(self):
        report = verify_firoozbakht(
            10_000, extra_events=[(149689, 2010733, 2010929)]
        )
        assert report.outcome == VIOLATION
        assert any(w["p_k"] == 2010733 and w["q" if "q" in w else "p_next"] == 2010929
                   for w in report.witnesses)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            verify_firoozbakht(1000, mode="fast")


class TestFiroozbakhtRecordsMode:
    def test_all_hold(self):
        report = verify_firoozbakht(100_000, mode="records")
        assert report.outcome == ALL_HOLD
        assert report.stats["small_events"] == pi(89)
        assert report.stats["records_checked"] > 0

    def test_agrees_with_exhaustive(self):
        a = verify_firoozbakht(200_000, mode="exhaustive")
        b = verify_firoozbakht(200_000, mode="records")
        assert a.outcome == b.outcome == ALL_HOLD

    def test_supplied_record_table(self):
        table = scan_records(50_000)
        report = verify_firoozbakht(50_000, mode="records", record_table=table)
        assert report.outcome == ALL_HOLD
        expected = sum(1 for r in table.records if 89 <= r.p_start < 50_000)
        assert report.stats["records_checked"] == expected

    def test_coverage_argument_recorded(self):
        report = verify_firoozbakht(10_000, mode="records")
        assert "coverage" in report.stats


class TestCheckpoints:
    def test_final_checkpoint_written(self, tmp_path):
        path = str(tmp_path / "cp.json")
        verify_firoozbakht(20_000, checkpoint_path=path, config=SMALL_CFG)
        cp = Checkpoint.load(path)
        assert cp.limit == cp.last_hi == 20_000
        assert cp.last_prime == 19997
        assert cp.k_at_last_hi == pi(19_999)

    def test_resume_from_partial(self, tmp_path):
        path = str(tmp_path / "cp.json")
        limit = 30_000
        last_hi = 8192
        partial = Checkpoint(
            schema_version=1,
            limit=limit,
            last_hi=last_hi,
            k_at_last_hi=pi(last_hi - 1),
            last_prime=8191,
            records=[
                {"gap": r.gap, "p_start": r.p_start,
                 "k_start": r.k_start, "source": r.source}
                for r in scan_records(last_hi).records
                if r.p_start + r.gap < last_hi
            ],
        )
        partial.save(path)
        resumed = verify_firoozbakht(limit, checkpoint_path=path, config=SMALL_CFG)
        fresh = verify_firoozbakht(limit, config=SMALL_CFG)
        assert resumed.stats["resumed_from"] == last_hi
        assert resumed.outcome == fresh.outcome == ALL_HOLD
        assert resumed.stats["records_seen"] == fresh.stats["records_seen"]

    def test_checkpoint_for_other_limit_ignored(self, tmp_path):
        path = str(tmp_path / "cp.json")
        verify_firoozbakht(10_000, checkpoint_path=path, config=SMALL_CFG)
        report = verify_firoozbakht(20_000, checkpoint_path=path, config=SMALL_CFG)
        assert "resumed_from" not in report.stats

    def test_corrupted_last_prime_detected(self, tmp_path):
        path = str(tmp_path / "cp.json")
        cp = Checkpoint(1, 30_000, 8192, pi(8191), 8191, [])
        cp.last_prime = 8191 - 2  # not the real tail of that segment
        cp.save(path)
        with pytest.raises(CheckpointError):
            verify_firoozbakht(30_000, checkpoint_path=path, config=SMALL_CFG)

    def test_unsupported_schema(self, tmp_path):
        path = tmp_path / "cp.json"
        path.write_text(json.dumps({"schema_version": 99}))
        with pytest.raises(CheckpointError):
            Checkpoint.load(str(path))

    def test_revalidate_passes_on_honest_state(self):
        seg = sieve_range(4096, 8192, SMALL_CFG)
        cp = Checkpoint(1, 30_000, 8192, pi(8191), int(seg.primes[-1]), [])
        cp.revalidate(SMALL_CFG)  # must not raise


class TestSufficientConditions:
    def test_counts_at_one_million(self):
        report = verify_sufficient_conditions(1_000_000)
        assert report.outcome == ALL_HOLD
        assert report.stats["events"] == pi(999_999) - 9
        assert report.stats["hold_counts"] == [78489, 78489, 78488, 78488]
        assert report.stats["miss_counts"] == [0, 0, 1, 1]

    def test_miss_is_labeled_not_a_violation(self):
        report = verify_sufficient_conditions(1_000_000)
        misses = report.stats["sufficient_condition_misses"]
        assert {m["p_k"] for m in misses} == {31}
        assert {m["condition"] for m in misses} == {3, 4}
        assert report.witnesses == []  # conjecture screen found nothing

    def test_small_indices_excluded(self):
        # k <= 9 events (p < 29) never enter the tally
        report = verify_sufficient_conditions(29)
        assert report.stats["events"] == 0


class TestNearMissScan:
    def test_reference_window(self):
        report = near_miss_scan(2_100_000, lo=2_000_000)
        assert report.stats["near_misses"] == len(report.witnesses) == 615
        assert report.stats["boundary_ambiguous"] == []
        hit = [w for w in report.witnesses if w["p_k"] == 2010733]
        assert len(hit) == 1
        (w,) = hit
        assert w["q"] == 2010929
        assert w["p_next"] == 2010881
        assert w["gap"] == 148
        assert w["f_k"] < w["ell_k"]

    def test_near_miss_is_not_a_violation(self):
        report = near_miss_scan(2_100_000, lo=2_000_000)
        assert report.outcome == ALL_HOLD

    def test_gap_stays_under_power_bound(self):
        # the near-miss q is never the actual next prime here
        report = near_miss_scan(2_010_000, lo=2_000_000)
        for w in report.witnesses:
            assert w["gap"] < w["f_k"]
            assert w["q"] > w["p_next"]

    def test_lo_below_crossover_rejected(self):
        with pytest.raises(ValueError):
            near_miss_scan(100_000, lo=11782)

    def test_deterministic(self):
        a = near_miss_scan(2_020_000, lo=2_000_000)
        b = near_miss_scan(2_020_000, lo=2_000_000)
        assert a.comparable() == b.comparable()


class TestAsymptoticSandwich:
    def test_small_window(self):
        report = verify_asymptotic(2_000_000)
        assert report.outcome == ALL_HOLD
        assert report.stats["events"] == pi(1_999_999) - 133114
        assert report.stats["window_maxima_decreasing"]
        for w in report.stats["windows"]:
            assert w["sandwich_ok"]
            assert w["max_abs_dev"] > 0

    def test_limit_floor(self):
        with pytest.raises(ValueError):
            verify_asymptotic(1_000_000)


class TestFindCrossover:
    def test_known_crossover(self):
        assert find_crossover(100_000) == (1412, 11783)

    def test_consistent_across_segment_sizes(self):
        assert find_crossover(50_000, config=SMALL_CFG) == (1412, 11783)

    def test_last_failure_is_just_before(self):
        # index 1411 (p=11779) must still fail f < l
        from gapbounds.bounds import eval_ell, eval_f
        from gapbounds.sieve import nth_prime

        p = nth_prime(1411)
        assert p == 11779
        assert eval_f(1411, p).lo > eval_ell(p).hi
        assert next_prime_after(p) == 11783
