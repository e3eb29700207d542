"""Oracles: agreement with the analytic route and with each other."""

import random

import pytest

from edfkit import analysis, oracle
from edfkit.model import HorizonUnavailableError, Outcome, Task, TaskSet

from _support import gamma_a, gamma_b, make_ts, ref_hyperperiod, sample_small_taskset


def test_scan_oracle_examples():
    v = oracle.oracle_dbf_scan(gamma_a())
    assert v.outcome is Outcome.FEASIBLE
    assert v.stats.horizon_used == 16  # hyperperiod 12 plus largest deadline 4
    v = oracle.oracle_dbf_scan(gamma_b())
    assert (v.outcome, v.witness) == (Outcome.INFEASIBLE, 2)
    v = oracle.oracle_dbf_scan(make_ts([(1, 1, 1)]))
    assert v.outcome is Outcome.FEASIBLE


def test_sim_oracle_examples():
    v = oracle.oracle_edf_sim(gamma_a())
    assert v.outcome is Outcome.FEASIBLE
    v = oracle.oracle_edf_sim(gamma_b())
    assert v.outcome is Outcome.INFEASIBLE
    assert v.witness == 2
    v = oracle.oracle_edf_sim(make_ts([(1, 1, 1)]))
    assert v.outcome is Outcome.FEASIBLE


def test_overload_precheck_has_no_witness():
    ts = make_ts([(2, 2, 2), (1, 2, 2)])
    for fn in (oracle.oracle_dbf_scan, oracle.oracle_edf_sim):
        v = fn(ts)
        assert (v.outcome, v.witness) == (Outcome.INFEASIBLE, None)
        assert v.stats.intervals_checked == 1


def test_hyperperiod_limit():
    primes = (10007, 10009, 10037, 10039)
    ts = TaskSet(tuple(Task(1, p, p) for p in primes))
    for fn in (oracle.oracle_dbf_scan, oracle.oracle_edf_sim):
        with pytest.raises(HorizonUnavailableError):
            fn(ts, hyperperiod_limit=10**6)


def test_simulate_edf_trace():
    trace = oracle.simulate_edf(gamma_b(), 20)
    assert trace.first_miss == (2, 1)
    assert trace.horizon == 20
    trace = oracle.simulate_edf(gamma_a(), 16)
    assert trace.first_miss is None
    # 12 ticks of hyperperiod: 3 jobs of one task, 2 of the other, plus the
    # releases at 12 resolved inside the deadline margin
    assert trace.jobs_resolved >= 5


def test_oracles_agree_with_each_other():
    rnd = random.Random(10001)
    for _ in range(300):
        ts = sample_small_taskset(rnd, hyper_cap=50_000)
        scan = oracle.oracle_dbf_scan(ts)
        sim = oracle.oracle_edf_sim(ts)
        assert scan.outcome is sim.outcome, ts
        if scan.outcome is Outcome.INFEASIBLE and scan.witness is not None:
            # the simulator can only notice a miss at or before the first
            # demand violation
            assert sim.witness is not None
            assert sim.witness <= scan.witness


def test_oracles_agree_with_exact_tests():
    rnd = random.Random(10002)
    for _ in range(300):
        ts = sample_small_taskset(rnd, hyper_cap=50_000)
        expected = analysis.test_processor_demand(ts).outcome
        assert oracle.oracle_dbf_scan(ts).outcome is expected, ts
        assert oracle.oracle_edf_sim(ts).outcome is expected, ts


def test_scan_witness_matches_exact_witness():
    rnd = random.Random(10003)
    hits = 0
    for _ in range(300):
        ts = sample_small_taskset(rnd, hyper_cap=50_000)
        if ts.utilization > 1:
            continue
        pd = analysis.test_processor_demand(ts)
        if pd.outcome is Outcome.INFEASIBLE:
            hits += 1
            assert oracle.oracle_dbf_scan(ts).witness == pd.witness
    assert hits > 20


def test_scan_checks_every_event_when_feasible():
    ts = gamma_a()
    v = oracle.oracle_dbf_scan(ts)
    end = ref_hyperperiod(ts) + 4
    events = {d for d in range(2, end + 1, 4)} | {d for d in range(4, end + 1, 6)}
    assert v.stats.intervals_checked == len(events)
