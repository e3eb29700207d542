"""Brute-force feasibility oracles.

Both oracles are deliberately independent of the demand-algebra module:
the scan recomputes per-task demand from first principles at every event,
and the simulator executes the synchronous release pattern under EDF.
They exist to cross-check the analytic tests, not to be fast, and both
enumerate up to hyperperiod + max deadline, which covers every distinct
demand situation of the synchronous pattern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from edfkit import kernels
from edfkit.model import (
    HorizonUnavailableError,
    IterationStats,
    Outcome,
    TaskSet,
    Verdict,
    utilization,
)

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class SimTrace:
    """Outcome of one EDF simulation run.

    first_miss is (time, task_index) for the earliest deadline miss inside
    the simulated window, or None; jobs_resolved counts completed jobs plus
    the missed one, if any.
    """

    first_miss: Optional[tuple[int, int]]
    horizon: int
    jobs_resolved: int


def _scan_end(ts: TaskSet, hyperperiod_limit: Optional[int]) -> int:
    lcm = 1
    for t in ts.tasks:
        lcm = lcm * t.period // math.gcd(lcm, t.period)
        if hyperperiod_limit is not None and lcm > hyperperiod_limit:
            raise HorizonUnavailableError(
                f"hyperperiod exceeds the oracle limit {hyperperiod_limit}"
            )
    end = lcm + max(t.deadline for t in ts.tasks)
    t_max = max(t.period for t in ts.tasks)
    if end + t_max >= _INT64_MAX:
        raise HorizonUnavailableError(
            f"oracle horizon {end} exceeds the supported integer range"
        )
    total = 0
    for t in ts.tasks:
        total += ((end - t.deadline) // t.period + 1) * t.wcet
    if total >= _INT64_MAX:
        raise HorizonUnavailableError(
            f"total demand at {end} exceeds the supported integer range"
        )
    return end


def oracle_dbf_scan(
    ts: TaskSet, *, hyperperiod_limit: Optional[int] = None
) -> Verdict:
    """Check demand directly at every deadline event up to hyperperiod plus
    the largest deadline, recomputing each task's job count from scratch."""
    if utilization(ts) > 1:
        return Verdict(Outcome.INFEASIBLE, IterationStats(intervals_checked=1))
    end = _scan_end(ts, hyperperiod_limit)
    events = np.unique(
        np.concatenate(
            [
                np.arange(t.deadline, end + 1, t.period, dtype=np.int64)
                for t in ts.tasks
            ]
        )
    )
    total = np.zeros(len(events), dtype=np.int64)
    for t in ts.tasks:
        live = events >= t.deadline
        total[live] += ((events[live] - t.deadline) // t.period + 1) * t.wcet
    bad = np.nonzero(total > events)[0]
    if len(bad):
        first = int(bad[0])
        return Verdict(
            Outcome.INFEASIBLE,
            IterationStats(intervals_checked=first + 1, horizon_used=end),
            int(events[first]),
        )
    return Verdict(
        Outcome.FEASIBLE,
        IterationStats(intervals_checked=len(events), horizon_used=end),
    )


def simulate_edf(ts: TaskSet, end: int) -> SimTrace:
    """Run the EDF simulation kernel over [0, end]."""
    wcets = np.array([t.wcet for t in ts.tasks], dtype=np.int64)
    deadlines = np.array([t.deadline for t in ts.tasks], dtype=np.int64)
    periods = np.array([t.period for t in ts.tasks], dtype=np.int64)
    miss_time, miss_task, resolved = kernels.edf_sim(wcets, deadlines, periods, end)
    first_miss = None if miss_time < 0 else (int(miss_time), int(miss_task))
    return SimTrace(first_miss=first_miss, horizon=end, jobs_resolved=int(resolved))


def oracle_edf_sim(
    ts: TaskSet, *, hyperperiod_limit: Optional[int] = None
) -> Verdict:
    """Simulate the synchronous pattern under EDF up to hyperperiod plus the
    largest deadline and report the first deadline miss, if any."""
    if utilization(ts) > 1:
        return Verdict(Outcome.INFEASIBLE, IterationStats(intervals_checked=1))
    end = _scan_end(ts, hyperperiod_limit)
    trace = simulate_edf(ts, end)
    stats = IterationStats(
        intervals_checked=max(trace.jobs_resolved, 1), horizon_used=end
    )
    if trace.first_miss is not None:
        return Verdict(Outcome.INFEASIBLE, stats, trace.first_miss[0])
    return Verdict(Outcome.FEASIBLE, stats)
