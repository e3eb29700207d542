"""Demand-bound algebra and feasibility horizons.

The exact demand bound function dbf(I) counts the work of all jobs that
both arrive and have their deadline inside any interval of length I under
the synchronous release pattern.  The approximated variant dbf* follows
dbf exactly for the first `level` jobs of a task and continues linearly
with slope C/T afterwards, which makes it an upper bound on dbf.  The
remaining helpers step through test intervals, price the approximation
error at a point, and compute the horizons beyond which no first demand
violation can occur.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from edfkit.model import HorizonUnavailableError, Task, TaskSet, utilization

# Practical integer range for event enumeration.  Horizons and event values
# beyond this cannot be handed to the 64-bit scan kernels, so exact analyses
# refuse them instead of risking a wrong answer.
EVENT_RANGE_LIMIT = 2**62


@dataclass(frozen=True)
class DemandPoint:
    """A (interval, demand) sample of dbf or dbf*."""

    interval: int
    demand: Fraction


@dataclass(frozen=True)
class Horizon:
    """A feasibility horizon: checking all events below `value` suffices.

    value is an exact rational, or None when the bound is unbounded (not
    produced by any of the bounds implemented here, but part of the
    contract).  source names the bound that produced the value.
    """

    value: Optional[Fraction]
    source: str


def dbf_task(interval: int, task: Task) -> int:
    """Demand of one task in an interval of the given length.

    Zero below the first deadline, then one extra job every period.
    """
    if interval < task.deadline:
        return 0
    return ((interval - task.deadline) // task.period + 1) * task.wcet


def dbf(interval: int, ts: TaskSet) -> int:
    """Total demand bound of the set in an interval of the given length."""
    return sum(dbf_task(interval, t) for t in ts.tasks)


def im_level(task: Task, level: int) -> int:
    """Largest interval up to which a task is tracked exactly at `level`.

    At level x the first x jobs are exact, so the switch point sits at the
    deadline of job x: (x - 1) * T + D.
    """
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    return (level - 1) * task.period + task.deadline


def dbf_star_task(interval: int, task: Task, im: int) -> Fraction:
    """Approximated demand of one task: exact up to im, linear after it."""
    if interval <= im:
        return Fraction(dbf_task(interval, task))
    return dbf_task(im, task) + task.utilization * (interval - im)


def next_int(interval: int, task: Task) -> int:
    """First deadline of the task strictly after `interval`.

    Only defined from the task's first deadline on.
    """
    if interval < task.deadline:
        raise ValueError(
            f"next_int requires interval >= deadline ({interval} < {task.deadline})"
        )
    return ((interval - task.deadline) // task.period + 1) * task.period + task.deadline


def app_cost(interval: int, task: Task) -> Fraction:
    """Approximation error of the linear extension at `interval`.

    This is the gap between the line of slope C/T anchored at the last
    deadline event and the exact step function; it lives in [0, C) and is
    zero exactly at the task's deadline events.
    """
    if interval < task.deadline:
        raise ValueError(
            f"app_cost requires interval >= deadline ({interval} < {task.deadline})"
        )
    return Fraction(
        (interval - task.deadline) % task.period * task.wcet, task.period
    )


def _require_underutilized(ts: TaskSet) -> Fraction:
    u = utilization(ts)
    if u >= 1:
        raise ValueError("bound requires total utilization < 1")
    return u


def bound_baruah(ts: TaskSet) -> Horizon:
    """Horizon U / (1 - U) * max(T_i - D_i), clamped to be nonnegative."""
    u = _require_underutilized(ts)
    slack = max(t.period - t.deadline for t in ts.tasks)
    value = max(Fraction(0), u / (1 - u) * slack)
    return Horizon(value, "baruah")


def bound_george(ts: TaskSet) -> Horizon:
    """Horizon sum((1 - D_i/T_i) * C_i) / (1 - U) over tasks with D_i <= T_i."""
    u = _require_underutilized(ts)
    s = sum(
        ((1 - Fraction(t.deadline, t.period)) * t.wcet
         for t in ts.tasks if t.deadline <= t.period),
        Fraction(0),
    )
    return Horizon(s / (1 - u), "george")


def bound_superposition(ts: TaskSet) -> Horizon:
    """Horizon max(D_max, sum((1 - D_i/T_i) * C_i) / (1 - U)) over all tasks.

    Unlike the George bound the sum runs over every task, so tasks with
    D > T contribute negative terms; the max with the largest deadline
    keeps the horizon sound in that case.
    """
    u = _require_underutilized(ts)
    s = sum(
        ((1 - Fraction(t.deadline, t.period)) * t.wcet for t in ts.tasks),
        Fraction(0),
    )
    d_max = max(t.deadline for t in ts.tasks)
    return Horizon(max(Fraction(d_max), s / (1 - u)), "superposition")


def test_horizon(ts: TaskSet) -> Horizon:
    """The horizon used by the exact and approximated event-scan tests.

    For U < 1 this is the smallest of the three analytic bounds; at U = 1
    it falls back to the hyperperiod.  Not defined for overloaded sets.
    """
    u = utilization(ts)
    if u > 1:
        raise ValueError("no horizon for an overloaded set (U > 1)")
    if u == 1:
        h = math.lcm(*(t.period for t in ts.tasks))
        if h > EVENT_RANGE_LIMIT:
            raise HorizonUnavailableError(
                f"hyperperiod {h} exceeds the supported event range"
            )
        return Horizon(Fraction(h), "hyperperiod")
    candidates = (bound_baruah(ts), bound_george(ts), bound_superposition(ts))
    best = min(candidates, key=lambda hz: hz.value)
    return Horizon(best.value, "combined")


def event_range_guard(ts: TaskSet, ev_max: Union[int, Fraction]) -> None:
    """Refuse event scans whose values or demand sums could leave int64.

    Checks, in exact arithmetic, that every enumerated event (plus one
    period of lookahead) and the total demand at the last event stay inside
    the 63-bit signed range.
    """
    ev_max = math.floor(ev_max)
    if ev_max < 0:
        return
    t_max = max(t.period for t in ts.tasks)
    if ev_max > EVENT_RANGE_LIMIT or ev_max + t_max >= 2**63:
        raise HorizonUnavailableError(
            f"event range up to {ev_max} exceeds the supported 63-bit range"
        )
    if dbf(ev_max, ts) >= 2**63:
        raise HorizonUnavailableError(
            f"total demand at {ev_max} exceeds the supported 63-bit range"
        )
