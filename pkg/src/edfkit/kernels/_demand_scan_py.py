"""Vectorized fallback for the demand event scan.

Walks every task deadline event in [0, ev_max] in ascending order and
compares the accumulated demand with the interval length at each distinct
event value.  Events are generated in bounded value-range chunks so memory
stays flat no matter how long the scan is; within a chunk numpy does the
sorting and the running demand sum.
"""

from __future__ import annotations

import numpy as np

_CHUNK_EVENTS = 1 << 20


def _first_event_at_or_after(lo: int, deadline: int, period: int) -> int:
    if lo <= deadline:
        return deadline
    return deadline + -(-(lo - deadline) // period) * period


def pd_scan(wcets, deadlines, periods, ev_max: int, cap: int = 0):
    """Scan distinct deadline events up to ev_max against accumulated demand.

    Returns (status, witness, checked): status 0 means the whole range was
    scanned without a violation, 1 means the demand exceeded the interval at
    `witness`, 2 means `cap` distinct events were checked and events remain.
    Caller guarantees all event values and demand totals fit in int64.
    """
    wcets = np.asarray(wcets, dtype=np.int64)
    deadlines = np.asarray(deadlines, dtype=np.int64)
    periods = np.asarray(periods, dtype=np.int64)
    n = len(wcets)
    if ev_max < 0:
        return 0, None, 0

    total_estimate = 0
    for i in range(n):
        d = int(deadlines[i])
        if d <= ev_max:
            total_estimate += (ev_max - d) // int(periods[i]) + 1
    if total_estimate == 0:
        return 0, None, 0
    chunks = -(-total_estimate // _CHUNK_EVENTS)
    width = max(1, -(-(ev_max + 1) // chunks))

    base = 0          # demand accumulated in earlier chunks
    checked = 0       # distinct events evaluated so far
    lo = 0
    while lo <= ev_max:
        hi = min(lo + width, ev_max + 1)
        parts = []
        weights = []
        for i in range(n):
            start = _first_event_at_or_after(lo, int(deadlines[i]), int(periods[i]))
            if start < hi:
                ev = np.arange(start, hi, int(periods[i]), dtype=np.int64)
                parts.append(ev)
                weights.append(np.full(len(ev), wcets[i], dtype=np.int64))
        lo = hi
        if not parts:
            continue
        vals = np.concatenate(parts)
        work = np.concatenate(weights)
        order = np.argsort(vals, kind="stable")
        vals = vals[order]
        running = base + np.cumsum(work[order])
        # demand at a distinct event is the running sum at the last entry
        # of its run of duplicates
        last = np.nonzero(np.append(vals[1:] != vals[:-1], True))[0]
        events = vals[last]
        demand = running[last]
        base = int(running[-1])

        m = len(events)
        limit = m
        if cap > 0 and checked + m > cap:
            limit = cap - checked
        bad = np.nonzero(demand[:limit] > events[:limit])[0]
        if len(bad):
            k = int(bad[0])
            return 1, int(events[k]), checked + k + 1
        checked += limit
        if limit < m:
            return 2, None, checked
        if cap > 0 and checked == cap and _events_remain(deadlines, periods, lo, ev_max):
            return 2, None, checked
    return 0, None, checked


def _events_remain(deadlines, periods, lo: int, ev_max: int) -> bool:
    for i in range(len(deadlines)):
        if _first_event_at_or_after(lo, int(deadlines[i]), int(periods[i])) <= ev_max:
            return True
    return False
