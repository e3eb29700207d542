"""Pure-Python fallback for the EDF simulator.

Event-driven preemptive EDF on the synchronous release pattern: the clock
jumps between job completions and releases instead of ticking, so runtime
scales with the number of jobs, not with the horizon length.  Ties are
broken deterministically by (deadline, release, task index).
"""

from __future__ import annotations

import heapq


def edf_sim(wcets, deadlines, periods, end: int):
    """Simulate EDF until `end`, reporting the first deadline miss.

    Returns (miss_time, miss_task, jobs_resolved); miss_time is -1 when
    every job with a deadline in [0, end] completes on time.  Jobs released
    by `end` but due after it are not judged.  Caller guarantees all times
    fit in int64.
    """
    n = len(wcets)
    wcets = [int(c) for c in wcets]
    deadlines = [int(d) for d in deadlines]
    periods = [int(t) for t in periods]

    releases = [(0, i) for i in range(n)]
    heapq.heapify(releases)
    jobs = []  # [deadline, release, task, remaining]
    t = 0
    resolved = 0

    def release_due(now: int) -> None:
        while releases and releases[0][0] <= now:
            r, i = heapq.heappop(releases)
            heapq.heappush(jobs, [r + deadlines[i], r, i, wcets[i]])
            nxt = r + periods[i]
            if nxt <= end:
                heapq.heappush(releases, (nxt, i))

    release_due(0)
    while jobs or releases:
        if not jobs:
            t = max(t, releases[0][0])
            release_due(t)
            continue
        job = jobs[0]
        nr = releases[0][0] if releases else end + 1
        done = t + job[3]
        if done <= nr:
            if done <= job[0]:
                heapq.heappop(jobs)
                t = done
                resolved += 1
                continue
            # no release intervenes before the deadline, so the miss is certain
            if job[0] > end:
                break
            return job[0], job[2], resolved + 1
        if job[0] <= nr:
            if job[0] > end:
                break
            return job[0], job[2], resolved + 1
        if not releases:
            # head deadline beyond end + 1 and nothing left to release
            break
        job[3] -= nr - t
        t = nr
        release_due(t)
    return -1, -1, resolved
