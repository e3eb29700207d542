# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled EDF simulator.

Event-driven preemptive EDF on the synchronous release pattern, matching
the Python fallback decision for decision: the clock jumps between job
completions and releases, and ties break by (deadline, release, task).
"""

from libc.stdlib cimport free, malloc


cdef struct Job:
    long long deadline
    long long release
    long long task
    long long remaining


cdef inline bint _job_lt(Job* a, Job* b) noexcept:
    if a.deadline != b.deadline:
        return a.deadline < b.deadline
    if a.release != b.release:
        return a.release < b.release
    return a.task < b.task


cdef inline void _jsift_down(Job* h, Py_ssize_t start, Py_ssize_t end) noexcept:
    cdef Job item = h[start]
    cdef Py_ssize_t pos = start
    cdef Py_ssize_t child = 2 * pos + 1
    while child < end:
        if child + 1 < end and _job_lt(&h[child + 1], &h[child]):
            child += 1
        if _job_lt(&h[child], &item):
            h[pos] = h[child]
            pos = child
            child = 2 * pos + 1
        else:
            break
    h[pos] = item


cdef inline void _jsift_up(Job* h, Py_ssize_t pos) noexcept:
    cdef Job item = h[pos]
    cdef Py_ssize_t parent
    while pos > 0:
        parent = (pos - 1) >> 1
        if _job_lt(&item, &h[parent]):
            h[pos] = h[parent]
            pos = parent
        else:
            break
    h[pos] = item


def edf_sim(long long[::1] wcets, long long[::1] deadlines, long long[::1] periods,
            long long end):
    """Simulate EDF until `end`, reporting the first deadline miss.

    Returns (miss_time, miss_task, jobs_resolved); miss_time is -1 when
    every job with a deadline in [0, end] completes on time.  Jobs released
    by `end` but due after it are not judged.  Caller guarantees all times
    fit in int64.
    """
    cdef Py_ssize_t n = wcets.shape[0]
    cdef Py_ssize_t i

    # pending jobs of one task: floor(D/T) + 1 overlapping windows, plus one
    # job that may linger at its completion instant
    cdef Py_ssize_t capacity = 0
    for i in range(n):
        capacity += deadlines[i] // periods[i] + 2
    cdef Job* jobs = <Job*> malloc(capacity * sizeof(Job))
    cdef long long* next_release = <long long*> malloc(n * sizeof(long long))
    if jobs == NULL or next_release == NULL:
        free(jobs)
        free(next_release)
        raise MemoryError()
    for i in range(n):
        next_release[i] = 0

    cdef Py_ssize_t size = 0
    cdef long long t = 0
    cdef long long resolved = 0
    cdef long long miss_time = -1
    cdef long long miss_task = -1
    cdef long long nr, done, r
    cdef Py_ssize_t which

    try:
        while True:
            # earliest pending release
            nr = end + 1
            which = -1
            for i in range(n):
                if next_release[i] <= end and next_release[i] < nr:
                    nr = next_release[i]
                    which = i
            if size == 0:
                if which < 0:
                    break
                if t < nr:
                    t = nr
            if size > 0:
                done = t + jobs[0].remaining
                if done <= nr:
                    if done <= jobs[0].deadline:
                        t = done
                        resolved += 1
                        size -= 1
                        jobs[0] = jobs[size]
                        if size > 0:
                            _jsift_down(jobs, 0, size)
                        continue
                    if jobs[0].deadline > end:
                        break
                    miss_time = jobs[0].deadline
                    miss_task = jobs[0].task
                    resolved += 1
                    break
                if jobs[0].deadline <= nr:
                    if jobs[0].deadline > end:
                        break
                    miss_time = jobs[0].deadline
                    miss_task = jobs[0].task
                    resolved += 1
                    break
                if which < 0:
                    # head deadline beyond end + 1 and nothing left to release
                    break
                jobs[0].remaining -= nr - t
                t = nr
            # release every job due at the current instant
            for i in range(n):
                r = next_release[i]
                while r <= end and r <= t:
                    if size == capacity:
                        raise RuntimeError("job buffer overflow")
                    jobs[size].deadline = r + deadlines[i]
                    jobs[size].release = r
                    jobs[size].task = i
                    jobs[size].remaining = wcets[i]
                    size += 1
                    _jsift_up(jobs, size - 1)
                    r += periods[i]
                next_release[i] = r
    finally:
        free(jobs)
        free(next_release)
    return miss_time, miss_task, resolved
