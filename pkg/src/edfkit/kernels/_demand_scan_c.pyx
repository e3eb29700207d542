# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled demand event scan.

An n-way merge over the per-task deadline event streams: pop the smallest
pending event, fold every task whose event coincides with it into the
running demand sum, then compare demand against the interval length.
O(n) memory and one heap operation per task event.
"""

from libc.stdlib cimport free, malloc


cdef struct HeapEntry:
    long long ev
    Py_ssize_t task


cdef inline void _sift_down(HeapEntry* h, Py_ssize_t start, Py_ssize_t end) noexcept:
    cdef HeapEntry item = h[start]
    cdef Py_ssize_t pos = start
    cdef Py_ssize_t child = 2 * pos + 1
    while child < end:
        if child + 1 < end and (h[child + 1].ev < h[child].ev or
                (h[child + 1].ev == h[child].ev and h[child + 1].task < h[child].task)):
            child += 1
        if h[child].ev < item.ev or (h[child].ev == item.ev and h[child].task < item.task):
            h[pos] = h[child]
            pos = child
            child = 2 * pos + 1
        else:
            break
    h[pos] = item


cdef inline void _sift_up(HeapEntry* h, Py_ssize_t pos) noexcept:
    cdef HeapEntry item = h[pos]
    cdef Py_ssize_t parent
    while pos > 0:
        parent = (pos - 1) >> 1
        if item.ev < h[parent].ev or (item.ev == h[parent].ev and item.task < h[parent].task):
            h[pos] = h[parent]
            pos = parent
        else:
            break
    h[pos] = item


def pd_scan(long long[::1] wcets, long long[::1] deadlines, long long[::1] periods,
            long long ev_max, long long cap=0):
    """Scan distinct deadline events up to ev_max against accumulated demand.

    Returns (status, witness, checked): status 0 means the whole range was
    scanned without a violation, 1 means the demand exceeded the interval at
    `witness`, 2 means `cap` distinct events were checked and events remain.
    Caller guarantees all event values and demand totals fit in int64.
    """
    cdef Py_ssize_t n = wcets.shape[0]
    cdef HeapEntry* heap = <HeapEntry*> malloc(n * sizeof(HeapEntry))
    if heap == NULL:
        raise MemoryError()
    cdef Py_ssize_t size = 0
    cdef Py_ssize_t i
    for i in range(n):
        if deadlines[i] <= ev_max:
            heap[size].ev = deadlines[i]
            heap[size].task = i
            size += 1
            _sift_up(heap, size - 1)

    cdef long long demand = 0
    cdef long long checked = 0
    cdef long long v, nxt
    cdef Py_ssize_t task
    cdef int status = 0
    cdef long long witness = -1
    try:
        while size > 0:
            v = heap[0].ev
            while size > 0 and heap[0].ev == v:
                task = heap[0].task
                demand += wcets[task]
                nxt = v + periods[task]
                if nxt <= ev_max:
                    heap[0].ev = nxt
                    _sift_down(heap, 0, size)
                else:
                    size -= 1
                    heap[0] = heap[size]
                    if size > 0:
                        _sift_down(heap, 0, size)
            checked += 1
            if demand > v:
                status = 1
                witness = v
                break
            if cap > 0 and checked == cap and size > 0:
                status = 2
                break
    finally:
        free(heap)
    return status, (witness if status == 1 else None), checked
