"""Compare the compiled event-scan and simulator kernels with the pure
Python fallbacks on generator-made workloads.

Run as `python3 benchmarks/kernel_bench.py`.  Reports per-shape wall times
and the speedup of the compiled kernel; when the compiled extensions are
absent it still times the fallbacks and says so.
"""

import argparse
import math
import time
from fractions import Fraction

import numpy as np

from edfkit import demand, kernels
from edfkit.generator import GenParams, gen_taskset
from edfkit.kernels import _demand_scan_py, _edf_sim_py

try:
    from edfkit.kernels import _demand_scan_c, _edf_sim_c
except ImportError:
    _demand_scan_c = None
    _edf_sim_c = None

SHAPES = (
    ("small-tight", GenParams(
        n_min=5, n_max=10, u_min=Fraction(85, 100), u_max=Fraction(95, 100),
        gap_avg=Fraction(3, 10), t_min=100, t_max=1000, seed=1, count=1)),
    ("mid-spread", GenParams(
        n_min=20, n_max=40, u_min=Fraction(90, 100), u_max=Fraction(97, 100),
        gap_avg=Fraction(3, 10), t_min=1000, t_max=10**5, seed=2, count=1)),
    ("wide-spread", GenParams(
        n_min=40, n_max=80, u_min=Fraction(90, 100), u_max=Fraction(98, 100),
        gap_avg=Fraction(2, 10), t_min=1000, t_max=10**6, seed=3, count=1)),
    ("near-capacity", GenParams(
        n_min=40, n_max=80, u_min=Fraction(99, 100), u_max=Fraction(998, 1000),
        gap_avg=Fraction(3, 10), t_min=1000, t_max=10**5, seed=4, count=1)),
)


def _arrays(ts):
    return (
        np.array([t.wcet for t in ts.tasks], dtype=np.int64),
        np.array([t.deadline for t in ts.tasks], dtype=np.int64),
        np.array([t.period for t in ts.tasks], dtype=np.int64),
    )


def _time(fn, *args, repeats=3):
    best = math.inf
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_scan(ts, rows):
    horizon = demand.test_horizon(ts)
    ev_max = math.ceil(horizon.value) - 1
    wcets, deadlines, periods = _arrays(ts)
    py_t, py_r = _time(_demand_scan_py.pd_scan, wcets, deadlines, periods, ev_max, 0)
    if _demand_scan_c is not None:
        c_t, c_r = _time(_demand_scan_c.pd_scan, wcets, deadlines, periods, ev_max, 0)
        assert c_r == py_r, f"kernel mismatch: {c_r} vs {py_r}"
    else:
        c_t = None
    rows.append(("pd_scan", py_r[2], py_t, c_t))


def bench_sim(ts, rows):
    horizon = demand.test_horizon(ts)
    end = min(math.ceil(horizon.value), 10**6)
    wcets, deadlines, periods = _arrays(ts)
    py_t, py_r = _time(_edf_sim_py.edf_sim, wcets, deadlines, periods, end)
    if _edf_sim_c is not None:
        c_t, c_r = _time(_edf_sim_c.edf_sim, wcets, deadlines, periods, end)
        assert c_r == py_r, f"kernel mismatch: {c_r} vs {py_r}"
    else:
        c_t = None
    rows.append(("edf_sim", py_r[2], py_t, c_t))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sets", type=int, default=3,
                        help="sets per shape (default %(default)s)")
    args = parser.parse_args()

    backends = kernels.backends()
    print(f"active backends: pd_scan={backends['pd_scan']}, "
          f"edf_sim={backends['edf_sim']}")
    if _demand_scan_c is None:
        print("compiled kernels not built; timing the Python fallbacks only")

    print(f"{'kernel':<10} {'shape':<12} {'work':>12} {'python':>12} "
          f"{'compiled':>12} {'speedup':>9}")
    for shape_name, params in SHAPES:
        for index in range(args.sets):
            ts = gen_taskset(params, index)
            rows = []
            bench_scan(ts, rows)
            bench_sim(ts, rows)
            for kernel, work, py_t, c_t in rows:
                compiled = f"{c_t * 1000:10.2f}ms" if c_t is not None else "         -"
                speedup = f"{py_t / c_t:8.1f}x" if c_t else "        -"
                print(f"{kernel:<10} {shape_name:<12} {work:>12} "
                      f"{py_t * 1000:10.2f}ms {compiled} {speedup}")


if __name__ == "__main__":
    main()
