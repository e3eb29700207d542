"""Experiment harness: populations of random sets, five algorithms each.

Two experiments are built in.  The utilization experiment varies the
average deadline gap over three cells; the period-ratio experiment varies
t_max/t_min from 100 to 1000000 with the gap drawn per set.  Each set is
addressable as (seed, index) through the generator, so any row of a run
can be re-materialized exactly; cells of the utilization experiment share
their underlying draws and differ only in the gap scale, which pairs the
populations across cells.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from edfkit import analysis
from edfkit.generator import GenParams, gen_taskset
from edfkit.model import HorizonUnavailableError, Outcome

ALGORITHMS = ("devi", "superpos1", "pd", "dynamic", "allapprox")

GAP_CELLS = (Fraction(2, 10), Fraction(3, 10), Fraction(4, 10))
RATIO_CELLS = (100, 1000, 10**4, 10**5, 10**6)

DEFAULT_PD_CAP = 10**8

_N_RANGE = (5, 100)
_GAP_U_WINDOW = (Fraction(90, 100), Fraction(99, 100))
_RATIO_U_WINDOW = (Fraction(90, 100), Fraction(1))
_GAP_T_RANGE = (1000, 10**7)
_RATIO_T_MIN = 1000
_RATIO_GAP_RANGE = (0.1, 0.5)

_CSV_HEADER = (
    "experiment,param,algorithm,sets,avg_iterations,max_iterations,"
    "accept_rate,infeasible_rate,excluded"
)


@dataclass(frozen=True)
class ExperimentRow:
    """One aggregated CSV row: one algorithm in one cell."""

    experiment: str
    param: float
    algorithm: str
    sets: int
    avg_iterations: float
    max_iterations: int
    accept_rate: float
    infeasible_rate: float
    excluded: int


@dataclass(frozen=True)
class SetResult:
    """One algorithm's run on one generated set.

    outcome is None when the run was excluded; excluded carries the reason
    ("iteration-cap" or "horizon-unavailable")."""

    index: int
    algorithm: str
    outcome: Optional[Outcome]
    intervals: int
    excluded: Optional[str]


@dataclass(frozen=True)
class _CellSpec:
    experiment: str
    param: Fraction
    seed: int
    pd_cap: int


def _params_for(spec: _CellSpec, index: int) -> GenParams:
    if spec.experiment == "utilization":
        return GenParams(
            n_min=_N_RANGE[0],
            n_max=_N_RANGE[1],
            u_min=_GAP_U_WINDOW[0],
            u_max=_GAP_U_WINDOW[1],
            gap_avg=spec.param,
            t_min=_GAP_T_RANGE[0],
            t_max=_GAP_T_RANGE[1],
            seed=spec.seed,
            count=1,
        )
    if spec.experiment == "period-ratio":
        # per-set gap, drawn from a stream disjoint from the set's own
        gap_rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(spec.seed, spawn_key=(index, 1)))
        )
        lo, hi = _RATIO_GAP_RANGE
        gap = Fraction(gap_rng.uniform(lo, hi))
        return GenParams(
            n_min=_N_RANGE[0],
            n_max=_N_RANGE[1],
            u_min=_RATIO_U_WINDOW[0],
            u_max=_RATIO_U_WINDOW[1],
            gap_avg=gap,
            t_min=_RATIO_T_MIN,
            t_max=_RATIO_T_MIN * int(spec.param),
            seed=spec.seed,
            count=1,
        )
    raise ValueError(f"unknown experiment {spec.experiment!r}")


def _run_algorithms(ts, pd_cap: int) -> list[tuple]:
    out = []
    for name in ALGORITHMS:
        try:
            if name == "devi":
                v = analysis.test_devi(ts)
            elif name == "superpos1":
                v = analysis.test_superpos(ts, 1)
            elif name == "pd":
                v = analysis.test_processor_demand(ts, iteration_cap=pd_cap)
            elif name == "dynamic":
                v = analysis.test_dynamic(ts)
            else:
                v = analysis.test_all_approx(ts)
        except HorizonUnavailableError:
            out.append((name, None, 0, "horizon-unavailable"))
            continue
        if name == "pd" and v.outcome is Outcome.UNKNOWN:
            out.append((name, None, v.stats.intervals_checked, "iteration-cap"))
            continue
        out.append((name, v.outcome, v.stats.intervals_checked, None))
    return out


def _worker(args) -> tuple:
    spec, index = args
    ts = gen_taskset(_params_for(spec, index), index)
    return index, _run_algorithms(ts, spec.pd_cap)


def collect_cell(
    spec: _CellSpec, sets: int, jobs: Optional[int]
) -> list[SetResult]:
    """Generate and analyze every set of one cell; per-set results, in
    index order."""
    payloads = [(spec, i) for i in range(sets)]
    if jobs == 1:
        raw = map(_worker, payloads)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            raw = list(pool.map(_worker, payloads, chunksize=max(1, sets // 64)))
    results = []
    for index, runs in raw:
        for name, outcome, intervals, excluded in runs:
            results.append(SetResult(index, name, outcome, intervals, excluded))
    return results


def aggregate(
    experiment: str, param, records: list[SetResult]
) -> list[ExperimentRow]:
    """Fold per-set records into one row per algorithm.

    Excluded runs count only in the excluded column; the sets column and
    every statistic cover the included runs alone.
    """
    rows = []
    for name in ALGORITHMS:
        included = [r for r in records if r.algorithm == name and r.excluded is None]
        excluded = sum(
            1 for r in records if r.algorithm == name and r.excluded is not None
        )
        sets = len(included)
        avg = sum(r.intervals for r in included) / sets if sets else 0.0
        mx = max((r.intervals for r in included), default=0)
        accept = (
            sum(1 for r in included if r.outcome is Outcome.FEASIBLE) / sets
            if sets else 0.0
        )
        infeasible = (
            sum(1 for r in included if r.outcome is Outcome.INFEASIBLE) / sets
            if sets else 0.0
        )
        rows.append(
            ExperimentRow(
                experiment=experiment,
                param=float(param),
                algorithm=name,
                sets=sets,
                avg_iterations=avg,
                max_iterations=mx,
                accept_rate=accept,
                infeasible_rate=infeasible,
                excluded=excluded,
            )
        )
    return rows


def run_experiment_utilization(
    sets_per_cell: int,
    seed: int,
    *,
    jobs: Optional[int] = None,
    pd_iteration_cap: int = DEFAULT_PD_CAP,
) -> list[ExperimentRow]:
    """Iteration counts across the three deadline-gap cells."""
    rows = []
    for gap in GAP_CELLS:
        spec = _CellSpec("utilization", gap, seed, pd_iteration_cap)
        records = collect_cell(spec, sets_per_cell, jobs)
        rows.extend(aggregate("utilization", gap, records))
    return rows


def run_experiment_period_ratio(
    sets_per_cell: int,
    seed: int,
    *,
    jobs: Optional[int] = None,
    pd_iteration_cap: int = DEFAULT_PD_CAP,
) -> list[ExperimentRow]:
    """Iteration scaling across period-range ratios t_max / t_min."""
    rows = []
    for ratio in RATIO_CELLS:
        spec = _CellSpec("period-ratio", Fraction(ratio), seed, pd_iteration_cap)
        records = collect_cell(spec, sets_per_cell, jobs)
        rows.extend(aggregate("period-ratio", ratio, records))
    return rows


def _format_row(r: ExperimentRow) -> str:
    return (
        f"{r.experiment},{r.param:.6f},{r.algorithm},{r.sets},"
        f"{r.avg_iterations:.6f},{r.max_iterations},"
        f"{r.accept_rate:.6f},{r.infeasible_rate:.6f},{r.excluded}"
    )


def emit_csv(rows: list[ExperimentRow], destination) -> None:
    """Write rows in the fixed column order; raises on an empty row list
    rather than writing a header-only file."""
    if not rows:
        raise ValueError("no rows to emit")
    text = "\n".join([_CSV_HEADER] + [_format_row(r) for r in rows]) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")


def summarize(rows: list[ExperimentRow]) -> list[str]:
    """One human-readable line per cell."""
    lines = []
    params = []
    for r in rows:
        if r.param not in params:
            params.append(r.param)
    for param in params:
        cell = {r.algorithm: r for r in rows if r.param == param}
        parts = []
        for name in ALGORITHMS:
            if name in cell:
                r = cell[name]
                parts.append(f"{name} avg={r.avg_iterations:.1f} max={r.max_iterations}")
        experiment = rows[0].experiment
        lines.append(f"{experiment} param={param:g}: " + "; ".join(parts))
    return lines
