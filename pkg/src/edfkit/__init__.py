"""Feasibility analysis for uniprocessor real-time task systems under
preemptive EDF.

Exact and approximate schedulability tests over an exact-arithmetic demand
algebra, brute-force oracles for cross-checking, a reproducible random
task-set generator, and an experiment harness.  The hot kernels (demand
event scan, EDF simulation) run compiled when the optional extensions were
built and fall back to Python otherwise; see edfkit.kernels.backends().
"""

from edfkit.model import (
    HorizonUnavailableError,
    InapplicableTestError,
    IterationStats,
    Outcome,
    Rational,
    Task,
    TaskFileError,
    TaskSet,
    ValidationError,
    Verdict,
    hyperperiod,
    parse_taskset,
    serialize_taskset,
    utilization,
)
from edfkit.demand import (
    Horizon,
    app_cost,
    bound_baruah,
    bound_george,
    bound_superposition,
    dbf,
    dbf_star_task,
    dbf_task,
    im_level,
    next_int,
    test_horizon,
)
from edfkit.analysis import (
    deadline_events,
    test_all_approx,
    test_devi,
    test_dynamic,
    test_liu_layland,
    test_processor_demand,
    test_superpos,
)
from edfkit.oracle import SimTrace, oracle_dbf_scan, oracle_edf_sim, simulate_edf
from edfkit.generator import GenParams, gen_taskset, uunifast

__version__ = "0.1.0"

__all__ = [
    "HorizonUnavailableError",
    "InapplicableTestError",
    "IterationStats",
    "Outcome",
    "Rational",
    "Task",
    "TaskFileError",
    "TaskSet",
    "ValidationError",
    "Verdict",
    "hyperperiod",
    "parse_taskset",
    "serialize_taskset",
    "utilization",
    "Horizon",
    "app_cost",
    "bound_baruah",
    "bound_george",
    "bound_superposition",
    "dbf",
    "dbf_star_task",
    "dbf_task",
    "im_level",
    "next_int",
    "test_horizon",
    "deadline_events",
    "test_all_approx",
    "test_devi",
    "test_dynamic",
    "test_liu_layland",
    "test_processor_demand",
    "test_superpos",
    "SimTrace",
    "oracle_dbf_scan",
    "oracle_edf_sim",
    "simulate_edf",
    "GenParams",
    "gen_taskset",
    "uunifast",
    "__version__",
]
