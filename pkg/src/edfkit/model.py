"""Task-system model: tasks, task sets, verdicts, and the task-file format.

All timing parameters are integer ticks and all derived quantities
(utilization, demand accumulators, horizons) are exact rationals, so no
result in this package ever depends on floating-point rounding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional

# Exact scalar type used for utilizations, demand accumulators and horizons.
Rational = Fraction


class TaskFileError(ValueError):
    """Raised when a task-file document cannot be parsed."""


class ValidationError(ValueError):
    """Raised when task parameters are structurally valid but out of range."""


class HorizonUnavailableError(ArithmeticError):
    """Raised when an analysis needs a horizon (or event range) that exceeds
    the supported integer range, so the exact computation is refused rather
    than attempted approximately."""


class InapplicableTestError(ValueError):
    """Raised when a test's model restriction does not hold for the input."""


def _require_positive_int(value, name: str, index: Optional[int] = None):
    where = f" at index {index}" if index is not None else ""
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{name} must be an integer{where}, got {value!r}")
    if value < 1:
        raise ValidationError(f"{name} must be >= 1{where}, got {value}")


@dataclass(frozen=True)
class Task:
    """A sporadic task: worst-case execution time, relative deadline and
    minimal inter-release separation (period), all in ticks.

    The deadline is unconstrained relative to the period; both D < T and
    D > T systems are supported.
    """

    wcet: int
    deadline: int
    period: int

    def __post_init__(self):
        _require_positive_int(self.wcet, "wcet")
        _require_positive_int(self.deadline, "deadline")
        _require_positive_int(self.period, "period")
        if self.wcet > self.period:
            raise ValidationError(
                f"wcet > period ({self.wcet} > {self.period})"
            )

    @property
    def utilization(self) -> Fraction:
        return Fraction(self.wcet, self.period)


@dataclass(frozen=True)
class TaskSet:
    """An ordered, immutable collection of tasks.

    Task order is preserved exactly as given; analyses use the position in
    ``tasks`` as the task index, including for deterministic tie-breaking.
    """

    tasks: tuple[Task, ...]
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "tasks", tuple(self.tasks))
        if not self.tasks:
            raise ValidationError("empty set: a task set must contain at least one task")

    def __len__(self) -> int:
        return len(self.tasks)

    def __iter__(self) -> Iterator[Task]:
        return iter(self.tasks)

    def __getitem__(self, i: int) -> Task:
        return self.tasks[i]

    @property
    def utilization(self) -> Fraction:
        return sum((t.utilization for t in self.tasks), Fraction(0))


def utilization(ts: TaskSet) -> Fraction:
    """Total utilization sum(C_i / T_i) as an exact rational."""
    return ts.utilization


def hyperperiod(ts: TaskSet) -> int:
    """Least common multiple of all periods."""
    return math.lcm(*(t.period for t in ts.tasks))


class Outcome(Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class IterationStats:
    """Work counters reported by every test.

    intervals_checked counts the demand comparisons a test actually made and
    is at least 1 for any completed run (a test that decides on the
    utilization precheck alone reports 1).  level_reached is meaningful for
    the dynamic-error test only and is 1 everywhere else.  horizon_used is
    the integer ceiling of the horizon the test enumerated events below, or
    None for tests that do not bound their enumeration by a horizon.
    """

    intervals_checked: int
    level_reached: int = 1
    revisions: int = 0
    horizon_used: Optional[int] = None

    def __post_init__(self):
        if self.intervals_checked < 1:
            raise ValidationError("intervals_checked must be >= 1")
        if self.level_reached < 1:
            raise ValidationError("level_reached must be >= 1")
        if self.revisions < 0:
            raise ValidationError("revisions must be >= 0")


@dataclass(frozen=True)
class Verdict:
    """Result of one feasibility test run.

    witness is the violating interval length and is present only when the
    outcome is Infeasible; an infeasibility established without event
    enumeration (utilization above 1) carries no witness.
    """

    outcome: Outcome
    stats: IterationStats
    witness: Optional[int] = None

    def __post_init__(self):
        if self.witness is not None and self.outcome is not Outcome.INFEASIBLE:
            raise ValidationError("witness is only valid for an infeasible outcome")

    @property
    def is_feasible(self) -> bool:
        return self.outcome is Outcome.FEASIBLE


_TASK_KEYS = ("c", "d", "t")


def parse_taskset(text: str) -> TaskSet:
    """Parse the canonical JSON task-file format.

    The document is an object with a "tasks" array of {"c":..,"d":..,"t":..}
    objects and an optional "name" string.  All parameters must be JSON
    integers; floats are rejected even when integral.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TaskFileError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise TaskFileError("top level must be an object")
    unknown = set(doc) - {"tasks", "name"}
    if unknown:
        raise TaskFileError(f"unknown top-level keys: {sorted(unknown)}")
    if "tasks" not in doc:
        raise TaskFileError('missing "tasks" array')
    raw_tasks = doc["tasks"]
    if not isinstance(raw_tasks, list):
        raise TaskFileError('"tasks" must be an array')
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise TaskFileError('"name" must be a string')

    tasks = []
    for i, entry in enumerate(raw_tasks):
        if not isinstance(entry, dict):
            raise TaskFileError(f"task at index {i} must be an object")
        if set(entry) != set(_TASK_KEYS):
            raise TaskFileError(
                f"task at index {i} must have exactly the keys c, d, t"
            )
        values = {}
        for key, attr in (("c", "wcet"), ("d", "deadline"), ("t", "period")):
            v = entry[key]
            if isinstance(v, bool) or not isinstance(v, int):
                raise TaskFileError(
                    f'"{key}" at index {i} must be an integer, got {v!r}'
                )
            values[attr] = v
        try:
            tasks.append(Task(**values))
        except ValidationError as exc:
            raise ValidationError(f"{exc} at index {i}") from None
    return TaskSet(tuple(tasks), name=name)


def serialize_taskset(ts: TaskSet) -> str:
    """Serialize to the canonical compact JSON form (keys in c, d, t order).

    The output is bit-exact for a given task set, so serialize/parse is an
    identity round trip.
    """
    doc: dict = {}
    if ts.name is not None:
        doc["name"] = ts.name
    doc["tasks"] = [
        {"c": t.wcet, "d": t.deadline, "t": t.period} for t in ts.tasks
    ]
    return json.dumps(doc, separators=(",", ":"))
