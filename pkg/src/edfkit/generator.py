"""Random task-set generation for the experiments.

Utilizations come from the n-dimensional uniform simplex sampler (the
UUniFast recurrence), periods from a log-uniform range, and deadlines from
a relative gap below the period.  Every set is a pure function of
(seed, index): draws go through a PCG64 stream spawned from
SeedSequence(seed, spawn_key=(index,)), so any set from a run can be
re-materialized from those two numbers alone, in any process order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from edfkit.model import Task, TaskSet, ValidationError

# gap draws are clamped strictly below 1 so deadlines stay positive
_GAP_CLAMP = 1.0 - 2.0**-20


@dataclass(frozen=True)
class GenParams:
    """Generation recipe: set-size range, target-utilization window,
    average deadline gap, period range, and the PRNG seed."""

    n_min: int
    n_max: int
    u_min: Fraction
    u_max: Fraction
    gap_avg: Fraction
    t_min: int
    t_max: int
    seed: int
    count: int
    period_distribution: str = "log-uniform"

    def __post_init__(self):
        if not 1 <= self.n_min <= self.n_max:
            raise ValidationError(
                f"need 1 <= n_min <= n_max, got [{self.n_min}, {self.n_max}]"
            )
        if not 0 < self.u_min <= self.u_max <= 1:
            raise ValidationError(
                f"need 0 < u_min <= u_max <= 1, got [{self.u_min}, {self.u_max}]"
            )
        if not 0 <= self.gap_avg < 1:
            raise ValidationError(f"need 0 <= gap_avg < 1, got {self.gap_avg}")
        if not 2 <= self.t_min <= self.t_max:
            raise ValidationError(
                f"need 2 <= t_min <= t_max, got [{self.t_min}, {self.t_max}]"
            )
        if self.seed < 0 or self.seed >= 2**63:
            raise ValidationError(f"seed must fit in 63 bits, got {self.seed}")
        if self.count < 1:
            raise ValidationError(f"count must be >= 1, got {self.count}")
        if self.period_distribution not in ("log-uniform", "uniform"):
            raise ValidationError(
                f"unknown period distribution {self.period_distribution!r}"
            )


def uunifast(n: int, u_target: Fraction, rng: np.random.Generator) -> list[Fraction]:
    """Split u_target into n utilizations, uniformly over the simplex.

    The recurrence runs in floats; the result is lifted to exact rationals
    and renormalized so the sum equals u_target exactly.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    shares = []
    remaining = 1.0
    for i in range(1, n):
        nxt = remaining * rng.random() ** (1.0 / (n - i))
        shares.append(remaining - nxt)
        remaining = nxt
    shares.append(remaining)
    exact = [Fraction(s) for s in shares]
    total = sum(exact)
    if total == 0:
        # degenerate float underflow: fall back to an even split
        return [u_target / n] * n
    return [u * u_target / total for u in exact]


def _draw_period(p: GenParams, rng: np.random.Generator) -> int:
    if p.period_distribution == "uniform":
        return int(rng.integers(p.t_min, p.t_max + 1))
    t = int(round(math.exp(rng.uniform(math.log(p.t_min), math.log(p.t_max)))))
    return min(max(t, p.t_min), p.t_max)


def gen_taskset(p: GenParams, index: int) -> TaskSet:
    """Generate set number `index` of the run described by `p`.

    Deterministic in (p, index) and independent of every other index.  The
    realized utilization is the exact sum C_i/T_i of the rounded parameters,
    so it may drift from the drawn target by the rounding of each C_i.
    """
    if index < 0:
        raise ValueError(f"index must be >= 0, got {index}")
    rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(p.seed, spawn_key=(index,)))
    )
    n = int(rng.integers(p.n_min, p.n_max + 1))
    u_target = Fraction(rng.uniform(float(p.u_min), float(p.u_max)))
    utils = uunifast(n, u_target, rng)

    tasks = []
    for u in utils:
        while True:
            period = _draw_period(p, rng)
            wcet = max(1, round(u * period))
            if wcet <= period:
                break
        gap = min(rng.uniform(0.0, float(2 * p.gap_avg)), _GAP_CLAMP)
        deadline = max(wcet, round(period * (1.0 - gap)))
        tasks.append(Task(wcet=wcet, deadline=deadline, period=period))
    return TaskSet(tuple(tasks), name=f"{p.seed}-{index}")
