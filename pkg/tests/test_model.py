"""Model layer: validation, exact arithmetic, task-file round trips."""

import random
from fractions import Fraction

import pytest

from edfkit import model
from edfkit.model import Task, TaskSet

from _support import gamma_a, gamma_b, make_ts


def test_task_accepts_all_deadline_regimes():
    Task(1, 1, 4)      # D < T
    Task(1, 4, 4)      # D = T
    Task(1, 9, 4)      # D > T
    Task(2, 1, 4)      # D < C is legal, the task is just never schedulable


def test_task_rejects_out_of_range_parameters():
    with pytest.raises(model.ValidationError):
        Task(0, 1, 1)
    with pytest.raises(model.ValidationError):
        Task(1, 0, 1)
    with pytest.raises(model.ValidationError):
        Task(1, 1, 0)
    with pytest.raises(model.ValidationError, match="wcet > period"):
        Task(5, 3, 4)
    with pytest.raises(model.ValidationError):
        Task(-1, 1, 1)


def test_task_rejects_non_integers():
    with pytest.raises(model.ValidationError):
        Task(1.0, 1, 1)
    with pytest.raises(model.ValidationError):
        Task(1, True, 1)


def test_empty_set_rejected():
    with pytest.raises(model.ValidationError, match="empty set"):
        TaskSet(())


def test_utilization_exact():
    assert model.utilization(gamma_a()) == Fraction(7, 12)
    assert model.utilization(make_ts([(1, 1, 1)])) == 1
    assert model.utilization(gamma_b()) == Fraction(9, 10)
    # floats would put 1/3 + 1/6 + 1/2 off from 1; fractions must not
    assert model.utilization(make_ts([(1, 3, 3), (1, 6, 6), (1, 2, 2)])) == 1


def test_hyperperiod():
    assert model.hyperperiod(gamma_a()) == 12
    assert model.hyperperiod(make_ts([(1, 1, 5)])) == 5
    assert model.hyperperiod(make_ts([(1, 2, 2), (1, 3, 3), (1, 5, 5), (1, 7, 7)])) == 210


def test_parse_basic_document():
    ts = model.parse_taskset('{"tasks":[{"c":1,"d":2,"t":4},{"c":2,"d":4,"t":6}]}')
    assert ts == gamma_a()


def test_parse_errors():
    with pytest.raises(model.ValidationError, match="empty set"):
        model.parse_taskset('{"tasks":[]}')
    with pytest.raises(model.ValidationError, match=r"wcet > period.*at index 0"):
        model.parse_taskset('{"tasks":[{"c":5,"d":3,"t":4}]}')
    with pytest.raises(model.TaskFileError):
        model.parse_taskset("not json")
    with pytest.raises(model.TaskFileError):
        model.parse_taskset('[1,2]')
    with pytest.raises(model.TaskFileError):
        model.parse_taskset('{"tasks":[{"c":1,"d":2}]}')
    with pytest.raises(model.TaskFileError):
        model.parse_taskset('{"tasks":[{"c":1,"d":2,"t":4,"x":1}]}')
    with pytest.raises(model.TaskFileError, match="integer"):
        model.parse_taskset('{"tasks":[{"c":1.0,"d":2,"t":4}]}')
    with pytest.raises(model.TaskFileError, match="integer"):
        model.parse_taskset('{"tasks":[{"c":true,"d":2,"t":4}]}')
    with pytest.raises(model.TaskFileError):
        model.parse_taskset('{"tasks":[{"c":1,"d":2,"t":4}],"extra":1}')


def test_serialize_canonical_form():
    text = model.serialize_taskset(gamma_a())
    assert text == '{"tasks":[{"c":1,"d":2,"t":4},{"c":2,"d":4,"t":6}]}'
    named = TaskSet((Task(1, 2, 4),), name="x")
    assert model.serialize_taskset(named) == '{"name":"x","tasks":[{"c":1,"d":2,"t":4}]}'


def test_round_trip_random_sets():
    rnd = random.Random(20260817)
    for i in range(200):
        tasks = []
        for _ in range(rnd.randint(1, 8)):
            t = rnd.randint(1, 10**6)
            c = rnd.randint(1, t)
            d = rnd.randint(1, 3 * t)
            tasks.append(Task(c, d, t))
        name = f"set-{i}" if rnd.random() < 0.5 else None
        ts = TaskSet(tuple(tasks), name=name)
        again = model.parse_taskset(model.serialize_taskset(ts))
        assert again == ts
        # serialization itself is bit-stable
        assert model.serialize_taskset(again) == model.serialize_taskset(ts)


def test_task_order_is_preserved():
    ts = make_ts([(2, 4, 6), (1, 2, 4)])
    assert ts.tasks[0] == Task(2, 4, 6)
    assert ts != gamma_a()


def test_utilization_is_permutation_invariant():
    ts = gamma_a()
    swapped = TaskSet(tuple(reversed(ts.tasks)))
    assert model.utilization(ts) == model.utilization(swapped)
    assert model.hyperperiod(ts) == model.hyperperiod(swapped)


def test_verdict_witness_only_when_infeasible():
    stats = model.IterationStats(intervals_checked=1)
    model.Verdict(model.Outcome.INFEASIBLE, stats, 2)
    model.Verdict(model.Outcome.INFEASIBLE, stats, None)
    with pytest.raises(model.ValidationError):
        model.Verdict(model.Outcome.FEASIBLE, stats, 2)
    with pytest.raises(model.ValidationError):
        model.Verdict(model.Outcome.UNKNOWN, stats, 2)


def test_iteration_stats_bounds():
    with pytest.raises(model.ValidationError):
        model.IterationStats(intervals_checked=0)
    with pytest.raises(model.ValidationError):
        model.IterationStats(intervals_checked=1, revisions=-1)
    with pytest.raises(model.ValidationError):
        model.IterationStats(intervals_checked=1, level_reached=0)
