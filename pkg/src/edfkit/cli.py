"""Command-line front end.

Exit codes follow the verdict: 0 feasible, 1 infeasible, 2 unknown.  Usage
errors exit 64, unreadable or malformed input 65, refused computations
(horizon or integer range) 70, and output I/O failures 74.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from edfkit import analysis, bench, oracle
from edfkit.generator import GenParams, gen_taskset
from edfkit.model import (
    HorizonUnavailableError,
    InapplicableTestError,
    Outcome,
    TaskFileError,
    ValidationError,
    Verdict,
    parse_taskset,
    serialize_taskset,
    utilization,
)

EXIT_FEASIBLE = 0
EXIT_INFEASIBLE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_LIMIT = 70
EXIT_IO = 74

_OUTCOME_EXIT = {
    Outcome.FEASIBLE: EXIT_FEASIBLE,
    Outcome.INFEASIBLE: EXIT_INFEASIBLE,
    Outcome.UNKNOWN: EXIT_UNKNOWN,
}

# hyperperiods above this make the oracles impractical in `--test all`
DEFAULT_ORACLE_LIMIT = 10**7

_EPILOG = """\
exit codes:
  0 feasible, 1 infeasible, 2 unknown, 64 usage error,
  65 input or parse error, 70 computation refused (range/horizon),
  74 output I/O error

reproducibility:
  generated set number `index` of seed `seed` is drawn from
  numpy PCG64 seeded with SeedSequence(seed, spawn_key=(index,));
  draw order: n, target utilization, the n-1 simplex splits, then
  period and deadline gap per task.  The same (seed, index) pair
  always yields the same set, on any platform and in any process.
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="edfkit",
        description="Feasibility analysis for uniprocessor EDF task systems.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser(
        "check", help="run a feasibility test on a task file",
        description="Run one feasibility test (or all of them) on a task file.",
    )
    check.add_argument("file", help="task file (JSON)")
    check.add_argument(
        "--test",
        required=True,
        choices=[
            "ll", "devi", "superpos", "superpos1", "pd", "dynamic",
            "allapprox", "oracle-scan", "oracle-sim", "all",
        ],
        help="which test to run; superpos1 is superpos at level 1",
    )
    check.add_argument(
        "--level", type=int, default=None,
        help="approximation level for --test superpos (default 1)",
    )
    check.add_argument(
        "--level-cap", type=int, default=None,
        help="level cap for --test dynamic (default uncapped)",
    )
    check.add_argument(
        "--iteration-cap", type=int, default=None,
        help="distinct-event cap for --test pd (default uncapped)",
    )
    check.add_argument(
        "--oracle-limit", type=int, default=DEFAULT_ORACLE_LIMIT,
        help="skip oracles in --test all when the hyperperiod exceeds this "
             "(default %(default)s)",
    )
    check.add_argument("--stats", action="store_true", help="print iteration counters")
    check.add_argument(
        "--format", choices=["text", "json"], default="text",
        help="output format (default text)",
    )
    check.set_defaults(func=cmd_check)

    gen = sub.add_parser(
        "gen", help="generate random task files",
        description="Generate random task sets, one JSON file per set, "
                    "named <seed>-<index>.json.",
    )
    gen.add_argument("--out-dir", required=True, help="directory for the task files")
    gen.add_argument("--count", type=int, default=10, help="number of sets (default %(default)s)")
    gen.add_argument("--seed", type=int, default=0, help="PRNG seed (default %(default)s)")
    gen.add_argument("--n-min", type=int, default=5, help="minimum tasks per set (default %(default)s)")
    gen.add_argument("--n-max", type=int, default=20, help="maximum tasks per set (default %(default)s)")
    gen.add_argument(
        "--u-min", type=_fraction, default=Fraction(1, 2),
        help="lower target utilization, as a decimal or fraction (default 1/2)",
    )
    gen.add_argument(
        "--u-max", type=_fraction, default=Fraction(9, 10),
        help="upper target utilization (default 9/10)",
    )
    gen.add_argument(
        "--gap", type=_fraction, default=Fraction(3, 10),
        help="average relative deadline gap below the period (default 3/10)",
    )
    gen.add_argument("--t-min", type=int, default=1000, help="minimum period (default %(default)s)")
    gen.add_argument("--t-max", type=int, default=100000, help="maximum period (default %(default)s)")
    gen.add_argument(
        "--period-dist", choices=["log-uniform", "uniform"], default="log-uniform",
        help="period distribution (default %(default)s)",
    )
    gen.set_defaults(func=cmd_gen)

    bench_p = sub.add_parser(
        "bench", help="run an experiment and write a CSV",
        description="Generate task-set populations cell by cell, run the five "
                    "analysis algorithms on every set, and write aggregate "
                    "iteration statistics as CSV.",
    )
    bench_p.add_argument(
        "--experiment", required=True, choices=["utilization", "period-ratio"],
        help="utilization: iteration counts across deadline-gap cells; "
             "period-ratio: scaling across period-range ratios",
    )
    bench_p.add_argument(
        "--sets", type=int, default=None,
        help="sets per cell (default 600 for utilization, 200 for period-ratio)",
    )
    bench_p.add_argument("--seed", type=int, default=0, help="PRNG seed (default %(default)s)")
    bench_p.add_argument("--out", required=True, help="output CSV path")
    bench_p.add_argument(
        "--jobs", type=int, default=None,
        help="worker processes (default: one per CPU)",
    )
    bench_p.add_argument(
        "--pd-iteration-cap", type=int, default=bench.DEFAULT_PD_CAP,
        help="event cap per processor-demand run; capped sets are excluded "
             "and counted in the excluded column (default %(default)s)",
    )
    bench_p.set_defaults(func=cmd_bench)
    return parser


def _load_taskset(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise TaskFileError(f"cannot read {path}: {exc}") from None
    return parse_taskset(text)


def _verdict_payload(test: str, v: Verdict) -> dict:
    return {
        "test": test,
        "outcome": v.outcome.value,
        "witness": v.witness,
        "stats": {
            "intervals_checked": v.stats.intervals_checked,
            "level_reached": v.stats.level_reached,
            "revisions": v.stats.revisions,
            "horizon_used": v.stats.horizon_used,
        },
    }


def _print_verdict(test: str, v: Verdict, fmt: str, stats: bool) -> None:
    if fmt == "json":
        print(json.dumps(_verdict_payload(test, v)))
        return
    line = v.outcome.value
    if v.witness is not None:
        line += f" witness={v.witness}"
    print(line)
    if stats:
        s = v.stats
        print(f"intervals_checked={s.intervals_checked}")
        print(f"level_reached={s.level_reached}")
        print(f"revisions={s.revisions}")
        print(f"horizon_used={'-' if s.horizon_used is None else s.horizon_used}")


def _run_single(ts, name: str, args) -> Verdict:
    if name == "ll":
        return analysis.test_liu_layland(ts)
    if name == "devi":
        return analysis.test_devi(ts)
    if name == "superpos":
        return analysis.test_superpos(ts, args.level if args.level is not None else 1)
    if name == "superpos1":
        return analysis.test_superpos(ts, 1)
    if name == "pd":
        return analysis.test_processor_demand(ts, iteration_cap=args.iteration_cap)
    if name == "dynamic":
        return analysis.test_dynamic(ts, level_cap=args.level_cap)
    if name == "allapprox":
        return analysis.test_all_approx(ts)
    if name == "oracle-scan":
        return oracle.oracle_dbf_scan(ts)
    if name == "oracle-sim":
        return oracle.oracle_edf_sim(ts)
    raise AssertionError(name)


def _validate_check_flags(parser_args):
    name = parser_args.test
    if parser_args.level is not None:
        if name != "superpos":
            _usage_error("--level is only valid with --test superpos")
        if parser_args.level < 1:
            _usage_error("--level must be >= 1")
    if parser_args.level_cap is not None:
        if name not in ("dynamic", "all"):
            _usage_error("--level-cap is only valid with --test dynamic")
        if parser_args.level_cap < 1:
            _usage_error("--level-cap must be >= 1")
    if parser_args.iteration_cap is not None:
        if name not in ("pd", "all"):
            _usage_error("--iteration-cap is only valid with --test pd")
        if parser_args.iteration_cap < 1:
            _usage_error("--iteration-cap must be >= 1")
    if parser_args.oracle_limit < 1:
        _usage_error("--oracle-limit must be >= 1")


class _UsageError(Exception):
    pass


def _usage_error(message: str):
    raise _UsageError(message)


def cmd_check(args) -> int:
    _validate_check_flags(args)
    ts = _load_taskset(args.file)
    if args.test == "all":
        return _check_all(ts, args)
    v = _run_single(ts, args.test, args)
    _print_verdict(args.test, v, args.format, args.stats)
    return _OUTCOME_EXIT[v.outcome]


_EXACT_TESTS = ("pd", "dynamic", "allapprox")
_SUFFICIENT_TESTS = ("devi", "superpos1")


def _check_all(ts, args) -> int:
    names = ["ll", "devi", "superpos1", "pd", "dynamic", "allapprox",
             "oracle-scan", "oracle-sim"]
    results: dict[str, Verdict] = {}
    skipped: dict[str, str] = {}
    for name in names:
        try:
            if name.startswith("oracle-"):
                fn = (oracle.oracle_dbf_scan if name == "oracle-scan"
                      else oracle.oracle_edf_sim)
                results[name] = fn(ts, hyperperiod_limit=args.oracle_limit)
            else:
                results[name] = _run_single(ts, name, args)
        except InapplicableTestError as exc:
            skipped[name] = str(exc)
        except HorizonUnavailableError as exc:
            skipped[name] = str(exc)

    problems = _consistency_problems(results)
    if args.format == "json":
        payload = {
            "results": {n: _verdict_payload(n, v) for n, v in results.items()},
            "skipped": skipped,
            "consistent": not problems,
            "problems": problems,
        }
        print(json.dumps(payload))
    else:
        for name in names:
            if name in skipped:
                print(f"{name:<12} skipped: {skipped[name]}")
                continue
            v = results[name]
            witness = "-" if v.witness is None else str(v.witness)
            print(f"{name:<12} {v.outcome.value:<12} witness={witness:<8} "
                  f"intervals={v.stats.intervals_checked}")
        if problems:
            for p in problems:
                print(f"inconsistent: {p}", file=sys.stderr)
        else:
            print("consistency: ok")

    if problems:
        return EXIT_LIMIT
    decided = [
        results[n] for n in _EXACT_TESTS
        if n in results and results[n].outcome is not Outcome.UNKNOWN
    ]
    if decided:
        return _OUTCOME_EXIT[decided[0].outcome]
    if any(n in results for n in _EXACT_TESTS):
        # an exact test ran but was capped into Unknown
        return EXIT_UNKNOWN
    print("no exact verdict available", file=sys.stderr)
    return EXIT_LIMIT


def _consistency_problems(results: dict[str, Verdict]) -> list[str]:
    """Cross-check the verdicts of one `--test all` run.

    Exact tests may answer Unknown only under an explicit cap, so capped
    runs are left out of the agreement checks.
    """
    problems = []
    decided = {
        n: results[n] for n in _EXACT_TESTS
        if n in results and results[n].outcome is not Outcome.UNKNOWN
    }
    outcomes = {v.outcome for v in decided.values()}
    if len(outcomes) > 1:
        problems.append(
            "exact tests disagree: "
            + ", ".join(f"{n}={v.outcome.value}" for n, v in decided.items())
        )
        return problems
    exact_outcome = next(iter(outcomes)) if outcomes else None

    witnesses = {n: v.witness for n, v in decided.items()
                 if v.outcome is Outcome.INFEASIBLE}
    if "oracle-scan" in results and results["oracle-scan"].outcome is Outcome.INFEASIBLE:
        witnesses["oracle-scan"] = results["oracle-scan"].witness
    if len(set(witnesses.values())) > 1:
        problems.append(
            "witnesses disagree: "
            + ", ".join(f"{n}={w}" for n, w in sorted(witnesses.items()))
        )

    if exact_outcome is not None:
        for n in ("oracle-scan", "oracle-sim"):
            if n in results and results[n].outcome is not exact_outcome:
                problems.append(
                    f"{n} says {results[n].outcome.value}, "
                    f"exact tests say {exact_outcome.value}"
                )
        if exact_outcome is Outcome.INFEASIBLE:
            for n in _SUFFICIENT_TESTS + ("ll",):
                if n in results and results[n].outcome is Outcome.FEASIBLE:
                    problems.append(f"{n} accepts a set the exact tests reject")
    return problems


def cmd_gen(args) -> int:
    try:
        params = GenParams(
            n_min=args.n_min,
            n_max=args.n_max,
            u_min=args.u_min,
            u_max=args.u_max,
            gap_avg=args.gap,
            t_min=args.t_min,
            t_max=args.t_max,
            seed=args.seed,
            count=args.count,
            period_distribution=args.period_dist,
        )
    except ValidationError as exc:
        print(f"edfkit gen: {exc}", file=sys.stderr)
        return EXIT_DATA
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    total_u = Fraction(0)
    for index in range(params.count):
        ts = gen_taskset(params, index)
        total_u += utilization(ts)
        path = out_dir / f"{params.seed}-{index}.json"
        path.write_text(serialize_taskset(ts) + "\n", encoding="utf-8")
    mean_u = total_u / params.count
    print(
        f"wrote {params.count} sets to {out_dir} "
        f"(seed {params.seed}, indices 0..{params.count - 1}, "
        f"mean realized utilization {float(mean_u):.4f})"
    )
    return EXIT_FEASIBLE


def cmd_bench(args) -> int:
    if args.sets is not None and args.sets < 1:
        _usage_error("--sets must be >= 1")
    if args.jobs is not None and args.jobs < 1:
        _usage_error("--jobs must be >= 1")
    if args.pd_iteration_cap < 1:
        _usage_error("--pd-iteration-cap must be >= 1")
    if args.experiment == "utilization":
        sets = args.sets if args.sets is not None else 600
        rows = bench.run_experiment_utilization(
            sets, args.seed, jobs=args.jobs, pd_iteration_cap=args.pd_iteration_cap
        )
    else:
        sets = args.sets if args.sets is not None else 200
        rows = bench.run_experiment_period_ratio(
            sets, args.seed, jobs=args.jobs, pd_iteration_cap=args.pd_iteration_cap
        )
    bench.emit_csv(rows, args.out)
    for line in bench.summarize(rows):
        print(line)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_FEASIBLE


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"edfkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TaskFileError, ValidationError, InapplicableTestError) as exc:
        print(f"edfkit: {exc}", file=sys.stderr)
        return EXIT_DATA
    except HorizonUnavailableError as exc:
        print(f"edfkit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        print(f"edfkit: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"edfkit: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
