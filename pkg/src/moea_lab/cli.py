"""Command-line entry point: run experiments, inspect fronts and bounds.

Subcommands: ``run`` (experiment from a JSON config, flags override fields),
``front`` (front size / incomparable bound, optional enumeration), ``bound``
(runtime-bound report as key/value lines or JSON), ``verify`` (test suites).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .benchmarks import BenchmarkSpec, iter_front_values, max_incomparable, pareto_front
from .bounds import bound_for, transfer
from .harness import (
    ExperimentConfig,
    load_config,
    run_experiment,
    summary_document,
    write_results,
)


def _add_instance_flags(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--benchmark", choices=("omm", "cocz", "lotz", "ojzj"), required=required)
    parser.add_argument("--n", type=int, required=required, help="bitstring length")
    parser.add_argument("--m", type=int, required=required, help="objective count (even)")
    parser.add_argument("--k", type=int, help="jump size (ojzj only)")


def _spec_from_args(args: argparse.Namespace) -> BenchmarkSpec:
    return BenchmarkSpec(kind=args.benchmark, n=args.n, m_prime=args.m // 2, k=args.k)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moea-lab")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment")
    run_p.add_argument("--config", help="JSON config file")
    _add_instance_flags(run_p, required=False)
    run_p.add_argument("--algorithm", choices=("semo", "gsemo", "smsemoa", "nsga3"))
    run_p.add_argument("--mu", type=int, help="population size (smsemoa/nsga3)")
    run_p.add_argument("--reference-granularity", type=int,
                       help="simplex-lattice granularity (nsga3)")
    run_p.add_argument("--trials", type=int)
    run_p.add_argument("--base-seed", type=int)
    run_p.add_argument("--budget", help="evaluation budget, integer or 'auto'")
    run_p.add_argument("--output", help="directory for trials.csv and summary.json")
    run_p.add_argument("--record-wall-time", action="store_true", default=None,
                       help="fill the wall_ms column (output no longer byte-reproducible)")
    run_p.add_argument("--workers", type=int, help="parallel trial workers")

    front_p = sub.add_parser("front", help="print Pareto front size and incomparable bound")
    _add_instance_flags(front_p, required=True)
    front_p.add_argument("--list-values", action="store_true", help="enumerate front values")

    bound_p = sub.add_parser("bound", help="print a runtime-bound report")
    _add_instance_flags(bound_p, required=True)
    bound_p.add_argument("--algorithm", choices=("semo", "gsemo", "smsemoa", "nsga3"),
                         default="gsemo")
    bound_p.add_argument("--mu", type=int, help="population size for transfers")
    bound_p.add_argument("--json", action="store_true", help="emit one JSON object")

    verify_p = sub.add_parser("verify", help="run the test suites")
    verify_p.add_argument("--level", choices=("fast", "full"), default="fast")
    return parser


_FLAG_FIELDS = (
    "benchmark", "n", "m", "k", "algorithm", "mu", "reference_granularity",
    "trials", "base_seed", "output", "record_wall_time",
)


def _cmd_run(args: argparse.Namespace) -> int:
    data: dict = {}
    if args.config:
        data = load_config(args.config).to_dict()
    for name in _FLAG_FIELDS:
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    if args.budget is not None:
        data["budget"] = args.budget if args.budget == "auto" else int(args.budget)
    missing = [f for f in ("benchmark", "n", "m", "algorithm") if data.get(f) is None]
    if missing:
        raise ValueError(f"missing required config fields: {missing}")
    cfg = ExperimentConfig.from_dict(data)
    summary, results, report = run_experiment(cfg, workers=args.workers)
    document = summary_document(cfg, summary, report)
    if cfg.output:
        trials_path, summary_path = write_results(cfg, summary, results, report, cfg.output)
        print(f"wrote {trials_path} and {summary_path}")
        print(f"covered {summary.covered_count}/{cfg.trials} trials; "
              f"mean evaluations {summary.mean}")
    else:
        print(json.dumps(document, indent=2))
    return 0


def _cmd_front(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    front = pareto_front(spec)
    print(f"front_size {front.size}")
    print(f"max_incomparable {max_incomparable(spec)}")
    if args.list_values:
        for value in sorted(iter_front_values(spec)):
            print(",".join(str(c) for c in value))
    return 0


def _cmd_bound(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    report = transfer(bound_for(spec), args.algorithm, mu=args.mu)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
        return 0
    for key, value in report.instance.items():
        print(f"{key} {value}")
    print(f"whp_bound {report.whp_bound}")
    print(f"expectation_bound {report.expectation_bound}")
    for phase, value in report.phase_bounds.items():
        print(f"phase.{phase} {value}")
    for name, value in report.variants.items():
        print(f"variant.{name} {value}")
    print(f"front_size {report.front_size}")
    print(f"incomparable_bound {report.incomparable_bound}")
    print(f"provenance {report.multiplier_provenance}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        import pytest
    except ImportError:
        print("verify requires pytest (install the 'test' extra)", file=sys.stderr)
        return 1
    tests_dir = Path(__file__).resolve().parents[2] / "tests"
    if not tests_dir.is_dir():
        tests_dir = Path.cwd() / "tests"
    if not tests_dir.is_dir():
        print("cannot locate the tests directory; run from the repository root",
              file=sys.stderr)
        return 1
    argv = ["-q", str(tests_dir)]
    if args.level == "fast":
        argv += ["-m", "not slow and not acceptance"]
    return int(pytest.main(argv))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"run": _cmd_run, "front": _cmd_front, "bound": _cmd_bound,
                "verify": _cmd_verify}
    try:
        return handlers[args.command](args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
