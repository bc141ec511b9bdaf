"""Experiment orchestration: config, seeded parallel trials, stats, outputs.

Trial ``i`` runs with the seed ``derive_seed(base_seed, i)``, a SplitMix64
mix whose constants are part of the output contract (see
:func:`derive_seed`), feeding numpy's PCG64 generator. Trials are
independent, so serial and parallel execution produce identical per-trial
results; aggregation is order-stable by trial index.

Output files: ``trials.csv`` with header
``trial,seed,covered,evaluations,corners_eval,cliffs_eval,coverage_fraction,wall_ms``
(empty fields where a milestone does not apply, and for ``wall_ms`` unless
wall-time recording is enabled, keeping default output byte-reproducible),
and ``summary.json`` with keys ``config``, ``stats``, ``bounds``,
``ratio_mean_over_expectation_bound``, ``generator``.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .algorithms import ALGORITHMS, POPULATION_ALGORITHMS, TrialResult, run_trial
from .benchmarks import BenchmarkSpec, max_incomparable
from .bounds import BoundReport, bound_for, transfer
from .ranking import min_reference_granularity

GENERATOR_NAME = "numpy-pcg64"
AUTO_BUDGET_MULTIPLIER = 50
WORKERS_ENV_VAR = "MOEA_LAB_THREADS"

_MASK64 = (1 << 64) - 1


def derive_seed(base_seed: int, index: int) -> int:
    """Deterministic 64-bit per-trial seed (SplitMix64).

    z = base_seed + (index + 1) * 0x9E3779B97F4A7C15  (mod 2^64), then
    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
    z ^= z >> 27; z *= 0x94D049BB133111EB;
    z ^= z >> 31  (all mod 2^64).
    """
    z = (base_seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass
class ExperimentConfig:
    """One experiment: benchmark instance, algorithm, trial count, seeding."""

    benchmark: str
    n: int
    m: int
    algorithm: str
    k: int | None = None
    mu: int | None = None
    reference_granularity: int | None = None
    trials: int = 10
    base_seed: int = 1
    budget: int | str = "auto"
    output: str | None = None
    record_wall_time: bool = False

    def to_spec(self) -> BenchmarkSpec:
        if self.m % 2 != 0 or self.m < 2:
            raise ValueError(f"objective count m must be a positive even number, got {self.m}")
        return BenchmarkSpec(kind=self.benchmark, n=self.n, m_prime=self.m // 2, k=self.k)

    def validate(self) -> BenchmarkSpec:
        """Check the whole configuration; returns the benchmark spec."""
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if isinstance(self.budget, str) and self.budget != "auto":
            raise ValueError(f"budget must be an integer or 'auto', got {self.budget!r}")
        spec = self.to_spec()
        if self.algorithm == "semo" and spec.kind == "ojzj":
            raise ValueError(
                "semo+ojzj is unsupported: one-bit mutation cannot cross the fitness valleys"
            )
        return spec

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SummaryStats:
    """Statistics of evaluations-to-coverage over the covered trials only.

    Quantiles use linear interpolation (numpy default). All of mean, median,
    q05, q95 and max are ``None`` when no trial covered the front.
    """

    mean: float | None
    median: float | None
    q05: float | None
    q95: float | None
    max: float | None
    covered_count: int

    def to_dict(self) -> dict:
        return asdict(self)


def resolve_mu(cfg: ExperimentConfig, spec: BenchmarkSpec) -> int | None:
    """Population size for population algorithms (defaults to the
    incomparable-set bound, the smallest theory-supported size)."""
    if cfg.algorithm not in POPULATION_ALGORITHMS:
        return None
    return cfg.mu if cfg.mu is not None else max_incomparable(spec)


def resolve_reference_granularity(cfg: ExperimentConfig, spec: BenchmarkSpec) -> int | None:
    if cfg.algorithm != "nsga3":
        return None
    if cfg.reference_granularity is not None:
        return cfg.reference_granularity
    return min_reference_granularity(spec.m, spec.f_max)


def resolve_budget(cfg: ExperimentConfig, report: BoundReport) -> int:
    if cfg.budget == "auto":
        return int(np.ceil(AUTO_BUDGET_MULTIPLIER * report.whp_bound))
    return int(cfg.budget)


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR)
    if raw is not None:
        count = int(raw)
        if count < 1:
            raise ValueError(f"{WORKERS_ENV_VAR} must be >= 1, got {raw}")
        return count
    return os.cpu_count() or 1


def _run_one(args) -> TrialResult:
    algorithm, spec, budget, seed, mu, granularity = args
    return run_trial(algorithm, spec, budget, seed, mu=mu,
                     reference_granularity=granularity)


def run_experiment(cfg: ExperimentConfig,
                   workers: int | None = None) -> tuple[SummaryStats, list[TrialResult], BoundReport]:
    """Run all trials of ``cfg``; returns (summary, per-trial results, bounds).

    Results are ordered by trial index regardless of scheduling. ``workers``
    overrides the MOEA_LAB_THREADS / cpu-count default.
    """
    spec = cfg.validate()
    mu = resolve_mu(cfg, spec)
    granularity = resolve_reference_granularity(cfg, spec)
    report = transfer(bound_for(spec), cfg.algorithm, mu=mu)
    budget = resolve_budget(cfg, report)

    jobs = [
        (cfg.algorithm, spec, budget, derive_seed(cfg.base_seed, i), mu, granularity)
        for i in range(cfg.trials)
    ]
    if workers is None:
        workers = worker_count()
    if workers > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(max_workers=min(workers, cfg.trials)) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(job) for job in jobs]

    return summarize(results), results, report


def summarize(results: list[TrialResult]) -> SummaryStats:
    covered = [r.evaluations_to_cover for r in results if r.covered]
    if not covered:
        return SummaryStats(None, None, None, None, None, 0)
    arr = np.asarray(covered, dtype=np.float64)
    return SummaryStats(
        mean=float(arr.mean()),
        median=float(np.median(arr)),
        q05=float(np.percentile(arr, 5)),
        q95=float(np.percentile(arr, 95)),
        max=float(arr.max()),
        covered_count=len(covered),
    )


def summary_document(cfg: ExperimentConfig, summary: SummaryStats,
                     report: BoundReport) -> dict:
    ratio = None
    if summary.mean is not None and report.expectation_bound > 0:
        ratio = summary.mean / report.expectation_bound
    return {
        "config": cfg.to_dict(),
        "stats": summary.to_dict(),
        "bounds": {
            "whp": report.whp_bound,
            "expectation": report.expectation_bound,
            "phases": dict(report.phase_bounds),
            "front_size": report.front_size,
            "incomparable_bound": report.incomparable_bound,
            "multiplier_provenance": report.multiplier_provenance,
            "variants": dict(report.variants),
        },
        "ratio_mean_over_expectation_bound": ratio,
        "generator": {
            "name": GENERATOR_NAME,
            "numpy_version": np.__version__,
            "seed_derivation": "splitmix64(base_seed + (index+1)*0x9E3779B97F4A7C15)",
        },
    }


CSV_HEADER = [
    "trial", "seed", "covered", "evaluations", "corners_eval",
    "cliffs_eval", "coverage_fraction", "wall_ms",
]


def write_results(cfg: ExperimentConfig, summary: SummaryStats,
                  results: list[TrialResult], report: BoundReport,
                  path: str | Path) -> tuple[Path, Path]:
    """Write ``trials.csv`` and ``summary.json`` under ``path``."""
    outdir = Path(path)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        trials_path = outdir / "trials.csv"
        with open(trials_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for i, r in enumerate(results):
                writer.writerow([
                    i,
                    r.seed,
                    "true" if r.covered else "false",
                    "" if r.evaluations_to_cover is None else r.evaluations_to_cover,
                    "" if r.corners_eval is None else r.corners_eval,
                    "" if r.cliffs_eval is None else r.cliffs_eval,
                    repr(r.coverage_fraction),
                    repr(r.wall_ms) if cfg.record_wall_time else "",
                ])
        summary_path = outdir / "summary.json"
        with open(summary_path, "w") as fh:
            json.dump(summary_document(cfg, summary, report), fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise RuntimeError(f"failed to write results under {outdir}: {exc}") from exc
    return trials_path, summary_path


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise RuntimeError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"config {path} is not valid JSON: {exc}") from exc
    return ExperimentConfig.from_dict(data)
