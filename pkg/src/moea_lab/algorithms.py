"""The four optimizers as single-step state machines plus the trial runner.

Every optimizer is driven through a :class:`RunState` so that a trial is an
isolated, deterministic state machine given its seeded generator. Evaluation
counts are exact: each call to the benchmark's objective function increments
``evaluations`` by one, including the evaluation of the initial population
(one individual for semo/gsemo, ``mu`` for smsemoa/nsga3).

Coverage is detected incrementally: each freshly evaluated objective value is
tested for Pareto-front membership in O(m) and counted once, so no per-step
scan over the front is needed.
"""

from __future__ import annotations

import time
import warnings
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .benchmarks import (
    BenchmarkSpec,
    evaluate,
    front_size,
    is_front_value,
    max_incomparable,
    milestone_sets,
)
from .core import BitString, FixedPopulation, ObjectiveVector, ParetoArchive, random_bitstring
from .ranking import (
    ReferencePointSet,
    fast_non_dominated_sort,
    hv_contributions,
    min_reference_granularity,
    niche_select,
    reference_points,
)

ARCHIVE_ALGORITHMS = ("semo", "gsemo")
POPULATION_ALGORITHMS = ("smsemoa", "nsga3")
ALGORITHMS = ARCHIVE_ALGORITHMS + POPULATION_ALGORITHMS


@dataclass(frozen=True)
class MutationKind:
    """Mutation operator: ``one_bit`` flips one uniform position, ``bitwise``
    flips each position independently (rate defaults to 1/n at use)."""

    kind: str
    rate: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("one_bit", "bitwise"):
            raise ValueError(f"unknown mutation kind {self.kind!r}")
        if self.rate is not None and not 0.0 < self.rate <= 1.0:
            raise ValueError(f"mutation rate must be in (0, 1], got {self.rate}")


def mutate(x: BitString, op: MutationKind, rng: np.random.Generator) -> BitString:
    """Apply ``op`` to ``x``; the offspring may equal the parent under bitwise mutation."""
    if op.kind == "one_bit":
        pos = int(rng.integers(x.n))
        return BitString(x.n, x.mask ^ (1 << pos))
    rate = op.rate if op.rate is not None else 1.0 / x.n
    flips = np.flatnonzero(rng.random(x.n) < rate)
    mask = x.mask
    for pos in flips.tolist():
        mask ^= 1 << pos
    return BitString(x.n, mask)


@dataclass
class RunState:
    """Mutable per-trial state: population, exact evaluation count, coverage."""

    algorithm: str
    spec: BenchmarkSpec
    mutation: MutationKind
    front_size: int
    evaluations: int = 0
    seen_front_values: set[ObjectiveVector] = field(default_factory=set)
    milestones: dict[str, int] = field(default_factory=dict)
    archive: ParetoArchive | None = None
    population: FixedPopulation | None = None
    refs: ReferencePointSet | None = None
    f_max: int | None = None
    pending_corners: set[ObjectiveVector] | None = None
    pending_cliffs: set[ObjectiveVector] | None = None

    @property
    def covered(self) -> bool:
        return len(self.seen_front_values) == self.front_size

    @property
    def coverage_fraction(self) -> float:
        return len(self.seen_front_values) / self.front_size


def _observe(state: RunState, value: ObjectiveVector) -> None:
    # Called once per evaluation, after state.evaluations was incremented,
    # so recorded milestones carry exact evaluation counts.
    if value not in state.seen_front_values and is_front_value(state.spec, value):
        state.seen_front_values.add(value)
        if len(state.seen_front_values) == state.front_size:
            state.milestones["covered"] = state.evaluations
    if state.pending_cliffs is not None:
        state.pending_cliffs.discard(value)
        if not state.pending_cliffs:
            state.milestones["cliffs"] = state.evaluations
            state.pending_cliffs = None
    if state.pending_corners is not None:
        state.pending_corners.discard(value)
        if not state.pending_corners:
            state.milestones["corners"] = state.evaluations
            state.pending_corners = None


def init_run_state(algorithm: str, spec: BenchmarkSpec, rng: np.random.Generator,
                   mu: int | None = None,
                   reference_granularity: int | None = None) -> RunState:
    """Create and evaluate the initial population (uniform random individuals)."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    if algorithm == "semo" and spec.kind == "ojzj":
        raise ValueError(
            "semo is not supported on ojzj: one-bit mutation cannot cross the "
            "fitness valleys, so the front is unreachable"
        )
    one_bit = algorithm == "semo"
    state = RunState(
        algorithm=algorithm,
        spec=spec,
        mutation=MutationKind("one_bit") if one_bit else MutationKind("bitwise"),
        front_size=front_size(spec),
    )
    if spec.kind != "lotz":
        sets = milestone_sets(spec)
        state.pending_corners = set(sets.corners)
        state.pending_cliffs = set(sets.cliffs) if sets.cliffs is not None else None

    if algorithm in ARCHIVE_ALGORITHMS:
        x = random_bitstring(rng, spec.n)
        fx = evaluate(spec, x)
        state.evaluations += 1
        _observe(state, fx)
        state.archive = ParetoArchive()
        state.archive.insert(x, fx)
        return state

    if mu is None:
        mu = max_incomparable(spec)
    if mu < 1:
        raise ValueError(f"population size must be positive, got {mu}")
    if algorithm == "nsga3":
        state.f_max = spec.f_max
        needed = min_reference_granularity(spec.m, state.f_max)
        p = reference_granularity if reference_granularity is not None else needed
        if p < needed:
            warnings.warn(
                f"reference granularity p={p} is below the sufficient niching "
                f"threshold {needed}; non-dominated values may be lost",
                RuntimeWarning,
            )
        state.refs = reference_points(spec.m, p)
    members: list[BitString] = []
    values: list[ObjectiveVector] = []
    for _ in range(mu):
        x = random_bitstring(rng, spec.n)
        fx = evaluate(spec, x)
        state.evaluations += 1
        _observe(state, fx)
        members.append(x)
        values.append(fx)
    state.population = FixedPopulation(members, values)
    return state


def _archive_step(state: RunState, spec: BenchmarkSpec, rng: np.random.Generator,
                  op: MutationKind) -> RunState:
    parent, _ = state.archive.sample(rng)
    child = mutate(parent, op, rng)
    fx = evaluate(spec, child)
    state.evaluations += 1
    _observe(state, fx)
    state.archive.insert(child, fx)
    return state


def gsemo_step(state: RunState, spec: BenchmarkSpec, rng: np.random.Generator) -> RunState:
    """One iteration: uniform parent, configured mutation, archive update."""
    return _archive_step(state, spec, rng, state.mutation)


def semo_step(state: RunState, spec: BenchmarkSpec, rng: np.random.Generator) -> RunState:
    """One iteration with one-bit mutation (offspring at Hamming distance 1)."""
    return _archive_step(state, spec, rng, MutationKind("one_bit"))


def smsemoa_step(state: RunState, spec: BenchmarkSpec, rng: np.random.Generator) -> RunState:
    """One steady-state iteration: add one offspring, drop a minimum
    hypervolume contributor of the last front (ties uniform at random).

    Within the last front, a member's contribution is zero exactly when its
    objective value is duplicated there, so when duplicates exist they are
    the argmin set and no hypervolume recursion is needed.
    """
    pop = state.population
    parent = pop.members[int(rng.integers(pop.mu))]
    child = mutate(parent, state.mutation, rng)
    fx = evaluate(spec, child)
    state.evaluations += 1
    _observe(state, fx)

    members = pop.members + [child]
    values = pop.values + [fx]
    last = fast_non_dominated_sort(values).fronts[-1]
    occurrences = Counter(values[j] for j in last)
    argmin = [j for j in last if occurrences[values[j]] > 1]
    if not argmin:
        front_vals = [values[j] for j in last]
        contribs = hv_contributions(front_vals, (-1,) * spec.m)
        smallest = min(contribs)
        argmin = [last[pos] for pos, c in enumerate(contribs) if c == smallest]
    drop = argmin[int(rng.integers(len(argmin)))]
    del members[drop]
    del values[drop]
    state.population = FixedPopulation(members, values)
    return state


def nsga3_generation(state: RunState, spec: BenchmarkSpec, rng: np.random.Generator) -> RunState:
    """One generation: every member spawns one offspring by bitwise mutation
    (``mu`` evaluations), then rank-and-niche selection back to size ``mu``."""
    pop = state.population
    members = list(pop.members)
    values = list(pop.values)
    for parent in pop.members:
        child = mutate(parent, state.mutation, rng)
        fx = evaluate(spec, child)
        state.evaluations += 1
        _observe(state, fx)
        members.append(child)
        values.append(fx)

    selected: list[int] = []
    for front in fast_non_dominated_sort(values).fronts:
        if len(selected) + len(front) <= pop.mu:
            selected.extend(front)
            if len(selected) == pop.mu:
                break
            continue
        need = pop.mu - len(selected)
        picks = niche_select(
            [values[j] for j in front], need, state.refs, state.f_max, rng,
            already_selected=[values[j] for j in selected],
        )
        selected.extend(front[c] for c in picks)
        break
    state.population = FixedPopulation(
        [members[j] for j in selected], [values[j] for j in selected]
    )
    return state


_STEPPERS = {
    "semo": semo_step,
    "gsemo": gsemo_step,
    "smsemoa": smsemoa_step,
    "nsga3": nsga3_generation,
}


@dataclass(frozen=True)
class TrialResult:
    """Per-run record. ``wall_ms`` is measurement metadata and excluded from
    equality so identical seeded runs compare equal."""

    seed: int
    covered: bool
    evaluations_to_cover: int | None
    coverage_fraction: float
    corners_eval: int | None
    cliffs_eval: int | None
    evaluations: int
    wall_ms: float = field(compare=False, default=0.0)


def run_trial(algorithm: str, spec: BenchmarkSpec, budget: int, seed: int,
              mu: int | None = None,
              reference_granularity: int | None = None) -> TrialResult:
    """Run one seeded trial until front coverage or budget exhaustion.

    ``budget`` caps the total number of evaluations; a step (or a whole
    nsga3 generation) is only started if it fits within the budget.
    """
    if algorithm in POPULATION_ALGORITHMS:
        init_cost = mu if mu is not None else max_incomparable(spec)
    else:
        init_cost = 1
    if budget < init_cost:
        raise ValueError(f"budget {budget} is below the initialization cost {init_cost}")

    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    state = init_run_state(algorithm, spec, rng, mu=mu,
                           reference_granularity=reference_granularity)
    step = _STEPPERS[algorithm]
    step_cost = state.population.mu if algorithm == "nsga3" else 1
    while not state.covered and state.evaluations + step_cost <= budget:
        step(state, spec, rng)
    wall_ms = (time.perf_counter() - started) * 1000.0
    return TrialResult(
        seed=seed,
        covered=state.covered,
        evaluations_to_cover=state.milestones.get("covered"),
        coverage_fraction=state.coverage_fraction,
        corners_eval=state.milestones.get("corners"),
        cliffs_eval=state.milestones.get("cliffs"),
        evaluations=state.evaluations,
        wall_ms=wall_ms,
    )
