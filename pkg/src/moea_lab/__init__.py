"""Many-objective evolutionary algorithms on pseudo-Boolean benchmarks.

Exact fitness-evaluation counting until Pareto-front coverage for SEMO,
GSEMO, SMS-EMOA, and NSGA-III on OneMinMax, CountingOnesCountingZeros,
LeadingOnesTrailingZeros, and OneJumpZeroJump, plus evaluators for the
corresponding theoretical runtime bounds.
"""

from .algorithms import (
    MutationKind,
    RunState,
    TrialResult,
    gsemo_step,
    init_run_state,
    mutate,
    nsga3_generation,
    run_trial,
    semo_step,
    smsemoa_step,
)
from .benchmarks import (
    BenchmarkSpec,
    CapacityError,
    FrontDescriptor,
    MilestoneSets,
    brute_force_front,
    evaluate,
    front_size,
    is_covered,
    is_front_value,
    iter_front_values,
    max_incomparable,
    milestone_sets,
    pareto_front,
)
from .bounds import BoundReport, bound_cocz, bound_for, bound_lotz, bound_ojzj, bound_omm, transfer
from .core import (
    BitString,
    FixedPopulation,
    ObjectiveVector,
    ParetoArchive,
    block_ones,
    dominates,
    random_bitstring,
    strictly_dominates,
)
from .harness import ExperimentConfig, SummaryStats, derive_seed, run_experiment, write_results
from .ranking import (
    FrontPartition,
    ReferencePointSet,
    fast_non_dominated_sort,
    hv_contribution,
    hv_contributions,
    hypervolume,
    min_reference_granularity,
    niche_select,
    reference_points,
)

__version__ = "0.1.0"
