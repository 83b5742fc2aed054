"""Two-machine partition: exact integer core, hard instance generators,
randomized search heuristics, reference oracles, and an experiment harness."""

from .algorithms import (
    StopCondition,
    TrialResult,
    restart_length_for_ratio,
    run_ia_hyp,
    run_mu_ea_ageing,
    run_one_one_ea,
    run_rls,
    run_with_restarts,
)
from .core import (
    Assignment,
    ContractViolationError,
    EvaluationCounter,
    Instance,
    InstanceMeta,
    complement,
    flip_in_place,
    is_local_optimum,
    makespan,
)
from .harness import (
    ALGORITHMS,
    AggregateReport,
    ExperimentConfig,
    derive_seed,
    export_report,
    report_rows,
    run_experiment,
    scaling_sweep,
)
from .instances import (
    GStarParams,
    InstanceFormatError,
    ParameterError,
    gen_g_star,
    gen_p_star,
    gen_uniform,
    read_instance,
    write_instance,
)
from .operators import (
    AgedIndividual,
    HypermutationTrace,
    hypermutate_fcm,
    hypermutation_full_trajectory,
    one_bit_flip,
    sbm,
    trajectory_ones_counts,
)
from .oracles import (
    CapacityError,
    IntervalCounts,
    LocalOptimaSummary,
    brute_force_optimum,
    dp_optimal_assignment,
    dp_optimal_makespan,
    enumerate_local_optima,
    g_star_local_optima,
    interval_progress_stat,
    lpt,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "AgedIndividual",
    "AggregateReport",
    "Assignment",
    "CapacityError",
    "ContractViolationError",
    "EvaluationCounter",
    "ExperimentConfig",
    "GStarParams",
    "HypermutationTrace",
    "Instance",
    "InstanceFormatError",
    "InstanceMeta",
    "IntervalCounts",
    "LocalOptimaSummary",
    "ParameterError",
    "StopCondition",
    "TrialResult",
    "brute_force_optimum",
    "complement",
    "derive_seed",
    "dp_optimal_assignment",
    "dp_optimal_makespan",
    "enumerate_local_optima",
    "export_report",
    "flip_in_place",
    "g_star_local_optima",
    "gen_g_star",
    "gen_p_star",
    "gen_uniform",
    "hypermutate_fcm",
    "hypermutation_full_trajectory",
    "interval_progress_stat",
    "is_local_optimum",
    "lpt",
    "makespan",
    "one_bit_flip",
    "read_instance",
    "report_rows",
    "restart_length_for_ratio",
    "run_experiment",
    "run_ia_hyp",
    "run_mu_ea_ageing",
    "run_one_one_ea",
    "run_rls",
    "run_with_restarts",
    "sbm",
    "scaling_sweep",
    "trajectory_ones_counts",
    "write_instance",
]
