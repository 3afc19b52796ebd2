"""p-bit simulated annealing with device variability for MAX-CUT."""

from ._core import (
    Algorithm,
    AlgorithmConfig,
    AnnealSchedule,
    ExperimentSpec,
    ExperimentSummary,
    GsetFile,
    IsingModel,
    MaxCutGraph,
    ProblemCatalog,
    TraceRecord,
    TrialResult,
    VariabilityConfig,
    VariabilityProfile,
    cut_value,
    derive_schedule,
    energy,
    load_best_known,
    maxcut_to_ising,
    parse_gset,
    pbit_update,
    run_anneal,
    run_trials,
    sample_variability,
    summarize,
    sweep,
)

__all__ = [
    "Algorithm",
    "AlgorithmConfig",
    "AnnealSchedule",
    "ExperimentSpec",
    "ExperimentSummary",
    "GsetFile",
    "IsingModel",
    "MaxCutGraph",
    "ProblemCatalog",
    "TraceRecord",
    "TrialResult",
    "VariabilityConfig",
    "VariabilityProfile",
    "cut_value",
    "derive_schedule",
    "energy",
    "load_best_known",
    "maxcut_to_ising",
    "parse_gset",
    "pbit_update",
    "run_anneal",
    "run_trials",
    "sample_variability",
    "summarize",
    "sweep",
]
