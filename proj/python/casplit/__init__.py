"""PDCP split simulator for carrier aggregation."""

from ._casplit import (
    ConfigError,
    FuzzyPidController,
    Policy,
    RunMode,
    ScenarioConfig,
    brute_force_min_T,
    compute_k,
    convergence,
    eta,
    flat_scenario,
    fuzzify,
    k_sweep,
    load_config,
    mobile_scenario,
    parse_config,
    pearson,
    pid_increment,
    run,
    run_suite,
    schedule_action,
    static_scenario,
    utilization_ratio,
    verify_nstep_identity,
)

__version__ = "0.3.0"

__all__ = [
    "ConfigError",
    "FuzzyPidController",
    "Policy",
    "RunMode",
    "ScenarioConfig",
    "brute_force_min_T",
    "compute_k",
    "convergence",
    "eta",
    "flat_scenario",
    "fuzzify",
    "k_sweep",
    "load_config",
    "mobile_scenario",
    "parse_config",
    "pearson",
    "pid_increment",
    "run",
    "run_suite",
    "schedule_action",
    "static_scenario",
    "utilization_ratio",
    "verify_nstep_identity",
]
