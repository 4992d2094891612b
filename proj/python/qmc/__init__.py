"""QAOA Max-Cut toolkit: state-vector simulator, density-based parameter
transfer, Goemans-Williamson baseline, and AC power-flow edge weighting."""

from ._core import (
    CAMPAIGN_SHOTS,
    QUICK_SHOTS,
    DataError,
    NoiseModel,
    NumericError,
    OptimizeResult,
    ParamRecord,
    PowerFlowCase,
    QaoaParams,
    RatioDistribution,
    TransferDatabase,
    WeightedGraph,
    approximation_ratio,
    brute_force_maxcut,
    cut_value,
    cut_value_bits,
    exact_expectation,
    fourier_optimize,
    generate_test_suite,
    gw_baseline,
    gw_relaxation_objective,
    is_planar,
    multistart_optimize,
    noisy_expectation_density,
    noisy_mean_trajectories,
    power_flow_weights,
    random_graph,
    read_database,
    read_power_flow_case,
    run_qaoa,
    sample_qaoa,
    select_params,
    solve_power_flow,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
