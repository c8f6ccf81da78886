"""Flash-memory modulation codes and balls-into-bins analysis."""

from ._core import (
    CellState,
    CodeParams,
    FieldSpec,
    ModulationCode,
    __version__,
    balls_until_overflow,
    cell_increment,
    collision_bound,
    entropy_bits,
    gamma_upper_bounds,
    gf_add,
    gf_inv,
    gf_mul,
    l1_norm,
    lambert_w0,
    max_load_prediction,
    min_of_n_expectation,
    overflow_eta,
    roundtrip_check,
    run_experiment,
    solve_dc,
    throw_balls,
    weighted_sum,
)

__all__ = [
    "CellState",
    "CodeParams",
    "FieldSpec",
    "ModulationCode",
    "__version__",
    "balls_until_overflow",
    "cell_increment",
    "collision_bound",
    "entropy_bits",
    "gamma_upper_bounds",
    "gf_add",
    "gf_inv",
    "gf_mul",
    "l1_norm",
    "lambert_w0",
    "max_load_prediction",
    "min_of_n_expectation",
    "overflow_eta",
    "roundtrip_check",
    "run_experiment",
    "solve_dc",
    "throw_balls",
    "weighted_sum",
]
