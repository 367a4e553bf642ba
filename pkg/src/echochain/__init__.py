"""Echo chains in a coupled vorticity/density mode system around a traveling wave.

The package splits along the natural seams of the problem: `params` holds the
physical/configuration dataclasses, `wave` the scalar wave-amplitude ODE and
its decay checks, `modes` the coupled mode right-hand side and coefficient
algebra, `stepper` the adaptive integrating-factor integrator, `diagnostics`
the norms/gains/bootstrap checks, `blowup` the multi-frequency composition,
and `cli` the batch runner.
"""

from .blowup import (BlowupSpec, InflationProfile, compose_initial_data,
                     echo_experiment, inflation_profile, rho_hat,
                     sobolev_trajectory)
from .diagnostics import (ChainRecord, ChainReport, FitReport, RegressorFit,
                          bootstrap_check, chain_report, coefficient_integral,
                          echo_gain, energy, energy_series, fit_cube_root,
                          g_kernel_bound, g_kernel_integral, multiplier_intermediate,
                          multiplier_small, multiplier_small_profile, norm_X,
                          persistence_check, thresholds)
from .modes import (CoefficientQuery, RhsWorkspace, coeff_c, coeff_d,
                    dissipation_exponent, good_unknown_forward,
                    good_unknown_inverse, resonant_time, rhs_full, rhs_model,
                    stream_function)
from .params import (DEFAULT_THRESHOLD_FACTORS, InitSpec, ModeState,
                     ParameterError, PhysicalParams, RegimeThresholds,
                     SimConfig, WeightSpec, check_mode_budget, initial_state,
                     params_with, validate_params, weight_eval, weight_profile)
from .reports import write_json_report, write_trajectory_csv
from .stepper import (Trajectory, TruncationError, integrate,
                      load_initial_state, step_etd)
from .wave import (IntegrationError, WaveState, duhamel_f, fit_inviscid_exponent,
                   fit_power_law, homogeneous_f, inviscid_exponent, solve_wave_ode,
                   verify_f_bound, wave_ode_rhs)

__version__ = "0.1.0"

__all__ = [
    "BlowupSpec", "ChainRecord", "ChainReport", "CoefficientQuery",
    "DEFAULT_THRESHOLD_FACTORS", "FitReport", "InflationProfile", "InitSpec",
    "IntegrationError", "ModeState", "ParameterError", "PhysicalParams",
    "RegimeThresholds", "RegressorFit", "RhsWorkspace", "SimConfig",
    "Trajectory", "TruncationError", "WaveState", "WeightSpec",
    "bootstrap_check", "chain_report", "check_mode_budget", "coeff_c",
    "coeff_d", "coefficient_integral", "compose_initial_data",
    "dissipation_exponent", "duhamel_f", "echo_experiment", "echo_gain", "energy",
    "energy_series", "fit_cube_root", "fit_inviscid_exponent",
    "fit_power_law", "g_kernel_bound", "g_kernel_integral",
    "good_unknown_forward", "good_unknown_inverse", "homogeneous_f",
    "inflation_profile", "initial_state", "integrate", "inviscid_exponent",
    "load_initial_state",
    "multiplier_intermediate", "multiplier_small", "multiplier_small_profile",
    "norm_X", "params_with", "persistence_check", "resonant_time", "rho_hat",
    "rhs_full", "rhs_model", "sobolev_trajectory", "solve_wave_ode",
    "step_etd", "stream_function", "thresholds", "validate_params",
    "verify_f_bound", "wave_ode_rhs", "weight_eval", "weight_profile",
    "write_json_report", "write_trajectory_csv",
]
