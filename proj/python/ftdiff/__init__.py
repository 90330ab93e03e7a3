"""Python bindings for the ftdiff differentiator toolkit.

Scenario configs are plain dicts with the same schema as the JSON files the
command-line tool reads.
"""

import json

from ._ftdiff import (
    Algorithm,
    AlphaZero,
    BoundVacuous,
    ConfigInvalid,
    DegenerateFit,
    DiffParams,
    Error,
    InfeasibleGains,
    IoFailure,
    MismatchedScenario,
    NumericalBlowup,
    chattering_index,
    describing_fn,
    design_check,
    finite_time_rate,
    homogeneity_check,
    lambda_min_Q,
    linearized_frequency,
    lyapunov_V,
    min_k2,
    noise_scaling_fit,
    noisy_error_bound,
    omega_integral,
    rhs,
    settle_time,
    settling_time_bound,
    sig_pow,
    steady_error_bound,
)
from . import _ftdiff


def list_presets():
    return list(_ftdiff._preset_names())


def preset(name):
    return json.loads(_ftdiff._preset_json(name))


def normalize(config):
    """Validate a config and fill in defaults."""
    return json.loads(_ftdiff._normalize_json(json.dumps(config)))


def evaluate(config):
    """Simulate and analyse without writing files.

    Returns a dict with `trajectory` (numpy columns), `bounds`, `analysis`
    and `settle_time`.
    """
    return _ftdiff._evaluate_json(json.dumps(config))


def run(config):
    """Simulate, analyse and write `<name>.csv` and `<name>.report.json`."""
    return json.loads(_ftdiff._run_json(json.dumps(config)))
