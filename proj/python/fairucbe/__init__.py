"""Python façade over the C++ bandit core."""

from ._core import (
    ConfigError,
    ConstraintError,
    FairUcbeError,
    Hyperparams,
    active_set,
    alpha_ceiling,
    check_epsilon_bound,
    check_lemma4,
    confidence_radius,
    decision_distribution,
    derive_hyperparams,
    epsilon_floor,
    fairness_audit,
    regret_bound_B,
    simulate,
    window_length,
)

__all__ = [
    "ConfigError",
    "ConstraintError",
    "FairUcbeError",
    "Hyperparams",
    "active_set",
    "alpha_ceiling",
    "check_epsilon_bound",
    "check_lemma4",
    "confidence_radius",
    "decision_distribution",
    "derive_hyperparams",
    "epsilon_floor",
    "fairness_audit",
    "regret_bound_B",
    "simulate",
    "window_length",
]
