"""Variational mean-field dynamics of coupled oscillators, chaos
diagnostics, and an exact split-operator quantum benchmark."""

from .backend import BACKEND
from .model import (
    InitialConditionConvention,
    MeanFieldState,
    ModelKind,
    ModelParams,
    WidthView,
    energy,
    energy_hartree,
    energy_large_n,
    energy_replica_family,
    eom,
    eom_jacobian,
    from_width_view,
    initial_condition_from_energy,
    large_n_limit_check,
    to_width_view,
)
from .integrators import (
    IntegratorSpec,
    Trajectory,
    integrate,
    step_composition4,
    step_leapfrog,
    step_rk4_generic,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "InitialConditionConvention",
    "IntegratorSpec",
    "MeanFieldState",
    "ModelKind",
    "ModelParams",
    "Trajectory",
    "WidthView",
    "energy",
    "energy_hartree",
    "energy_large_n",
    "energy_replica_family",
    "eom",
    "eom_jacobian",
    "from_width_view",
    "initial_condition_from_energy",
    "integrate",
    "large_n_limit_check",
    "step_composition4",
    "step_leapfrog",
    "step_rk4_generic",
    "to_width_view",
]
