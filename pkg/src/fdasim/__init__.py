"""Frequency diverse array beampattern simulation and causality verification.

Evaluates the FDA array factor under three frequency-offset semantics
(constant, naive time-modulated, causal retarded-time), sweeps normalized
power grids over space-time slices, and mechanically checks light-cone
causality and retarded-time invariance.
"""

from .model import (
    C_VACUUM,
    ArrayGeometry,
    CausalTimeModulated,
    ConstantOffset,
    ExcitationWindow,
    FocusSpec,
    NaiveTimeModulated,
    OffsetModel,
    SingularDenominator,
    SpaceTimePoint,
    emission_time,
    offset_at,
)
from .arrayfactor import FieldSample, GatingMode, array_factor, field_values, power_db
from .grid import (
    AllSamplesInvalid,
    AxisSpec,
    EmptyGrid,
    FocusTrajectory,
    PowerGrid,
    Simulation,
    find_focus,
    sweep_range_angle,
    sweep_time_range,
)
from .analysis import (
    CausalityReport,
    DegenerateTrajectory,
    InvarianceReport,
    ModelComparison,
    VelocityReport,
    WrongGridKind,
    check_causality,
    check_naive_focus_constancy,
    check_retarded_invariance,
    compare_models,
    estimate_focus_velocity,
)
from .config import ConfigError, ParseError, SimulationConfig, ValidationError, load_config
from .gridio import grid_to_text, read_grid, write_grid
from .cli import cli_main

__version__ = "0.1.0"

__all__ = [
    "ArrayGeometry",
    "FocusSpec",
    "ConstantOffset",
    "NaiveTimeModulated",
    "CausalTimeModulated",
    "OffsetModel",
    "ExcitationWindow",
    "SpaceTimePoint",
    "SingularDenominator",
    "C_VACUUM",
    "emission_time",
    "offset_at",
    "FieldSample",
    "GatingMode",
    "array_factor",
    "field_values",
    "power_db",
    "AxisSpec",
    "PowerGrid",
    "FocusTrajectory",
    "Simulation",
    "AllSamplesInvalid",
    "EmptyGrid",
    "sweep_range_angle",
    "sweep_time_range",
    "find_focus",
    "CausalityReport",
    "InvarianceReport",
    "VelocityReport",
    "ModelComparison",
    "WrongGridKind",
    "DegenerateTrajectory",
    "check_causality",
    "check_retarded_invariance",
    "check_naive_focus_constancy",
    "estimate_focus_velocity",
    "compare_models",
    "SimulationConfig",
    "ConfigError",
    "ParseError",
    "ValidationError",
    "load_config",
    "write_grid",
    "read_grid",
    "grid_to_text",
    "cli_main",
]
