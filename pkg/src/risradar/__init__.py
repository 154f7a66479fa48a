"""RIS-assisted OFDM radar interference mitigation toolkit."""

from .arrays import (
    ALL_SUBCARRIERS,
    CARRIER_ONLY,
    SPEED_OF_LIGHT,
    ArrayGeometry,
    OfdmParams,
    RisConfig,
    SteeringVector,
    angle_grid,
    angle_grid_deg,
    normalize_pattern_db,
    pattern_value,
    power_pattern,
    steering_vector,
)
from .scenario import Scenario, ScenarioError, default_scenario, load_scenario, parse_scenario
from .simulation import (
    InterferenceParams,
    NoiseParams,
    PeakEstimate,
    RadarScenario,
    RvMap,
    SymbolGrid,
    TargetParams,
    estimate_target,
    frame_difference,
    generate_symbols,
    range_error_metric,
    rv_map,
    simulate_frame_pair,
    simulate_received,
)
from .synthesis import (
    NotchSpec,
    PeakNetSpec,
    PeakNetwork,
    SinrReport,
    TrainingDivergedError,
    TrainingResult,
    analytic_peak,
    combine_convolve,
    multi_notch,
    normalize_coefficients,
    notch_config,
    sinr,
    train_peak_network,
)

__all__ = [
    "ALL_SUBCARRIERS",
    "CARRIER_ONLY",
    "SPEED_OF_LIGHT",
    "ArrayGeometry",
    "InterferenceParams",
    "NoiseParams",
    "NotchSpec",
    "OfdmParams",
    "PeakEstimate",
    "PeakNetSpec",
    "PeakNetwork",
    "RadarScenario",
    "RisConfig",
    "RvMap",
    "Scenario",
    "ScenarioError",
    "SinrReport",
    "SteeringVector",
    "SymbolGrid",
    "TargetParams",
    "TrainingDivergedError",
    "TrainingResult",
    "analytic_peak",
    "angle_grid",
    "angle_grid_deg",
    "combine_convolve",
    "default_scenario",
    "estimate_target",
    "frame_difference",
    "generate_symbols",
    "load_scenario",
    "multi_notch",
    "normalize_coefficients",
    "normalize_pattern_db",
    "notch_config",
    "parse_scenario",
    "pattern_value",
    "power_pattern",
    "range_error_metric",
    "rv_map",
    "simulate_frame_pair",
    "simulate_received",
    "sinr",
    "steering_vector",
    "train_peak_network",
]

__version__ = "0.1.0"
