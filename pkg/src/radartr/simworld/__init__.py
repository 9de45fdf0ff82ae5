from radartr.simworld.model import (
    ArtifactConfig,
    CoverageError,
    GroundTruthLog,
    GyroMeasurement,
    SensorRig,
    TruthRecorder,
    WorldModel,
    load_world,
    save_world,
)
from radartr.simworld.pilot import drive_teach, plan_smooth_path
from radartr.simworld.scenarios import BUILTIN_SCENARIOS, builtin_scenario
from radartr.simworld.sensors import ideal_scan_cloud, simulate_gyro, simulate_scan

__all__ = [
    "ArtifactConfig",
    "BUILTIN_SCENARIOS",
    "CoverageError",
    "GroundTruthLog",
    "GyroMeasurement",
    "SensorRig",
    "TruthRecorder",
    "WorldModel",
    "builtin_scenario",
    "drive_teach",
    "ideal_scan_cloud",
    "load_world",
    "plan_smooth_path",
    "save_world",
    "simulate_gyro",
    "simulate_scan",
]
