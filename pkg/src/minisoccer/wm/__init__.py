from .integrate import advance_to, integrate_observation
from .intercept import (
    InterceptTable,
    build_intercept_table,
    intercept_cycles,
    predict_ball_position,
    reach_distance,
)
from .localize import FlagSighting, localize
from .params import WmParams
from .state import (
    RELATIVE_MODES,
    PoseEstimate,
    TrackedObject,
    WorldState,
    absolute_play_mode,
    relative_play_mode,
)

__all__ = [
    "FlagSighting",
    "InterceptTable",
    "PoseEstimate",
    "RELATIVE_MODES",
    "TrackedObject",
    "WmParams",
    "WorldState",
    "absolute_play_mode",
    "advance_to",
    "build_intercept_table",
    "integrate_observation",
    "intercept_cycles",
    "localize",
    "predict_ball_position",
    "reach_distance",
    "relative_play_mode",
]
