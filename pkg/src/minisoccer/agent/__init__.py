"""Proxy agents: world-model loops bridging the sim server and playmakers."""

from .compile import (
    INTERCEPT_DIST_THR,
    NECK_LIMIT_DEG,
    TURN_DASH_THRESHOLD_DEG,
    ball_kickable,
    compile_action,
)
from .config import AgentConfig
from .fallback import BALL_CONFIDENCE_FLOOR, SCAN_TURN_DEG, fallback_body
from .loop import (
    Agent,
    AgentStats,
    CycleLog,
    SOURCE_AUTO_MOVE,
    SOURCE_FALLBACK,
    SOURCE_PLAYMAKER,
    ServerUnreachable,
    run_agent,
)
from .team import TeamConfig, TeamHandle, run_team, start_team

__all__ = [
    "Agent",
    "AgentConfig",
    "AgentStats",
    "BALL_CONFIDENCE_FLOOR",
    "CycleLog",
    "INTERCEPT_DIST_THR",
    "NECK_LIMIT_DEG",
    "SCAN_TURN_DEG",
    "SOURCE_AUTO_MOVE",
    "SOURCE_FALLBACK",
    "SOURCE_PLAYMAKER",
    "ServerUnreachable",
    "TURN_DASH_THRESHOLD_DEG",
    "TeamConfig",
    "TeamHandle",
    "ball_kickable",
    "compile_action",
    "fallback_body",
    "run_agent",
    "run_team",
    "start_team",
]
