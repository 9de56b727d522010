from .config import PlayerTypeInfo, SimConfig
from .events import SimEvent
from .observe import full_state_message, render_observation, see_message, sense_body_message
from .physics import kick_rate, quantize_distance, snap_dash_dir, step_simulation
from .referee import referee_judge
from .server import ServerStats, SimServer, run_server
from .world import (
    AgentKey,
    PlayerState,
    SimWorld,
    add_player,
    new_world,
    spawn_position,
    world_snapshot,
)

__all__ = [
    "AgentKey",
    "PlayerState",
    "PlayerTypeInfo",
    "ServerStats",
    "SimConfig",
    "SimEvent",
    "SimServer",
    "SimWorld",
    "add_player",
    "full_state_message",
    "kick_rate",
    "new_world",
    "quantize_distance",
    "referee_judge",
    "render_observation",
    "run_server",
    "see_message",
    "sense_body_message",
    "snap_dash_dir",
    "spawn_position",
    "step_simulation",
    "world_snapshot",
]
