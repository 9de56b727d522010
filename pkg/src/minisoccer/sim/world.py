"""Ground-truth match state owned by the simulation thread."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from ..geometry import Vec2
from ..modes import BEFORE_KICK_OFF, PlayMode
from .config import SimConfig

AgentKey = Tuple[str, int]  # (side, unum)


@dataclass(slots=True)
class PlayerState:
    side: str
    unum: int
    pos: Vec2
    vel: Vec2 = Vec2(0.0, 0.0)
    body_dir: float = 0.0
    neck_dir: float = 0.0
    stamina: float = 8000.0
    effort: float = 1.0


@dataclass(slots=True)
class SimWorld:
    cycle: int = 0
    play_mode: PlayMode = BEFORE_KICK_OFF
    score_l: int = 0
    score_r: int = 0
    ball_pos: Vec2 = Vec2(0.0, 0.0)
    ball_vel: Vec2 = Vec2(0.0, 0.0)
    players: Dict[AgentKey, PlayerState] = field(default_factory=dict)
    # Side of the player that last kicked or was last within reach; referees
    # need it to award restarts.
    last_touch_side: Optional[str] = None
    # Cycles spent in the current play mode.
    mode_age: int = 0
    # Side that kicked the ball during the current step, cleared every step.
    kicked_by: Optional[str] = None
    rng_seed: int = 0

    def sorted_players(self):
        return [self.players[k] for k in sorted(self.players)]


def spawn_position(config: SimConfig, side: str, unum: int) -> Vec2:
    """Off-pitch berth used until the player moves itself into formation."""
    x = -3.0 * unum if side == "l" else 3.0 * unum
    y = -(config.y_max + 2.0) if side == "l" else (config.y_max + 2.0)
    return Vec2(x, y)


def add_player(config: SimConfig, world: SimWorld, side: str, unum: int) -> PlayerState:
    key = (side, unum)
    if key in world.players:
        raise ValueError(f"player {key} already registered")
    p = PlayerState(
        side=side,
        unum=unum,
        pos=spawn_position(config, side, unum),
        body_dir=0.0 if side == "l" else -180.0,
        stamina=config.stamina_max,
    )
    world.players[key] = p
    return p


def new_world(config: SimConfig) -> SimWorld:
    return SimWorld(rng_seed=config.seed)


def world_snapshot(world: SimWorld) -> dict:
    """Plain-dict view used by the replay log; key order is fixed by json."""
    return {
        "cycle": world.cycle,
        "play_mode": world.play_mode.to_wire(),
        "score_l": world.score_l,
        "score_r": world.score_r,
        "ball": {
            "x": world.ball_pos.x,
            "y": world.ball_pos.y,
            "vx": world.ball_vel.x,
            "vy": world.ball_vel.y,
        },
        "players": [
            {
                "side": p.side,
                "unum": p.unum,
                "x": p.pos.x,
                "y": p.pos.y,
                "vx": p.vel.x,
                "vy": p.vel.y,
                "body_dir": p.body_dir,
                "neck_dir": p.neck_dir,
                "stamina": p.stamina,
                "effort": p.effort,
            }
            for p in world.sorted_players()
        ],
        "last_touch_side": world.last_touch_side,
        "mode_age": world.mode_age,
    }
