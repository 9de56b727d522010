"""Trainer-side interventions: teleports, mode changes, stamina resets."""

from __future__ import annotations

from typing import List

from ..codec.commands import ChangeMode, Command, Recover, TrainerMove
from ..geometry import Vec2
from .config import SimConfig
from .events import SimEvent, illegal_command, mode_change
from .physics import _clamp_pos, _clamp_speed
from .world import SimWorld


def apply_trainer_command(cfg: SimConfig, world: SimWorld, cmd: Command) -> List[SimEvent]:
    events: List[SimEvent] = []
    if isinstance(cmd, TrainerMove):
        if cmd.target[0] == "ball":
            world.ball_pos = _clamp_pos(cfg, Vec2(cmd.x, cmd.y))
            if cmd.vx is not None and cmd.vy is not None:
                world.ball_vel = _clamp_speed(Vec2(cmd.vx, cmd.vy), cfg.ball_speed_max)
            else:
                world.ball_vel = Vec2(0.0, 0.0)
        else:
            key = (cmd.target[1], cmd.target[2])
            player = world.players.get(key)
            if player is None:
                events.append(illegal_command(("trainer", 0), "move", f"no player {key}"))
                return events
            player.pos = _clamp_pos(cfg, Vec2(cmd.x, cmd.y))
            player.vel = Vec2(0.0, 0.0)
            if cmd.dir is not None:
                player.body_dir = cmd.dir
    elif isinstance(cmd, ChangeMode):
        if world.play_mode != cmd.mode:
            world.play_mode = cmd.mode
            world.mode_age = 0
            events.append(mode_change(cmd.mode.to_wire(), "trainer"))
    elif isinstance(cmd, Recover):
        for player in world.players.values():
            player.stamina = cfg.stamina_max
            player.effort = 1.0
    else:
        events.append(illegal_command(("trainer", 0), type(cmd).__name__.lower(), "not a trainer command"))
    return events
