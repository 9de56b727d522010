"""Single-cycle dynamics: command application, motion integration, stamina.

Step order, fixed for determinism:
  1. trainer commands, in arrival order;
  2. player commands, grouped per player, players visited in (side, unum)
     order, first body command wins;
  3. motion: vel += accel, speed clamp, pos += vel, vel *= decay;
  4. stamina drain and recovery;
  5. cycle += 1.
"""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple, Union

from ..codec.commands import (
    Command,
    Dash,
    Kick,
    Move,
    Say,
    Turn,
    TurnNeck,
)
from ..geometry import Vec2, clamp, from_polar, norm_deg
from ..modes import entitled_side, is_dead_ball
from .config import SimConfig
from .events import (
    SimEvent,
    duplicate_command,
    illegal_command,
    multiple_body_commands,
    say_event,
)
from .world import AgentKey, PlayerState, SimWorld

_DASH_DIRS = (-180.0, -135.0, -90.0, -45.0, 0.0, 45.0, 90.0, 135.0)

TrainerCmd = Tuple[str, Command]  # ("trainer", cmd), applied before players


def quantize_distance(d: float, qstep: float) -> float:
    """Snap a distance onto a grid whose pitch grows linearly past 10 m."""
    step = qstep * max(1.0, d / 10.0)
    return float(rint_half_even(d / step) * step)


def rint_half_even(x: float) -> float:
    # round-half-to-even without pulling numpy into the hot path
    f = math.floor(x)
    r = x - f
    if r > 0.5:
        return f + 1.0
    if r < 0.5:
        return float(f)
    return float(f if f % 2 == 0 else f + 1)


def snap_dash_dir(d: float) -> float:
    return min(_DASH_DIRS, key=lambda c: (abs(norm_deg(d - c)), c))


def _clamp_speed(v: Vec2, vmax: float) -> Vec2:
    s = v.norm()
    if s > vmax:
        return v.scaled(vmax / s)
    return v


def _clamp_pos(cfg: SimConfig, p: Vec2) -> Vec2:
    return Vec2(
        clamp(p.x, -(cfg.x_max + cfg.pitch_margin), cfg.x_max + cfg.pitch_margin),
        clamp(p.y, -(cfg.y_max + cfg.pitch_margin), cfg.y_max + cfg.pitch_margin),
    )


def kick_rate(cfg: SimConfig, player: PlayerState, ball_pos: Vec2) -> float:
    """Directional and positional falloff factor of a kick."""
    dist = player.pos.dist(ball_pos)
    dir_diff = abs(norm_deg(player.pos.bearing_to(ball_pos) - player.body_dir))
    return 1.0 - 0.25 * dir_diff / 180.0 - 0.25 * dist / cfg.kickable_area


def _move_allowed(world: SimWorld) -> bool:
    return world.play_mode.kind in ("before_kick_off", "kick_off")


def _apply_player_command(
    cfg: SimConfig,
    world: SimWorld,
    player: PlayerState,
    cmd: Command,
    accel: dict,
    ball_accel: List[Vec2],
    events: List[SimEvent],
) -> None:
    key = (player.side, player.unum)
    if isinstance(cmd, Move):
        if not _move_allowed(world):
            events.append(illegal_command(key, "move", world.play_mode.to_wire()))
            return
        player.pos = _clamp_pos(cfg, Vec2(cmd.x, cmd.y))
        player.vel = Vec2(0.0, 0.0)
    elif isinstance(cmd, Dash):
        power = clamp(cmd.power, -100.0, 100.0)
        direction = snap_dash_dir(cmd.dir)
        accel[key] = from_polar(
            power * cfg.dash_power_rate * player.effort,
            norm_deg(player.body_dir + direction),
        )
        player.stamina -= max(0.0, power)
    elif isinstance(cmd, Turn):
        player.body_dir = norm_deg(
            player.body_dir + cmd.moment / (1.0 + 5.0 * player.vel.norm())
        )
    elif isinstance(cmd, Kick):
        dist = player.pos.dist(world.ball_pos)
        if dist > cfg.kickable_area:
            events.append(illegal_command(key, "kick", "ball out of reach"))
            return
        if is_dead_ball(world.play_mode) and entitled_side(world.play_mode) != player.side:
            events.append(illegal_command(key, "kick", world.play_mode.to_wire()))
            return
        rate = kick_rate(cfg, player, world.ball_pos)
        ball_accel[0] = ball_accel[0] + from_polar(
            cmd.power * cfg.kick_power_rate * rate,
            norm_deg(player.body_dir + cmd.dir),
        )
        world.last_touch_side = player.side
        world.kicked_by = player.side


def step_simulation(
    cfg: SimConfig,
    world: SimWorld,
    commands: Sequence[Tuple[Union[AgentKey, str], Command]],
) -> List[SimEvent]:
    """Advance one cycle in place; returns the events raised along the way."""
    events: List[SimEvent] = []
    world.kicked_by = None

    from .trainer_cmds import apply_trainer_command  # local import, no cycle

    per_player: dict = {}
    for who, cmd in commands:
        if who == "trainer":
            events.extend(apply_trainer_command(cfg, world, cmd))
        elif isinstance(who, tuple) and who[0] == "coach":
            if isinstance(cmd, Say):
                events.append(say_event(f"coach {who[1]}", cmd.text))
            else:
                events.append(illegal_command(("coach", 0), type(cmd).__name__.lower(), "coach"))
        else:
            per_player.setdefault(who, []).append(cmd)

    accel: dict = {}
    ball_accel = [Vec2(0.0, 0.0)]
    entered_dead = is_dead_ball(world.play_mode)

    for key in sorted(per_player):
        player = world.players.get(key)
        if player is None:
            events.append(illegal_command(key, "?", "unknown player"))
            continue
        body_seen = False
        neck_seen = False
        say_seen = False
        for cmd in per_player[key]:
            if isinstance(cmd, (Move, Dash, Turn, Kick)):
                if body_seen:
                    events.append(multiple_body_commands(key, type(cmd).__name__.lower()))
                    continue
                body_seen = True
                _apply_player_command(cfg, world, player, cmd, accel, ball_accel, events)
            elif isinstance(cmd, TurnNeck):
                if neck_seen:
                    events.append(duplicate_command(key, "turn_neck"))
                    continue
                neck_seen = True
                player.neck_dir = clamp(player.neck_dir + cmd.moment, -90.0, 90.0)
            elif isinstance(cmd, Say):
                if say_seen:
                    events.append(duplicate_command(key, "say"))
                    continue
                say_seen = True
                events.append(say_event(f"{player.side} {player.unum}", cmd.text))
            else:
                events.append(illegal_command(key, type(cmd).__name__.lower(), "not a player command"))

    # Motion integration.
    for key in sorted(world.players):
        player = world.players[key]
        v = player.vel + accel.get(key, Vec2(0.0, 0.0))
        v = _clamp_speed(v, cfg.player_speed_max)
        player.pos = _clamp_pos(cfg, player.pos + v)
        player.vel = v.scaled(cfg.player_decay)

    ball_may_move = (not entered_dead) or world.kicked_by == entitled_side(world.play_mode)
    if ball_may_move:
        bv = _clamp_speed(world.ball_vel + ball_accel[0], cfg.ball_speed_max)
        world.ball_pos = _clamp_pos(cfg, world.ball_pos + bv)
        world.ball_vel = bv.scaled(cfg.ball_decay)
    else:
        world.ball_vel = Vec2(0.0, 0.0)

    for key in sorted(world.players):
        player = world.players[key]
        player.stamina = clamp(player.stamina + cfg.stamina_recovery, 0.0, cfg.stamina_max)

    world.cycle += 1
    return events
