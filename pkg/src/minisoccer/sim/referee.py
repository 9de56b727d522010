"""Minimal rulebook: goals, ball-out restarts, dead-ball resumption, full time.

Runs once per cycle after motion. Mode transitions happen only here or via
the trainer's change_mode.
"""

from __future__ import annotations

import math
from typing import List

from ..geometry import Vec2, clamp
from ..modes import (
    PLAY_ON,
    TIME_OVER,
    PlayMode,
    entitled_side,
    is_dead_ball,
    kick_off,
    other_side,
)
from .config import SimConfig
from .events import SimEvent, goal, mode_change
from .world import SimWorld


def _enter(world: SimWorld, mode: PlayMode, why: str, events: List[SimEvent]) -> None:
    world.play_mode = mode
    world.mode_age = 0
    events.append(mode_change(mode.to_wire(), why))


def _place_ball(world: SimWorld, pos: Vec2) -> None:
    world.ball_pos = pos
    world.ball_vel = Vec2(0.0, 0.0)


def referee_judge(cfg: SimConfig, world: SimWorld) -> List[SimEvent]:
    events: List[SimEvent] = []
    if world.play_mode == TIME_OVER:
        return events
    if world.cycle >= cfg.total_cycles:
        _enter(world, TIME_OVER, "full time", events)
        return events

    mode = world.play_mode
    bx, by = world.ball_pos.x, world.ball_pos.y
    out_x = cfg.x_max + cfg.ball_size
    out_y = cfg.y_max + cfg.ball_size

    if mode.kind == "goal":
        # One celebratory cycle, then the conceding side restarts from centre.
        if world.mode_age >= 1:
            _place_ball(world, Vec2(0.0, 0.0))
            _enter(world, kick_off(other_side(mode.side)), "after goal", events)
        else:
            world.mode_age += 1
        return events

    if mode == PLAY_ON:
        if abs(bx) > out_x and abs(by) <= cfg.goal_half_width:
            scorer = "l" if bx > 0 else "r"
            if scorer == "l":
                world.score_l += 1
            else:
                world.score_r += 1
            events.append(goal(scorer, world.score_l, world.score_r))
            _place_ball(world, Vec2(0.0, 0.0))
            _enter(world, PlayMode("goal", scorer), "goal", events)
            return events
        if abs(bx) > out_x:
            defender = "r" if bx > 0 else "l"
            attacker = other_side(defender)
            sx = math.copysign(1.0, bx)
            sy = math.copysign(1.0, by)
            if world.last_touch_side == attacker or world.last_touch_side is None:
                _place_ball(world, Vec2(sx * cfg.goal_kick_x, 0.0))
                _enter(world, PlayMode("goal_kick", defender), "ball over goal line", events)
            else:
                _place_ball(
                    world,
                    Vec2(sx * (cfg.x_max - cfg.corner_margin), sy * (cfg.y_max - cfg.corner_margin)),
                )
                _enter(world, PlayMode("corner_kick", attacker), "ball over goal line", events)
            return events
        if abs(by) > out_y:
            toucher = world.last_touch_side
            awarded = other_side(toucher) if toucher else "l"
            _place_ball(world, Vec2(clamp(bx, -cfg.x_max, cfg.x_max), math.copysign(cfg.y_max, by)))
            _enter(world, PlayMode("kick_in", awarded), "ball over touchline", events)
            return events
        world.mode_age += 1
        return events

    # Dead-ball modes: wait for the entitled kick, or resume on a timer.
    if is_dead_ball(mode):
        if world.kicked_by is not None and world.kicked_by == entitled_side(mode):
            _enter(world, PLAY_ON, "restart taken", events)
            return events
        world.mode_age += 1
        if world.mode_age >= cfg.dead_ball_limit:
            _enter(world, PLAY_ON, "restart timer expired", events)
        return events

    world.mode_age += 1
    return events
