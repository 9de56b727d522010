"""Render per-agent observations from ground truth.

Two fidelities: the exact FullState channel, and the degraded See channel
(90 degree cone, quantized distances, whole-degree directions, plus an exact
SenseBody). Trainers and coaches always get the exact global view.
"""

from __future__ import annotations

from typing import List, Optional

from ..codec.landmarks import FLAGS, GOALS
from ..codec.messages import (
    BallObj,
    FlagObj,
    FullState,
    GoalObj,
    ObservedObject,
    PlayerObj,
    PlayerSnap,
    See,
    SenseBody,
    ServerMessage,
)
from ..geometry import Vec2, norm_deg
from .config import SimConfig
from .physics import quantize_distance
from .world import AgentKey, PlayerState, SimWorld


def full_state_message(world: SimWorld) -> FullState:
    return FullState(
        cycle=world.cycle,
        play_mode=world.play_mode,
        score_l=world.score_l,
        score_r=world.score_r,
        ball_pos=world.ball_pos,
        ball_vel=world.ball_vel,
        players=tuple(
            PlayerSnap(p.side, p.unum, p.pos, p.vel, p.body_dir, p.neck_dir, p.stamina, p.effort)
            for p in world.sorted_players()
        ),
    )


def sense_body_message(world: SimWorld, player: PlayerState) -> SenseBody:
    speed = player.vel.norm()
    # Direction of travel is reported in the global frame.
    speed_dir = norm_deg(Vec2(0.0, 0.0).bearing_to(player.vel)) if speed > 0 else 0.0
    return SenseBody(
        cycle=world.cycle,
        stamina=player.stamina,
        effort=player.effort,
        speed_mag=speed,
        speed_dir=speed_dir,
        neck_dir=player.neck_dir,
    )


def _observe(
    cfg: SimConfig,
    observer: PlayerState,
    target: Vec2,
    name,
    half_cone: float,
) -> Optional[ObservedObject]:
    rel = target - observer.pos
    dist = rel.norm()
    facing = norm_deg(observer.body_dir + observer.neck_dir)
    rel_dir = norm_deg(observer.pos.bearing_to(target) - facing) if dist > 0 else 0.0
    if abs(rel_dir) > half_cone:
        return None
    reported_dir = norm_deg(float(round(rel_dir)))
    return ObservedObject(name, quantize_distance(dist, cfg.quantize_step), reported_dir)


def see_message(cfg: SimConfig, world: SimWorld, key: AgentKey) -> See:
    me = world.players[key]
    half_cone = cfg.visible_angle / 2.0
    objects: List[ObservedObject] = []

    obs = _observe(cfg, me, world.ball_pos, BallObj(), half_cone)
    if obs is not None:
        objects.append(obs)
    for side in ("l", "r"):
        obs = _observe(cfg, me, GOALS[f"g {side}"], GoalObj(side), half_cone)
        if obs is not None:
            objects.append(obs)
    for fid in sorted(FLAGS):
        obs = _observe(cfg, me, FLAGS[fid], FlagObj(fid), half_cone)
        if obs is not None:
            objects.append(obs)
    for other_key in sorted(world.players):
        if other_key == key:
            continue
        other = world.players[other_key]
        obs = _observe(cfg, me, other.pos, PlayerObj(other.side, other.unum), half_cone)
        if obs is not None:
            objects.append(obs)
    return See(cycle=world.cycle, objects=tuple(objects))


def render_observation(cfg: SimConfig, world: SimWorld, key: AgentKey, mode: str) -> List[ServerMessage]:
    """Messages for one player this cycle; mode is "see" or "fullstate"."""
    if key not in world.players:
        raise KeyError(f"unknown agent {key}")
    if mode == "fullstate":
        return [full_state_message(world)]
    me = world.players[key]
    return [sense_body_message(world, me), see_message(cfg, world, key)]
