"""Fuse server messages into the WorldState."""

from __future__ import annotations

from typing import Optional

from ..codec.landmarks import LANDMARKS
from ..codec.messages import (
    BallObj,
    FlagObj,
    FullState,
    GoalObj,
    Hear,
    PlayerObj,
    See,
    SenseBody,
    ServerMessage,
)
from ..geometry import Vec2, from_polar, norm_deg
from ..modes import PlayMode
from .localize import FlagSighting, localize
from .state import PoseEstimate, TrackedObject, WorldState

_MAX_HEARS = 50
_BALL_DIFF_WINDOW = 5  # max cycle gap for two-point velocity differencing


def advance_to(ws: WorldState, cycle: int) -> None:
    """Decay and extrapolate everything up to `cycle` before fusing."""
    dc = cycle - ws.cycle
    if dc <= 0:
        return
    p = ws.params
    conf = p.confidence_decay**dc
    if ws.ball is not None:
        b = ws.ball
        factor = (1.0 - p.ball_decay**dc) / (1.0 - p.ball_decay)
        b.pos = b.pos + b.vel.scaled(factor)
        b.vel = b.vel.scaled(p.ball_decay**dc)
        b.confidence *= conf
    for group in (ws.teammates, ws.opponents):
        for obj in group.values():
            factor = (1.0 - p.player_decay**dc) / (1.0 - p.player_decay)
            obj.pos = obj.pos + obj.vel.scaled(factor)
            obj.vel = obj.vel.scaled(p.player_decay**dc)
            obj.confidence *= conf
    ws.self_pose.pos = ws.self_pose.pos + ws.self_vel.scaled(
        (1.0 - p.player_decay**dc) / (1.0 - p.player_decay)
    )
    ws.self_vel = ws.self_vel.scaled(p.player_decay**dc)
    ws.cycle = cycle


def _track(ws: WorldState, team: str, unum: int) -> TrackedObject:
    group = ws.teammates if team == "ours" else ws.opponents
    obj = group.get(unum)
    if obj is None:
        obj = TrackedObject(kind="player", side=team, unum=unum)
        group[unum] = obj
    return obj


def _fuse_see(ws: WorldState, msg: See) -> None:
    flags: list[FlagSighting] = []
    others = []
    for obs in msg.objects:
        name = obs.name
        if isinstance(name, FlagObj):
            truth = ws.norm_pos(LANDMARKS[name.flag_id])
            flags.append((truth, obs.distance, obs.direction))
        elif isinstance(name, GoalObj):
            truth = ws.norm_pos(LANDMARKS[f"g {name.side}"])
            flags.append((truth, obs.distance, obs.direction))
        else:
            others.append(obs)

    prior_age = ws.cycle - ws.last_fix_cycle
    pose = localize(
        flags,
        ws.self_pose,
        ws.params,
        last_vel=Vec2(0.0, 0.0),  # advance_to already propagated the prior
        neck_dir=ws.self_pose.neck_dir,
        prior_age=prior_age,
    )
    ws.self_pose = pose
    if len(flags) >= 2 and pose.valid:
        ws.last_fix_cycle = msg.cycle

    if not pose.valid:
        ws.sync_self_entry()
        return

    face = pose.body_dir + pose.neck_dir
    for obs in others:
        global_pos = pose.pos + from_polar(obs.distance, norm_deg(face + obs.direction))
        name = obs.name
        if isinstance(name, BallObj):
            ball = ws.ball
            if ball is None:
                ball = TrackedObject(kind="ball")
                ws.ball = ball
            prev = ws.last_ball_sight
            if prev is not None and 0 < msg.cycle - prev[0] <= _BALL_DIFF_WINDOW:
                gap = msg.cycle - prev[0]
                ball.vel = (global_pos - prev[1]).scaled(1.0 / gap)
            ball.pos = global_pos
            ball.confidence = 1.0
            ball.last_seen_cycle = msg.cycle
            ws.last_ball_sight = (msg.cycle, global_pos)
        elif isinstance(name, PlayerObj) and name.side is not None and name.unum is not None:
            obj = _track(ws, ws.team_of(name.side), name.unum)
            obj.pos = global_pos
            obj.body_dir = None
            obj.confidence = 1.0
            obj.last_seen_cycle = msg.cycle
        # anonymous players carry no identity to file them under: dropped
    ws.sync_self_entry()


def _fuse_fullstate(ws: WorldState, msg: FullState) -> None:
    ws.play_mode = msg.play_mode
    if ws.our_side == "l":
        ws.score_ours, ws.score_theirs = msg.score_l, msg.score_r
    else:
        ws.score_ours, ws.score_theirs = msg.score_r, msg.score_l

    ball = ws.ball
    if ball is None:
        ball = TrackedObject(kind="ball")
        ws.ball = ball
    ball.pos = ws.norm_pos(msg.ball_pos)
    ball.vel = ws.norm_pos(msg.ball_vel)
    ball.confidence = 1.0
    ball.last_seen_cycle = msg.cycle
    ws.last_ball_sight = (msg.cycle, ball.pos)

    for snap in msg.players:
        team = ws.team_of(snap.side)
        pos = ws.norm_pos(snap.pos)
        vel = ws.norm_pos(snap.vel)
        body = ws.norm_dir(snap.body_dir)
        if team == "ours" and snap.unum == ws.self_unum:
            ws.self_pose = PoseEstimate(
                pos=pos, body_dir=body, neck_dir=snap.neck_dir, pos_error=0.0, valid=True
            )
            ws.self_vel = vel
            ws.stamina = snap.stamina
            ws.effort = snap.effort
            ws.last_fix_cycle = msg.cycle
        obj = _track(ws, team, snap.unum)
        obj.pos = pos
        obj.vel = vel
        obj.body_dir = body
        obj.confidence = 1.0
        obj.last_seen_cycle = msg.cycle
    ws.sync_self_entry()


def _fuse_sense_body(ws: WorldState, msg: SenseBody) -> None:
    ws.stamina = msg.stamina
    ws.effort = msg.effort
    ws.self_vel = from_polar(msg.speed_mag, ws.norm_dir(msg.speed_dir))
    ws.self_pose.neck_dir = msg.neck_dir


def _fuse_hear(ws: WorldState, msg: Hear) -> None:
    ws.hears.append((msg.cycle, msg.sender, msg.text))
    if len(ws.hears) > _MAX_HEARS:
        del ws.hears[: len(ws.hears) - _MAX_HEARS]
    if msg.sender == "referee":
        try:
            ws.play_mode = PlayMode.from_wire(msg.text)
        except ValueError:
            pass


def integrate_observation(ws: WorldState, msg: ServerMessage) -> WorldState:
    cycle: Optional[int] = getattr(msg, "cycle", None)
    if cycle is not None:
        if cycle < ws.cycle:
            ws.stale_messages += 1
            return ws
        advance_to(ws, cycle)
    if isinstance(msg, See):
        _fuse_see(ws, msg)
    elif isinstance(msg, FullState):
        _fuse_fullstate(ws, msg)
    elif isinstance(msg, SenseBody):
        _fuse_sense_body(ws, msg)
    elif isinstance(msg, Hear):
        _fuse_hear(ws, msg)
    return ws
