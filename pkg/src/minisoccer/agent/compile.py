"""Turning high-level body actions into primitive commands.

All geometry here is in the team-normalized frame of the world model;
relative angles (turn moments, dash and kick directions) are frame
independent, so the emitted primitives are valid on either side.

``compile_action`` returns None when an action is infeasible in the
current state; the caller then tries the next action in the list.
"""

from __future__ import annotations

import math
from typing import Optional

from ..geometry import Vec2, norm_deg
from ..rpc import actions as act
from ..wm.intercept import InterceptTable, predict_ball_position
from ..wm.state import WorldState

TURN_DASH_THRESHOLD_DEG = 15.0
INTERCEPT_DIST_THR = 0.3
NECK_LIMIT_DEG = 90.0


def _rel_dir(ws: WorldState, target: Vec2) -> float:
    bearing = ws.self_pose.pos.bearing_to(target)
    return norm_deg(bearing - ws.self_pose.body_dir)


def ball_kickable(ws: WorldState) -> bool:
    ball = ws.ball
    if ball is None or ball.confidence <= 0.0:
        return False
    return ws.self_pose.pos.dist(ball.pos) <= ws.params.kickable_area


def _kick_falloff(ws: WorldState) -> float:
    ball = ws.ball
    dist = ws.self_pose.pos.dist(ball.pos)
    dir_diff = abs(_rel_dir(ws, ball.pos))
    return 1.0 - 0.25 * dir_diff / 180.0 - 0.25 * dist / ws.params.kickable_area


def _compile_go_to_point(ws: WorldState, a: act.GoToPointAction):
    dist = ws.self_pose.pos.dist(a.target)
    if dist <= a.dist_thr:
        return None
    rel = _rel_dir(ws, a.target)
    if abs(rel) > TURN_DASH_THRESHOLD_DEG:
        return act.TurnAction(rel)
    power = dist / (ws.params.dash_power_rate * ws.effort)
    return act.DashAction(min(a.max_power, power), 0.0)


def _compile_smart_kick(ws: WorldState, a: act.SmartKickAction):
    if not ball_kickable(ws):
        return None
    ball = ws.ball
    to_target = a.target - ball.pos
    span = to_target.norm()
    if span < 1e-12:
        return None
    u = to_target.scaled(1.0 / span)
    desired = u.scaled(a.first_speed)
    need = desired - ball.vel
    need_mag = need.norm()
    rate = ws.params.kick_power_rate * _kick_falloff(ws)
    max_accel = 100.0 * rate
    if need_mag <= max_accel:
        power = need_mag / rate
        rel = norm_deg(
            math.degrees(math.atan2(need.y, need.x)) - ws.self_pose.body_dir
        )
        return act.KickAction(power, rel)
    # Cannot reach first_speed in one kick: put everything into the target
    # direction, which maximizes the speed achieved toward it.
    rel = norm_deg(math.degrees(math.atan2(u.y, u.x)) - ws.self_pose.body_dir)
    return act.KickAction(100.0, rel)


def _compile_intercept(ws: WorldState, table: InterceptTable):
    ball = ws.ball
    if ball is None or ball.confidence <= 0.0:
        return None
    cycles = table.cycles_for("ours", ws.self_unum)
    horizon = ws.params.intercept_horizon if cycles is None else cycles
    spot = predict_ball_position(ball, horizon, ws.params.ball_decay)
    return _compile_go_to_point(
        ws, act.GoToPointAction(spot, INTERCEPT_DIST_THR, 100.0)
    )


def _compile_neck_to_ball(ws: WorldState):
    ball = ws.ball
    if ball is None or ball.confidence <= 0.0:
        return None
    bearing = ws.self_pose.pos.bearing_to(ball.pos)
    desired_neck = norm_deg(bearing - ws.self_pose.body_dir)
    desired_neck = max(-NECK_LIMIT_DEG, min(NECK_LIMIT_DEG, desired_neck))
    moment = desired_neck - ws.self_pose.neck_dir
    return act.TurnNeckAction(norm_deg(moment))


def compile_action(
    ws: WorldState, table: InterceptTable, action: act.PlayerActionT
) -> Optional[act.PlayerActionT]:
    """Reduce `action` to a primitive; None means infeasible right now."""
    if isinstance(
        action,
        (act.DashAction, act.TurnAction, act.KickAction, act.TurnNeckAction,
         act.MoveAction, act.SayAction),
    ):
        return action
    if isinstance(action, act.GoToPointAction):
        return _compile_go_to_point(ws, action)
    if isinstance(action, act.SmartKickAction):
        return _compile_smart_kick(ws, action)
    if isinstance(action, act.TurnToPointAction):
        return act.TurnAction(_rel_dir(ws, action.target))
    if isinstance(action, act.InterceptBallAction):
        return _compile_intercept(ws, table)
    if isinstance(action, act.TurnNeckToBallAction):
        return _compile_neck_to_ball(ws)
    if isinstance(action, act.NoOpAction):
        return act.TurnAction(0.0)
    raise TypeError(f"cannot compile {action!r}")
