"""Deterministic behavior when no playmaker reply is usable."""

from __future__ import annotations

from ..geometry import norm_deg
from ..rpc import actions as act
from ..wm.intercept import InterceptTable
from ..wm.state import WorldState
from .compile import compile_action

SCAN_TURN_DEG = 60.0
BALL_CONFIDENCE_FLOOR = 0.3


def fallback_body(ws: WorldState, table: InterceptTable) -> act.PlayerActionT:
    """Always returns a primitive body action, never a no-op."""
    ball = ws.ball
    if ball is None or ball.confidence < BALL_CONFIDENCE_FLOOR:
        return act.TurnAction(SCAN_TURN_DEG)
    turn_to_ball = act.TurnAction(
        norm_deg(ws.self_pose.pos.bearing_to(ball.pos) - ws.self_pose.body_dir)
    )
    if table.fastest_ours == ws.self_unum:
        compiled = compile_action(ws, table, act.InterceptBallAction())
        if compiled is not None:
            return compiled
        return turn_to_ball
    return turn_to_ball
