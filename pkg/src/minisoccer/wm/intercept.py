"""Ball-flight prediction and the per-player intercept table.

The reachability model is deliberately simple: a player accelerates from
rest, gaining dash_accel_gain of speed per cycle up to player_speed_max,
and loses one whole cycle to turning when the target is more than
turn_penalty_deg away from its known facing (or its facing is unknown).
`None` stands for Unreachable throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from ..geometry import Vec2, norm_deg
from .params import WmParams
from .state import TrackedObject, WorldState


def predict_ball_position(ball: TrackedObject, n: int, ball_decay: float) -> Vec2:
    """Closed-form n-cycle extrapolation under geometric velocity decay."""
    if n <= 0:
        return ball.pos
    factor = (1.0 - ball_decay**n) / (1.0 - ball_decay)
    return ball.pos + ball.vel.scaled(factor)


def reach_distance(params: WmParams, t: int) -> float:
    """Maximum ground covered in t cycles from a standing start."""
    if t <= 0:
        return 0.0
    gain = params.dash_accel_gain
    vmax = params.player_speed_max
    if gain <= 0:
        return 0.0
    ramp_cycles = int((vmax - 1e-12) // gain)  # cycles still below top speed
    m = min(t, ramp_cycles)
    return gain * m * (m + 1) / 2.0 + (t - m) * vmax


def intercept_cycles(
    player: TrackedObject,
    ball: TrackedObject,
    params: WmParams,
    _targets: Optional[list] = None,
    _reach: Optional[list] = None,
) -> Optional[int]:
    """Smallest t with the player inside kickable range of the predicted
    ball, or None when no t within the horizon works.

    The loop only evaluates the turn penalty once the penalty-free bound
    is met: the penalty can only shrink reach, and reach never decreases
    with t, so skipped iterations could not have succeeded either way.
    The optional _targets / _reach lists let a caller share the predicted
    trajectory and reach table across many players; the values are the
    same ones this function would compute itself.
    """
    ka = params.kickable_area
    for t in range(params.intercept_horizon + 1):
        if _targets is not None:
            target = _targets[t]
        else:
            target = predict_ball_position(ball, t, params.ball_decay)
        d = player.pos.dist(target)
        if _reach is not None:
            bound = _reach[t + 1]
        else:
            bound = reach_distance(params, t)
        if d > bound + ka:
            continue
        if player.body_dir is None:
            penalized = True
        elif d < 1e-9:
            penalized = False
        else:
            off = abs(norm_deg(player.pos.bearing_to(target) - player.body_dir))
            penalized = off > params.turn_penalty_deg
        if not penalized:
            return t
        prev = _reach[t] if _reach is not None else reach_distance(params, t - 1)
        if d <= prev + ka:
            return t
    return None


@dataclass
class InterceptTable:
    ours: Dict[int, Optional[int]] = field(default_factory=dict)
    theirs: Dict[int, Optional[int]] = field(default_factory=dict)
    fastest_ours: Optional[int] = None  # unum
    fastest_theirs: Optional[int] = None
    ball_known: bool = False

    def cycles_for(self, team: str, unum: int) -> Optional[int]:
        table = self.ours if team == "ours" else self.theirs
        return table.get(unum)


def _fastest(entries: Dict[int, Optional[int]]) -> Optional[int]:
    best: Optional[Tuple[int, int]] = None
    for unum in sorted(entries):
        cycles = entries[unum]
        if cycles is None:
            continue
        if best is None or cycles < best[0]:
            best = (cycles, unum)
    return None if best is None else best[1]


def build_intercept_table(ws: WorldState) -> InterceptTable:
    table = InterceptTable()
    ball = ws.ball
    if ball is None or ball.confidence <= 0.0:
        for unum in ws.teammates:
            table.ours[unum] = None
        for unum in ws.opponents:
            table.theirs[unum] = None
        return table
    table.ball_known = True
    params = ws.params
    horizon = params.intercept_horizon
    targets = [
        predict_ball_position(ball, t, params.ball_decay) for t in range(horizon + 1)
    ]
    reach = [reach_distance(params, t) for t in range(-1, horizon + 1)]
    for unum, obj in ws.teammates.items():
        table.ours[unum] = intercept_cycles(obj, ball, params, targets, reach)
    for unum, obj in ws.opponents.items():
        table.theirs[unum] = intercept_cycles(obj, ball, params, targets, reach)
    table.fastest_ours = _fastest(table.ours)
    table.fastest_theirs = _fastest(table.theirs)
    return table
