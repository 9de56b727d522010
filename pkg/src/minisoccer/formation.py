"""A fixed 4-3-3 position grid, in the team-normalized frame.

Used by the builtin playmaker as its home formation and by the proxy for
dead-ball auto-placement. Positions are keeper, back four, middle three,
front three; attacking direction is +x.
"""

from __future__ import annotations

from typing import Optional

from .geometry import Vec2

FORMATION_433 = {
    1: Vec2(-50.0, 0.0),
    2: Vec2(-35.0, -15.0),
    3: Vec2(-35.0, -5.0),
    4: Vec2(-35.0, 5.0),
    5: Vec2(-35.0, 15.0),
    6: Vec2(-15.0, -10.0),
    7: Vec2(-15.0, 0.0),
    8: Vec2(-15.0, 10.0),
    9: Vec2(5.0, -20.0),
    10: Vec2(5.0, 0.0),
    11: Vec2(5.0, 20.0),
}

BALL_SHIFT = 0.3


def formation_point(unum: int, ball_pos: Optional[Vec2] = None) -> Vec2:
    """Home spot for `unum`, shifted toward the ball when its position is known."""
    base = FORMATION_433[unum]
    if ball_pos is None:
        return base
    return Vec2(base.x + BALL_SHIFT * ball_pos.x, base.y + BALL_SHIFT * ball_pos.y)
