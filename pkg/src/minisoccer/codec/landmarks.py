"""The fixed landmark map: 53 flags (including the four goalpost flags)
plus the two goals, at their standard positions on a 105 x 68 pitch.

Ids are the wire names with spaces, e.g. "f c t", "f p l b", "g r".
"""

from __future__ import annotations

from ..geometry import Vec2

_PITCH_HALF_LEN = 52.5
_PITCH_HALF_WID = 34.0
_PENALTY_X = _PITCH_HALF_LEN - 16.5  # 36.0
_PENALTY_Y = 20.16
_GOAL_HALF_WIDTH = 7.01
_MARGIN = 5.0  # outer flags sit 5 m outside the lines


def _build() -> dict[str, Vec2]:
    lm: dict[str, Vec2] = {}
    # centre line
    lm["f c"] = Vec2(0.0, 0.0)
    lm["f c t"] = Vec2(0.0, -_PITCH_HALF_WID)
    lm["f c b"] = Vec2(0.0, _PITCH_HALF_WID)
    # pitch corners
    lm["f l t"] = Vec2(-_PITCH_HALF_LEN, -_PITCH_HALF_WID)
    lm["f l b"] = Vec2(-_PITCH_HALF_LEN, _PITCH_HALF_WID)
    lm["f r t"] = Vec2(_PITCH_HALF_LEN, -_PITCH_HALF_WID)
    lm["f r b"] = Vec2(_PITCH_HALF_LEN, _PITCH_HALF_WID)
    # penalty areas
    lm["f p l t"] = Vec2(-_PENALTY_X, -_PENALTY_Y)
    lm["f p l c"] = Vec2(-_PENALTY_X, 0.0)
    lm["f p l b"] = Vec2(-_PENALTY_X, _PENALTY_Y)
    lm["f p r t"] = Vec2(_PENALTY_X, -_PENALTY_Y)
    lm["f p r c"] = Vec2(_PENALTY_X, 0.0)
    lm["f p r b"] = Vec2(_PENALTY_X, _PENALTY_Y)
    # goalposts
    lm["f g l t"] = Vec2(-_PITCH_HALF_LEN, -_GOAL_HALF_WIDTH)
    lm["f g l b"] = Vec2(-_PITCH_HALF_LEN, _GOAL_HALF_WIDTH)
    lm["f g r t"] = Vec2(_PITCH_HALF_LEN, -_GOAL_HALF_WIDTH)
    lm["f g r b"] = Vec2(_PITCH_HALF_LEN, _GOAL_HALF_WIDTH)
    # flags 5 m outside the touchlines
    ytop, ybot = -_PITCH_HALF_WID - _MARGIN, _PITCH_HALF_WID + _MARGIN
    lm["f t 0"] = Vec2(0.0, ytop)
    lm["f b 0"] = Vec2(0.0, ybot)
    for d in (10, 20, 30, 40, 50):
        lm[f"f t l {d}"] = Vec2(-d, ytop)
        lm[f"f t r {d}"] = Vec2(d, ytop)
        lm[f"f b l {d}"] = Vec2(-d, ybot)
        lm[f"f b r {d}"] = Vec2(d, ybot)
    # flags 5 m outside the goal lines
    xl, xr = -_PITCH_HALF_LEN - _MARGIN, _PITCH_HALF_LEN + _MARGIN
    lm["f l 0"] = Vec2(xl, 0.0)
    lm["f r 0"] = Vec2(xr, 0.0)
    for d in (10, 20, 30):
        lm[f"f l t {d}"] = Vec2(xl, -d)
        lm[f"f l b {d}"] = Vec2(xl, d)
        lm[f"f r t {d}"] = Vec2(xr, -d)
        lm[f"f r b {d}"] = Vec2(xr, d)
    return lm


FLAGS: dict[str, Vec2] = _build()
GOALS: dict[str, Vec2] = {
    "g l": Vec2(-_PITCH_HALF_LEN, 0.0),
    "g r": Vec2(_PITCH_HALF_LEN, 0.0),
}
# Everything usable for self-localization.
LANDMARKS: dict[str, Vec2] = {**FLAGS, **GOALS}

assert len(FLAGS) == 53, len(FLAGS)
