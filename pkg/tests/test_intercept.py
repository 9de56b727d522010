import math
import random

import pytest

from minisoccer.geometry import Vec2, norm_deg
from minisoccer.wm import (
    TrackedObject,
    WmParams,
    WorldState,
    build_intercept_table,
    intercept_cycles,
    predict_ball_position,
    reach_distance,
)

P = WmParams()


# --- independent oracle: per-cycle accumulation, iterative ball ----------


def oracle_reach(params, t):
    total = 0.0
    speed = 0.0
    for _ in range(t):
        speed = min(params.player_speed_max, speed + params.dash_accel_gain)
        total += speed
    return total


def oracle_intercept(player, ball, params):
    bpos, bvel = ball.pos, ball.vel
    for t in range(params.intercept_horizon + 1):
        d = player.pos.dist(bpos)
        if player.body_dir is None:
            penalized = True
        elif d < 1e-9:
            penalized = False
        else:
            off = abs(norm_deg(player.pos.bearing_to(bpos) - player.body_dir))
            penalized = off > params.turn_penalty_deg
        budget = t - 1 if penalized else t
        if d <= oracle_reach(params, budget) + params.kickable_area:
            return t
        bpos = bpos + bvel
        bvel = bvel.scaled(params.ball_decay)
    return None


def ball_at(pos, vel=Vec2(0.0, 0.0)):
    return TrackedObject(kind="ball", pos=pos, vel=vel, confidence=1.0)


def player_at(pos, body=0.0, unum=1, side="ours"):
    return TrackedObject(kind="player", side=side, unum=unum, pos=pos, body_dir=body, confidence=1.0)


# --- ball prediction ------------------------------------------------------


def test_predict_identity_at_zero():
    b = ball_at(Vec2(3.0, -2.0), Vec2(1.0, 0.0))
    assert predict_ball_position(b, 0, P.ball_decay) == Vec2(3.0, -2.0)


def test_predict_two_steps():
    b = ball_at(Vec2(0.0, 0.0), Vec2(1.0, 0.0))
    p2 = predict_ball_position(b, 2, P.ball_decay)
    assert p2.x == pytest.approx(1.94) and p2.y == 0.0


def test_predict_asymptote():
    b = ball_at(Vec2(0.0, 0.0), Vec2(1.0, 0.0))
    p = predict_ball_position(b, 200, P.ball_decay)
    assert abs(p.x - 1.0 / (1.0 - 0.94)) < 1e-3
    assert abs(p.x - 16.666666666666668) < 1e-2


def test_closed_form_equals_iteration():
    rng = random.Random(42)
    for _ in range(100):
        pos = Vec2(rng.uniform(-50, 50), rng.uniform(-30, 30))
        vel = Vec2(rng.uniform(-3, 3), rng.uniform(-3, 3))
        b = ball_at(pos, vel)
        p, v = pos, vel
        for n in range(501):
            closed = predict_ball_position(b, n, P.ball_decay)
            assert abs(closed.x - p.x) <= 1e-9 and abs(closed.y - p.y) <= 1e-9
            p = p + v
            v = v.scaled(P.ball_decay)


# --- reach model ----------------------------------------------------------


def test_reach_distance_matches_accumulation():
    for t in range(0, 250):
        assert reach_distance(P, t) == pytest.approx(oracle_reach(P, t))


def test_reach_distance_odd_params():
    for gain_rate, vmax in ((0.012, 1.05), (0.006, 0.3), (0.002, 1.0), (0.02, 1.05)):
        params = WmParams(dash_power_rate=gain_rate, player_speed_max=vmax)
        for t in range(0, 60):
            assert reach_distance(params, t) == pytest.approx(oracle_reach(params, t))


# --- intercept ------------------------------------------------------------


def test_on_ball_is_zero():
    assert intercept_cycles(player_at(Vec2(0, 0)), ball_at(Vec2(0.5, 0)), P) == 0


def test_facing_stationary_ball_matches_oracle():
    player = player_at(Vec2(0, 0), body=0.0)
    ball = ball_at(Vec2(10.0, 0.0))
    got = intercept_cycles(player, ball, P)
    assert got == oracle_intercept(player, ball, P)
    assert got is not None and got > 0


def test_turn_penalty_applied_when_facing_away():
    ball = ball_at(Vec2(10.0, 0.0))
    facing = intercept_cycles(player_at(Vec2(0, 0), body=0.0), ball, P)
    away = intercept_cycles(player_at(Vec2(0, 0), body=-180.0), ball, P)
    unknown = intercept_cycles(player_at(Vec2(0, 0), body=None), ball, P)
    assert away == facing + 1
    assert unknown == away


def test_receding_ball_unreachable():
    # With a decay this close to 1 the ball stays above player_speed_max for
    # the whole horizon, so the gap grows monotonically.
    params = WmParams(ball_decay=0.999)
    player = player_at(Vec2(-30.0, 0.0), body=0.0)
    ball = ball_at(Vec2(45.0, 0.0), Vec2(3.0, 0.0))
    assert intercept_cycles(player, ball, params) is None
    assert oracle_intercept(player, ball, params) is None


def test_oracle_equality_random_instances():
    rng = random.Random(20240817)
    for _ in range(1000):
        player = player_at(
            Vec2(rng.uniform(-52, 52), rng.uniform(-34, 34)),
            body=rng.uniform(-180, 179) if rng.random() < 0.7 else None,
        )
        ball = ball_at(
            Vec2(rng.uniform(-52, 52), rng.uniform(-34, 34)),
            Vec2(rng.uniform(-3, 3), rng.uniform(-3, 3)),
        )
        assert intercept_cycles(player, ball, P) == oracle_intercept(player, ball, P)


# --- table ----------------------------------------------------------------


def make_ws():
    ws = WorldState(params=WmParams(), our_side="l", self_unum=1)
    return ws


def test_single_teammate_on_ball():
    ws = make_ws()
    ws.ball = ball_at(Vec2(5.0, 5.0))
    ws.teammates[7] = player_at(Vec2(5.2, 5.0), unum=7)
    table = build_intercept_table(ws)
    assert table.ours[7] == 0
    assert table.fastest_ours == 7


def test_tie_breaks_to_lower_unum():
    ws = make_ws()
    ws.ball = ball_at(Vec2(0.0, 0.0))
    ws.teammates[7] = player_at(Vec2(10.0, 0.0), body=-180.0, unum=7)
    ws.teammates[3] = player_at(Vec2(-10.0, 0.0), body=0.0, unum=3)
    table = build_intercept_table(ws)
    assert table.ours[3] == table.ours[7]
    assert table.fastest_ours == 3


def test_ball_unknown_gives_absent_fastest():
    ws = make_ws()
    ws.teammates[2] = player_at(Vec2(0, 0), unum=2)
    ws.opponents[5] = player_at(Vec2(5, 5), unum=5, side="theirs")
    table = build_intercept_table(ws)
    assert table.ours[2] is None
    assert table.theirs[5] is None
    assert table.fastest_ours is None and table.fastest_theirs is None
    assert not table.ball_known


def test_table_matches_oracle_on_random_lineup():
    rng = random.Random(7)
    ws = make_ws()
    ws.ball = ball_at(Vec2(rng.uniform(-30, 30), rng.uniform(-20, 20)), Vec2(1.2, -0.4))
    for unum in range(1, 12):
        ws.teammates[unum] = player_at(
            Vec2(rng.uniform(-52, 52), rng.uniform(-34, 34)), body=rng.uniform(-180, 179), unum=unum
        )
        ws.opponents[unum] = player_at(
            Vec2(rng.uniform(-52, 52), rng.uniform(-34, 34)),
            body=None,
            unum=unum,
            side="theirs",
        )
    table = build_intercept_table(ws)
    for unum in range(1, 12):
        assert table.ours[unum] == oracle_intercept(ws.teammates[unum], ws.ball, ws.params)
        assert table.theirs[unum] == oracle_intercept(ws.opponents[unum], ws.ball, ws.params)
