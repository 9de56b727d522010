import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minisoccer.codec import Dash, Kick, Move, Say, Turn, TurnNeck
from minisoccer.geometry import Vec2
from minisoccer.modes import PLAY_ON, PlayMode
from minisoccer.sim import (
    SimConfig,
    add_player,
    new_world,
    quantize_distance,
    snap_dash_dir,
    step_simulation,
)

CFG = SimConfig()


def make_world(**kw):
    w = new_world(CFG)
    w.play_mode = PLAY_ON
    for k, v in kw.items():
        setattr(w, k, v)
    return w


def put_player(w, side="l", unum=1, pos=Vec2(0, 0), body=0.0, vel=Vec2(0, 0)):
    p = add_player(CFG, w, side, unum)
    p.pos = pos
    p.body_dir = body
    p.vel = vel
    return p


def test_dash_from_rest():
    w = make_world()
    p = put_player(w)
    step_simulation(CFG, w, [(("l", 1), Dash(100, 0))])
    assert p.pos == Vec2(0.6, 0.0)
    assert p.vel.x == pytest.approx(0.24) and p.vel.y == 0.0


def test_dash_direction_snaps_to_45_degree_grid():
    assert snap_dash_dir(0) == 0
    assert snap_dash_dir(30) == 45
    assert snap_dash_dir(-100) == -90
    assert snap_dash_dir(170) == -180
    assert snap_dash_dir(-170) == -180
    w = make_world()
    p = put_player(w)
    step_simulation(CFG, w, [(("l", 1), Dash(100, 30))])
    # Actual thrust went out at 45 degrees.
    assert p.pos.x == pytest.approx(0.6 * math.cos(math.radians(45)))
    assert p.pos.y == pytest.approx(0.6 * math.sin(math.radians(45)))


def test_ball_speed_clamped_before_motion():
    w = make_world(ball_vel=Vec2(3.5, 0.0))
    step_simulation(CFG, w, [])
    assert w.ball_pos == Vec2(3.0, 0.0)
    assert w.ball_vel.x == pytest.approx(3.0 * 0.94)


def test_kick_accel_magnitude():
    w = make_world(ball_pos=Vec2(0.5, 0.0))
    put_player(w)
    step_simulation(CFG, w, [(("l", 1), Kick(100, 0))])
    # Independent scalar computation of the falloff formula.
    expected = 100 * 0.027 * (1 - 0.25 * 0.0 / 180 - 0.25 * (0.5 / 1.085))
    assert expected == pytest.approx(2.3889400921658986)
    moved = w.ball_pos.x - 0.5
    assert moved == pytest.approx(expected)
    assert w.ball_vel.x == pytest.approx(expected * 0.94)
    assert w.last_touch_side == "l"


def test_kick_out_of_reach_is_rejected():
    w = make_world(ball_pos=Vec2(5.0, 0.0))
    put_player(w)
    events = step_simulation(CFG, w, [(("l", 1), Kick(100, 0))])
    assert any(e.kind == "illegal_command" for e in events)
    assert w.ball_pos == Vec2(5.0, 0.0)


def test_turn_damped_by_speed():
    w = make_world()
    p = put_player(w, vel=Vec2(0.5, 0.0))
    step_simulation(CFG, w, [(("l", 1), Turn(60))])
    assert p.body_dir == pytest.approx(60 / (1 + 5 * 0.5))


def test_turn_neck_clamped():
    w = make_world()
    p = put_player(w)
    step_simulation(CFG, w, [(("l", 1), TurnNeck(150))])
    assert p.neck_dir == 90.0


def test_one_body_command_per_cycle():
    w = make_world()
    p = put_player(w)
    events = step_simulation(CFG, w, [(("l", 1), Dash(100, 0)), (("l", 1), Turn(30))])
    assert any(e.kind == "multiple_body_commands" for e in events)
    assert p.body_dir == 0.0  # second command dropped
    assert p.pos.x == pytest.approx(0.6)


def test_neck_and_say_ride_along_with_body_command():
    w = make_world()
    p = put_player(w)
    events = step_simulation(
        CFG, w, [(("l", 1), Dash(100, 0)), (("l", 1), TurnNeck(10)), (("l", 1), Say("hey"))]
    )
    assert p.neck_dir == 10.0
    assert any(e.kind == "say" for e in events)
    assert not any(e.kind == "multiple_body_commands" for e in events)


def test_move_only_before_kickoff():
    w = make_world()
    w.play_mode = PlayMode("before_kick_off")
    p = put_player(w)
    step_simulation(CFG, w, [(("l", 1), Move(-10, 5))])
    assert p.pos == Vec2(-10.0, 5.0)

    w.play_mode = PLAY_ON
    events = step_simulation(CFG, w, [(("l", 1), Move(0, 0))])
    assert any(e.kind == "illegal_command" for e in events)
    assert p.pos == Vec2(-10.0, 5.0)


def test_stamina_drain_and_recovery():
    w = make_world()
    p = put_player(w)
    step_simulation(CFG, w, [(("l", 1), Dash(100, 0))])
    assert p.stamina == pytest.approx(8000 - 100 + 45)
    step_simulation(CFG, w, [])
    assert p.stamina == pytest.approx(8000 - 100 + 90)
    for _ in range(10):
        step_simulation(CFG, w, [])
    assert p.stamina == 8000.0  # capped


def test_negative_dash_costs_nothing():
    w = make_world()
    p = put_player(w)
    step_simulation(CFG, w, [(("l", 1), Dash(-60, 0))])
    assert p.stamina == 8000.0
    assert p.pos.x == pytest.approx(-0.36)


def test_cycle_increments():
    w = make_world()
    for i in range(5):
        step_simulation(CFG, w, [])
    assert w.cycle == 5


@given(
    st.floats(min_value=-100, max_value=100),
    st.floats(min_value=-180, max_value=179.99),
    st.floats(min_value=-52, max_value=52),
    st.floats(min_value=-33, max_value=33),
)
@settings(max_examples=150)
def test_speed_caps_hold(power, direction, x, y):
    w = make_world(ball_pos=Vec2(x, y), ball_vel=Vec2(2.9, 1.5))
    p = put_player(w, pos=Vec2(x, y), vel=Vec2(1.0, 0.3))
    step_simulation(CFG, w, [(("l", 1), Dash(power, direction))])
    assert p.vel.norm() <= CFG.player_speed_max * CFG.player_decay + 1e-12
    assert w.ball_vel.norm() <= CFG.ball_speed_max * CFG.ball_decay + 1e-12
    assert 0.0 <= p.stamina <= CFG.stamina_max


# --- quantization ---------------------------------------------------------


def test_quantize_known_values():
    # Below 10 m the grid pitch is exactly qstep.
    assert quantize_distance(5.0, 0.1) == pytest.approx(5.0)
    assert quantize_distance(5.23, 0.1) == pytest.approx(5.2)
    assert quantize_distance(0.0, 0.1) == 0.0
    # Beyond 10 m the pitch stretches with distance: step(12.34) = 0.1234,
    # and 12.34 sits exactly on that grid, so it is a fixed point.
    assert quantize_distance(12.34, 0.1) == pytest.approx(12.34)


def test_quantize_monotone_and_bounded():
    prev = 0.0
    d = 0.0
    while d <= 130.0:
        q = quantize_distance(d, 0.1)
        step = 0.1 * max(1.0, d / 10.0)
        assert abs(q - d) <= step / 2 + 1e-9
        assert q >= prev - 1e-9
        prev = q
        d += 0.013


@given(st.floats(min_value=0.0, max_value=130.0), st.floats(min_value=0.01, max_value=1.0))
@settings(max_examples=300)
def test_quantize_bound_property(d, q):
    step = q * max(1.0, d / 10.0)
    assert abs(quantize_distance(d, q) - d) <= step / 2 + 1e-9
