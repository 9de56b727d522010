import math

import pytest

from minisoccer.codec import (
    BallObj,
    ErrorMsg,
    FieldCountMismatch,
    FlagObj,
    FullState,
    GoalObj,
    Hear,
    Init,
    LineObj,
    NumericParseFailure,
    ObservedObject,
    OkMsg,
    PlayerObj,
    PlayerParamMsg,
    PlayerSnap,
    PlayerTypeMsg,
    See,
    SenseBody,
    ServerParamMsg,
    UnknownFlagId,
    UnknownMessageHead,
    decode_server_datagram,
    decode_server_message,
    encode_server_message,
    parse_sexpr,
)
from minisoccer.codec.landmarks import FLAGS, GOALS, LANDMARKS
from minisoccer.geometry import Vec2
from minisoccer.modes import PLAY_ON, PlayMode


def rt(msg):
    """Encode, decode, return the result."""
    return decode_server_message(parse_sexpr(encode_server_message(msg)))


def test_init_round_trip():
    msg = decode_server_message(parse_sexpr("(init l 7 before_kick_off)"))
    assert msg == Init("l", 7, PlayMode.from_wire("before_kick_off"))
    assert rt(msg) == msg


def test_see_decode():
    msg = decode_server_message(
        parse_sexpr("(see 42 ((f c) 10.5 -20) ((b) 2 0 0.1 -1) ((p l 5) 7.4 13) ((g r) 30 5) ((l r) 28 88))")
    )
    assert isinstance(msg, See)
    assert msg.cycle == 42
    names = [o.name for o in msg.objects]
    assert names == [FlagObj("f c"), BallObj(), PlayerObj("l", 5), GoalObj("r"), LineObj("r")]
    ball = msg.objects[1]
    assert ball.dist_change == pytest.approx(0.1)
    assert ball.dir_change == pytest.approx(-1.0)
    assert rt(msg) == msg


def test_see_anonymous_player():
    msg = decode_server_message(parse_sexpr("(see 3 ((p) 40.2 11))"))
    assert msg.objects[0].name == PlayerObj(None, None)
    assert rt(msg) == msg


def test_see_rejects_unknown_flag():
    with pytest.raises(UnknownFlagId):
        decode_server_message(parse_sexpr("(see 0 ((f z 99) 10 0))"))


def test_see_rejects_negative_distance():
    with pytest.raises(FieldCountMismatch):
        decode_server_message(parse_sexpr("(see 0 ((b) -2 0))"))


def test_sense_body_round_trip():
    msg = decode_server_message(
        parse_sexpr("(sense_body 9 (stamina 7955 1) (speed 0.4 -90) (head_angle 30))")
    )
    assert msg == SenseBody(9, 7955.0, 1.0, 0.4, -90.0, 30.0)
    assert rt(msg) == msg


def test_fullstate_round_trip():
    msg = decode_server_message(
        parse_sexpr(
            "(fullstate 100 (pmode play_on) (score 1 0)"
            " (ball 0.5 -2.25 0.94 0)"
            " ((p l 1) -50 0 0 0 0 0 8000 1)"
            " ((p r 3) 10.125 -7 0.1 0.2 45 -15 7500 0.9))"
        )
    )
    assert isinstance(msg, FullState)
    assert msg.play_mode == PLAY_ON
    assert msg.score_l == 1 and msg.score_r == 0
    assert msg.ball_pos == Vec2(0.5, -2.25)
    assert msg.ball_vel == Vec2(0.94, 0.0)
    p = msg.players[1]
    assert p == PlayerSnap("r", 3, Vec2(10.125, -7.0), Vec2(0.1, 0.2), 45.0, -15.0, 7500.0, 0.9)
    # Full precision on the wire: the round trip is exact, not approximate.
    assert rt(msg) == msg


def test_fullstate_exact_fidelity_of_awkward_floats():
    pos = Vec2(1 / 3, -math.pi)
    vel = Vec2(0.94**7, 1e-9)
    msg = FullState(
        cycle=5,
        play_mode=PLAY_ON,
        score_l=0,
        score_r=0,
        ball_pos=pos,
        ball_vel=vel,
        players=(PlayerSnap("l", 1, Vec2(-52.5, 0.123456789), Vec2(0, 0), 179.99999, 0.0, 8000.0, 1.0),),
    )
    back = rt(msg)
    assert back.ball_pos == pos and back.ball_vel == vel
    assert back.players[0].pos.y == 0.123456789
    assert back.players[0].body_dir == 179.99999


def test_hear_round_trip():
    msg = decode_server_message(parse_sexpr('(hear 30 referee kick_off_l)'))
    assert msg == Hear(30, "referee", "kick_off_l")
    assert rt(msg) == msg
    quoted = decode_server_message(parse_sexpr('(hear 31 "l 3" "pass left")'))
    assert quoted == Hear(31, "l 3", "pass left")
    assert rt(quoted) == quoted


def test_param_messages():
    sp = decode_server_message(parse_sexpr("(server_param (ball_decay 0.94) (cycle_ms 100))"))
    assert isinstance(sp, ServerParamMsg)
    assert sp.as_dict() == {"ball_decay": 0.94, "cycle_ms": 100.0}
    assert rt(sp) == sp

    pp = decode_server_message(parse_sexpr("(player_param (player_types 1))"))
    assert isinstance(pp, PlayerParamMsg)
    assert rt(pp) == pp

    pt = decode_server_message(parse_sexpr("(player_type (id 0) (player_speed_max 1.05))"))
    assert isinstance(pt, PlayerTypeMsg)
    assert pt.type_id == 0
    assert pt.as_dict()["player_speed_max"] == 1.05
    assert rt(pt) == pt


def test_error_and_ok():
    assert decode_server_message(parse_sexpr('(error no_more_team_or_player)')) == ErrorMsg(
        "no_more_team_or_player"
    )
    assert decode_server_message(parse_sexpr("(ok change_mode)")) == OkMsg("change_mode")


def test_unknown_head():
    with pytest.raises(UnknownMessageHead):
        decode_server_message(parse_sexpr("(warble 1 2)"))


def test_numeric_failure():
    with pytest.raises(NumericParseFailure):
        decode_server_message(parse_sexpr("(see nope ((b) 1 0))"))


def test_datagram_rejects_non_ascii():
    with pytest.raises(Exception):
        decode_server_datagram(b"(see 0 \xc3\xa9)")


def test_landmark_table_shape():
    assert len(FLAGS) == 53
    assert len(GOALS) == 2
    assert len(LANDMARKS) == 55
    assert LANDMARKS["g l"] == Vec2(-52.5, 0.0)
    assert LANDMARKS["f c"] == Vec2(0.0, 0.0)
    # Goalposts sit on the goal line at the goal half-width.
    assert LANDMARKS["f g l t"] == Vec2(-52.5, -7.01)
    assert LANDMARKS["f g r b"] == Vec2(52.5, 7.01)
    # Outer flags sit 5 m beyond the lines.
    assert LANDMARKS["f t 0"] == Vec2(0.0, -39.0)
    assert LANDMARKS["f r 0"] == Vec2(57.5, 0.0)
