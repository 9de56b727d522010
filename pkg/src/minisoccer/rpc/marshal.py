"""Conversion between internal state/actions and schema messages.

Marshalling is deterministic: roster lists always carry exactly eleven
entries per team in unum order, unknown players get ``seen = false`` with
zeroed numerics, and intercept sentinels are ``-1`` cycles / unum ``0``.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from ..geometry import Vec2
from ..modes import PlayMode
from ..wm.intercept import InterceptTable
from ..wm.state import RELATIVE_MODES, TrackedObject, WorldState
from . import actions as act
from .schema import Schema, get_schema

UNREACHABLE_CYCLES = -1
NO_PLAYER_UNUM = 0

ROSTER_SIZE = 11

AGENT_PLAYER = 0
AGENT_COACH = 1
AGENT_TRAINER = 2

_AGENT_NUMBERS = {"player": AGENT_PLAYER, "coach": AGENT_COACH, "trainer": AGENT_TRAINER}


def agent_type_number(name: str) -> int:
    return _AGENT_NUMBERS[name]


def relative_mode_number(name: str) -> int:
    return RELATIVE_MODES.index(name)


def relative_mode_name(number: int) -> str:
    return RELATIVE_MODES[number]


def server_mode_number(mode: PlayMode, schema: Optional[Schema] = None) -> int:
    schema = schema or get_schema()
    value = schema.server_play_mode_enum.values_by_name[
        "SPM_" + mode.to_wire().upper()
    ]
    return value.number


def server_mode_from_number(number: int, schema: Optional[Schema] = None) -> PlayMode:
    schema = schema or get_schema()
    name = schema.server_play_mode_enum.values_by_number[number].name
    return PlayMode.from_wire(name[len("SPM_"):].lower())


# -- state ----------------------------------------------------------------


def _set_vec(msg, v: Vec2) -> None:
    msg.x = v.x
    msg.y = v.y


def _fill_roster(dest, tracked: dict) -> None:
    for unum in range(1, ROSTER_SIZE + 1):
        entry = dest.add()
        entry.unum = unum
        obj: Optional[TrackedObject] = tracked.get(unum)
        if obj is None or obj.confidence <= 0.0:
            entry.seen = False
            continue
        entry.seen = True
        _set_vec(entry.pos, obj.pos)
        _set_vec(entry.vel, obj.vel)
        entry.confidence = obj.confidence


def _fill_intercept(dest, table: InterceptTable, self_unum: int) -> None:
    self_cycles = table.cycles_for("ours", self_unum)
    dest.self_cycles = UNREACHABLE_CYCLES if self_cycles is None else self_cycles
    if table.fastest_ours is None:
        dest.fastest_our_unum = NO_PLAYER_UNUM
        dest.fastest_our_cycles = UNREACHABLE_CYCLES
    else:
        dest.fastest_our_unum = table.fastest_ours
        dest.fastest_our_cycles = table.ours[table.fastest_ours]
    if table.fastest_theirs is None:
        dest.fastest_opp_unum = NO_PLAYER_UNUM
        dest.fastest_opp_cycles = UNREACHABLE_CYCLES
    else:
        dest.fastest_opp_unum = table.fastest_theirs
        dest.fastest_opp_cycles = table.theirs[table.fastest_theirs]


def fill_world_model(dest, ws: WorldState, table: InterceptTable) -> None:
    dest.cycle = ws.cycle
    dest.our_team_name = ws.our_team
    dest.their_team_name = ws.their_team
    dest.our_side = ws.our_side
    dest.self.unum = ws.self_unum
    _set_vec(dest.self.pos, ws.self_pose.pos)
    _set_vec(dest.self.vel, ws.self_vel)
    dest.self.body_dir = ws.self_pose.body_dir
    dest.self.stamina = ws.stamina
    dest.self.pos_error = ws.self_pose.pos_error
    if ws.ball is not None and ws.ball.confidence > 0.0:
        _set_vec(dest.ball.pos, ws.ball.pos)
        _set_vec(dest.ball.vel, ws.ball.vel)
        dest.ball.confidence = ws.ball.confidence
    else:
        dest.ball.confidence = 0.0
    _fill_roster(dest.teammates, ws.teammates)
    _fill_roster(dest.opponents, ws.opponents)
    dest.play_mode = relative_mode_number(ws.relative_mode)
    dest.score_ours = ws.score_ours
    dest.score_theirs = ws.score_theirs
    _fill_intercept(dest.intercept, table, ws.self_unum)


def marshal_state(
    ws: WorldState,
    table: InterceptTable,
    *,
    agent_type: str,
    register_id: int,
    need_preprocess: bool = False,
    full_ws: Optional[WorldState] = None,
    full_table: Optional[InterceptTable] = None,
    schema: Optional[Schema] = None,
):
    schema = schema or get_schema()
    msg = schema.new("State")
    msg.agent_type = agent_type_number(agent_type)
    msg.register_id = register_id
    msg.need_preprocess = need_preprocess
    fill_world_model(msg.world, ws, table)
    if full_ws is not None:
        msg.has_full_world = True
        fill_world_model(msg.full_world, full_ws, full_table or table)
    return msg


# -- player actions -------------------------------------------------------


def encode_player_action(dest, action: act.PlayerActionT) -> None:
    if isinstance(action, act.DashAction):
        dest.dash.power = action.power
        dest.dash.dir = action.dir
    elif isinstance(action, act.TurnAction):
        dest.turn.moment = action.moment
    elif isinstance(action, act.KickAction):
        dest.kick.power = action.power
        dest.kick.dir = action.dir
    elif isinstance(action, act.TurnNeckAction):
        dest.turn_neck.moment = action.moment
    elif isinstance(action, act.MoveAction):
        dest.move.x = action.x
        dest.move.y = action.y
    elif isinstance(action, act.SayAction):
        dest.say.text = action.text
    elif isinstance(action, act.GoToPointAction):
        _set_vec(dest.body_go_to_point.target, action.target)
        dest.body_go_to_point.dist_thr = action.dist_thr
        dest.body_go_to_point.max_power = action.max_power
    elif isinstance(action, act.SmartKickAction):
        _set_vec(dest.body_smart_kick.target, action.target)
        dest.body_smart_kick.first_speed = action.first_speed
        dest.body_smart_kick.speed_thr = action.speed_thr
        dest.body_smart_kick.max_steps = action.max_steps
    elif isinstance(action, act.TurnToPointAction):
        _set_vec(dest.body_turn_to_point.target, action.target)
    elif isinstance(action, act.InterceptBallAction):
        dest.body_intercept_ball.SetInParent()
    elif isinstance(action, act.TurnNeckToBallAction):
        dest.neck_turn_to_ball.SetInParent()
    elif isinstance(action, act.NoOpAction):
        dest.do_nothing.SetInParent()
    else:
        raise TypeError(f"not a player action: {action!r}")


def decode_player_action(msg) -> act.PlayerActionT:
    kind = msg.WhichOneof("action")
    if kind == "dash":
        return act.DashAction(msg.dash.power, msg.dash.dir)
    if kind == "turn":
        return act.TurnAction(msg.turn.moment)
    if kind == "kick":
        return act.KickAction(msg.kick.power, msg.kick.dir)
    if kind == "turn_neck":
        return act.TurnNeckAction(msg.turn_neck.moment)
    if kind == "move":
        return act.MoveAction(msg.move.x, msg.move.y)
    if kind == "say":
        return act.SayAction(msg.say.text)
    if kind == "body_go_to_point":
        m = msg.body_go_to_point
        return act.GoToPointAction(
            Vec2(m.target.x, m.target.y), m.dist_thr, m.max_power
        )
    if kind == "body_smart_kick":
        m = msg.body_smart_kick
        return act.SmartKickAction(
            Vec2(m.target.x, m.target.y), m.first_speed, m.speed_thr, m.max_steps
        )
    if kind == "body_turn_to_point":
        m = msg.body_turn_to_point
        return act.TurnToPointAction(Vec2(m.target.x, m.target.y))
    if kind == "body_intercept_ball":
        return act.InterceptBallAction()
    if kind == "neck_turn_to_ball":
        return act.TurnNeckToBallAction()
    if kind == "do_nothing":
        return act.NoOpAction()
    raise ValueError(f"empty player action message: {msg}")


def marshal_player_actions(
    items: Iterable[act.PlayerActionT], schema: Optional[Schema] = None
):
    schema = schema or get_schema()
    reply = schema.new("PlayerActionsReply")
    for item in items:
        encode_player_action(reply.actions.add(), item)
    return reply


def unmarshal_player_actions(reply) -> List[act.PlayerActionT]:
    return [decode_player_action(m) for m in reply.actions]


# -- coach actions --------------------------------------------------------


def marshal_coach_actions(
    items: Iterable[act.CoachActionT], schema: Optional[Schema] = None
):
    schema = schema or get_schema()
    reply = schema.new("CoachActionsReply")
    for item in items:
        dest = reply.actions.add()
        if isinstance(item, act.SayAction):
            dest.say.text = item.text
        elif isinstance(item, act.NoOpAction):
            dest.do_nothing.SetInParent()
        else:
            raise TypeError(f"not a coach action: {item!r}")
    return reply


def unmarshal_coach_actions(reply) -> List[act.CoachActionT]:
    out: List[act.CoachActionT] = []
    for msg in reply.actions:
        kind = msg.WhichOneof("action")
        if kind == "say":
            out.append(act.SayAction(msg.say.text))
        elif kind == "do_nothing":
            out.append(act.NoOpAction())
        else:
            raise ValueError(f"empty coach action message: {msg}")
    return out


# -- trainer actions ------------------------------------------------------


def marshal_trainer_actions(
    items: Iterable[act.TrainerActionT], schema: Optional[Schema] = None
):
    schema = schema or get_schema()
    reply = schema.new("TrainerActionsReply")
    for item in items:
        dest = reply.actions.add()
        if isinstance(item, act.MoveBallAction):
            _set_vec(dest.move_ball.pos, item.pos)
            _set_vec(dest.move_ball.vel, item.vel)
        elif isinstance(item, act.MovePlayerAction):
            dest.move_player.side = item.side
            dest.move_player.unum = item.unum
            _set_vec(dest.move_player.pos, item.pos)
            dest.move_player.body_dir = item.body_dir
        elif isinstance(item, act.ChangeModeAction):
            dest.change_play_mode.mode = server_mode_number(item.mode, schema)
        elif isinstance(item, act.RecoverAction):
            dest.recover.SetInParent()
        else:
            raise TypeError(f"not a trainer action: {item!r}")
    return reply


def unmarshal_trainer_actions(
    reply, schema: Optional[Schema] = None
) -> List[act.TrainerActionT]:
    schema = schema or get_schema()
    out: List[act.TrainerActionT] = []
    for msg in reply.actions:
        kind = msg.WhichOneof("action")
        if kind == "move_ball":
            m = msg.move_ball
            out.append(
                act.MoveBallAction(Vec2(m.pos.x, m.pos.y), Vec2(m.vel.x, m.vel.y))
            )
        elif kind == "move_player":
            m = msg.move_player
            out.append(
                act.MovePlayerAction(
                    m.side, m.unum, Vec2(m.pos.x, m.pos.y), m.body_dir
                )
            )
        elif kind == "change_play_mode":
            out.append(
                act.ChangeModeAction(
                    server_mode_from_number(msg.change_play_mode.mode, schema)
                )
            )
        elif kind == "recover":
            out.append(act.RecoverAction())
        else:
            raise ValueError(f"empty trainer action message: {msg}")
    return out


# -- registration payloads ------------------------------------------------


def marshal_init(
    *,
    register_id: int,
    agent_type: str,
    team_name: str = "",
    unum: int = 0,
    version: str = "1",
    debug: bool = False,
    schema: Optional[Schema] = None,
):
    schema = schema or get_schema()
    msg = schema.new("InitMessage")
    msg.register_id = register_id
    msg.agent_type = agent_type_number(agent_type)
    msg.team_name = team_name
    msg.unum = unum
    msg.version = version
    msg.debug = debug
    return msg


def _fill_params(dest, pairs: Sequence[Tuple[str, float]]) -> None:
    for name, value in pairs:
        p = dest.add()
        p.name = name
        p.value = float(value)


def marshal_server_params(
    register_id: int,
    pairs: Sequence[Tuple[str, float]],
    schema: Optional[Schema] = None,
):
    schema = schema or get_schema()
    msg = schema.new("ServerParams")
    msg.register_id = register_id
    _fill_params(msg.params, pairs)
    return msg


def marshal_player_params(
    register_id: int,
    pairs: Sequence[Tuple[str, float]],
    schema: Optional[Schema] = None,
):
    schema = schema or get_schema()
    msg = schema.new("PlayerParams")
    msg.register_id = register_id
    _fill_params(msg.params, pairs)
    return msg


def marshal_player_type(
    register_id: int,
    type_id: int,
    pairs: Sequence[Tuple[str, float]],
    schema: Optional[Schema] = None,
):
    schema = schema or get_schema()
    msg = schema.new("PlayerType")
    msg.register_id = register_id
    msg.id = type_id
    _fill_params(msg.params, pairs)
    return msg


def param_pairs_from(msg) -> List[Tuple[str, float]]:
    return [(p.name, p.value) for p in msg.params]
