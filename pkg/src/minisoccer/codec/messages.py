"""Typed server-to-agent messages and their wire codecs.

Message shapes follow the version-18 server dialect, restricted to the
subset this simulator emits. Distances and directions inside `see` are
serialized with at most two decimals; every other channel keeps full
precision so the fullstate path is lossless.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..geometry import Vec2
from ..modes import PlayMode
from .errors import (
    FieldCountMismatch,
    UnknownFlagId,
    UnknownMessageHead,
    NumericParseFailure,
    CodecError,
)
from .landmarks import FLAGS, GOALS
from .numbers import fmt2, fmt_full, parse_int, parse_num
from .sexpr import Atom, SExpr, parse_sexpr, serialize_sexpr

# ---------------------------------------------------------------------------
# observed objects


@dataclass(frozen=True, slots=True)
class FlagObj:
    flag_id: str


@dataclass(frozen=True, slots=True)
class BallObj:
    pass


@dataclass(frozen=True, slots=True)
class GoalObj:
    side: str


@dataclass(frozen=True, slots=True)
class PlayerObj:
    side: Optional[str] = None
    unum: Optional[int] = None


@dataclass(frozen=True, slots=True)
class LineObj:
    line_id: str


ObjName = Union[FlagObj, BallObj, GoalObj, PlayerObj, LineObj]


@dataclass(frozen=True, slots=True)
class ObservedObject:
    name: ObjName
    distance: float
    direction: float
    dist_change: Optional[float] = None
    dir_change: Optional[float] = None


# ---------------------------------------------------------------------------
# messages


@dataclass(frozen=True, slots=True)
class Init:
    side: str
    unum: int
    play_mode: PlayMode


@dataclass(frozen=True, slots=True)
class See:
    cycle: int
    objects: tuple[ObservedObject, ...]


@dataclass(frozen=True, slots=True)
class SenseBody:
    cycle: int
    stamina: float
    effort: float
    speed_mag: float
    speed_dir: float  # global direction of travel
    neck_dir: float  # relative to body


@dataclass(frozen=True, slots=True)
class PlayerSnap:
    side: str
    unum: int
    pos: Vec2
    vel: Vec2
    body_dir: float
    neck_dir: float
    stamina: float
    effort: float


@dataclass(frozen=True, slots=True)
class FullState:
    cycle: int
    play_mode: PlayMode
    score_l: int
    score_r: int
    ball_pos: Vec2
    ball_vel: Vec2
    players: tuple[PlayerSnap, ...]


@dataclass(frozen=True, slots=True)
class Hear:
    cycle: int
    sender: str  # "referee", "l 3", "coach l", ...
    text: str


@dataclass(frozen=True, slots=True)
class ServerParamMsg:
    params: tuple[tuple[str, float], ...] = field(default=())

    def as_dict(self) -> dict[str, float]:
        return dict(self.params)


@dataclass(frozen=True, slots=True)
class PlayerParamMsg:
    params: tuple[tuple[str, float], ...] = field(default=())

    def as_dict(self) -> dict[str, float]:
        return dict(self.params)


@dataclass(frozen=True, slots=True)
class PlayerTypeMsg:
    type_id: int
    params: tuple[tuple[str, float], ...] = field(default=())

    def as_dict(self) -> dict[str, float]:
        return dict(self.params)


@dataclass(frozen=True, slots=True)
class ErrorMsg:
    text: str


@dataclass(frozen=True, slots=True)
class OkMsg:
    text: str


ServerMessage = Union[
    Init, See, SenseBody, FullState, Hear,
    ServerParamMsg, PlayerParamMsg, PlayerTypeMsg, ErrorMsg, OkMsg,
]


# ---------------------------------------------------------------------------
# decoding


def _head(expr: SExpr) -> str:
    if not isinstance(expr, list) or not expr or not isinstance(expr[0], Atom):
        raise UnknownMessageHead(serialize_sexpr(expr) if expr else "()")
    return expr[0].text


def _atom_text(expr: SExpr, head: str) -> str:
    if not isinstance(expr, Atom):
        raise FieldCountMismatch(head, "expected atom")
    return expr.text


def _decode_obj_name(expr: SExpr) -> ObjName:
    if not isinstance(expr, list) or not expr:
        raise FieldCountMismatch("see", "object name must be a list")
    parts = [_atom_text(c, "see") for c in expr]
    kind = parts[0]
    if kind == "b":
        if len(parts) != 1:
            raise FieldCountMismatch("see", "ball name")
        return BallObj()
    if kind == "f":
        fid = " ".join(parts)
        if fid not in FLAGS:
            raise UnknownFlagId(fid)
        return FlagObj(fid)
    if kind == "g":
        if len(parts) != 2 or parts[1] not in ("l", "r"):
            raise UnknownFlagId(" ".join(parts))
        return GoalObj(parts[1])
    if kind == "p":
        if len(parts) == 1:
            return PlayerObj()
        if len(parts) == 2 and parts[1] in ("l", "r"):
            return PlayerObj(parts[1])
        if len(parts) == 3 and parts[1] in ("l", "r"):
            try:
                return PlayerObj(parts[1], int(parts[2]))
            except ValueError:
                raise NumericParseFailure(parts[2]) from None
        raise FieldCountMismatch("see", "player name")
    if kind == "l":
        if len(parts) != 2 or parts[1] not in ("t", "b", "l", "r"):
            raise FieldCountMismatch("see", "line name")
        return LineObj(parts[1])
    raise FieldCountMismatch("see", f"unknown object kind {kind!r}")


def _decode_observed(expr: SExpr) -> ObservedObject:
    if not isinstance(expr, list) or len(expr) < 3:
        raise FieldCountMismatch("see", "object entry")
    name = _decode_obj_name(expr[0])
    nums = [parse_num(c) for c in expr[1:]]
    if len(nums) == 2:
        obj = ObservedObject(name, nums[0], nums[1])
    elif len(nums) == 4:
        obj = ObservedObject(name, nums[0], nums[1], nums[2], nums[3])
    else:
        raise FieldCountMismatch("see", f"{len(nums)} numeric fields")
    if obj.distance < 0:
        raise FieldCountMismatch("see", "negative distance")
    if not -180.0 <= obj.direction < 180.0:
        raise FieldCountMismatch("see", "direction outside [-180,180)")
    return obj


def _decode_kv_pairs(items: list, head: str) -> tuple[tuple[str, float], ...]:
    out = []
    for item in items:
        if not isinstance(item, list) or len(item) != 2:
            raise FieldCountMismatch(head, "expected (key value) pairs")
        out.append((_atom_text(item[0], head), parse_num(item[1])))
    return tuple(out)


def _cycle_of(expr: SExpr, head: str) -> int:
    if len(expr) < 2:
        raise FieldCountMismatch(head, "missing cycle")
    c = parse_int(expr[1])
    if c < 0:
        raise FieldCountMismatch(head, "negative cycle")
    return c


def _play_mode(text: str, head: str) -> PlayMode:
    try:
        return PlayMode.from_wire(text)
    except ValueError:
        raise FieldCountMismatch(head, f"bad play mode {text!r}") from None


def decode_server_message(expr: SExpr) -> ServerMessage:
    head = _head(expr)
    if head == "init":
        if len(expr) != 4:
            raise FieldCountMismatch(head)
        side = _atom_text(expr[1], head)
        if side not in ("l", "r"):
            raise FieldCountMismatch(head, f"bad side {side!r}")
        return Init(side, parse_int(expr[2]), _play_mode(_atom_text(expr[3], head), head))
    if head == "see":
        cycle = _cycle_of(expr, head)
        return See(cycle, tuple(_decode_observed(c) for c in expr[2:]))
    if head == "sense_body":
        cycle = _cycle_of(expr, head)
        fields: dict[str, list[float]] = {}
        for sub in expr[2:]:
            if not isinstance(sub, list) or not sub:
                raise FieldCountMismatch(head, "expected sub-lists")
            key = _atom_text(sub[0], head)
            fields[key] = [parse_num(c) for c in sub[1:]]
        try:
            stamina, effort = fields["stamina"]
            speed_mag, speed_dir = fields["speed"]
            (neck,) = fields["head_angle"]
        except (KeyError, ValueError):
            raise FieldCountMismatch(head, "missing stamina/speed/head_angle") from None
        return SenseBody(cycle, stamina, effort, speed_mag, speed_dir, neck)
    if head == "fullstate":
        return _decode_fullstate(expr)
    if head == "hear":
        if len(expr) != 4:
            raise FieldCountMismatch(head)
        cycle = _cycle_of(expr, head)
        return Hear(cycle, _atom_text(expr[2], head), _atom_text(expr[3], head))
    if head == "server_param":
        return ServerParamMsg(_decode_kv_pairs(expr[1:], head))
    if head == "player_param":
        return PlayerParamMsg(_decode_kv_pairs(expr[1:], head))
    if head == "player_type":
        pairs = _decode_kv_pairs(expr[1:], head)
        d = dict(pairs)
        if "id" not in d:
            raise FieldCountMismatch(head, "missing id")
        rest = tuple((k, v) for k, v in pairs if k != "id")
        return PlayerTypeMsg(int(d["id"]), rest)
    if head == "error":
        if len(expr) != 2:
            raise FieldCountMismatch(head)
        return ErrorMsg(_atom_text(expr[1], head))
    if head == "ok":
        if len(expr) != 2:
            raise FieldCountMismatch(head)
        return OkMsg(_atom_text(expr[1], head))
    raise UnknownMessageHead(head)


def _decode_fullstate(expr: SExpr) -> FullState:
    head = "fullstate"
    cycle = _cycle_of(expr, head)
    mode: PlayMode | None = None
    score: tuple[int, int] | None = None
    ball: tuple[Vec2, Vec2] | None = None
    players: list[PlayerSnap] = []
    for sub in expr[2:]:
        if not isinstance(sub, list) or not sub:
            raise FieldCountMismatch(head, "expected sub-lists")
        if isinstance(sub[0], list):  # ((p l 1) x y vx vy body neck stamina effort)
            name = _decode_obj_name(sub[0])
            if not isinstance(name, PlayerObj) or name.side is None or name.unum is None:
                raise FieldCountMismatch(head, "bad player entry")
            nums = [parse_num(c) for c in sub[1:]]
            if len(nums) != 8:
                raise FieldCountMismatch(head, "player entry needs 8 numbers")
            players.append(
                PlayerSnap(
                    name.side, name.unum,
                    Vec2(nums[0], nums[1]), Vec2(nums[2], nums[3]),
                    nums[4], nums[5], nums[6], nums[7],
                )
            )
            continue
        key = _atom_text(sub[0], head)
        if key == "pmode":
            if len(sub) != 2:
                raise FieldCountMismatch(head, "pmode")
            mode = _play_mode(_atom_text(sub[1], head), head)
        elif key == "score":
            if len(sub) != 3:
                raise FieldCountMismatch(head, "score")
            score = (parse_int(sub[1]), parse_int(sub[2]))
        elif key == "ball":
            if len(sub) != 5:
                raise FieldCountMismatch(head, "ball")
            nums = [parse_num(c) for c in sub[1:]]
            ball = (Vec2(nums[0], nums[1]), Vec2(nums[2], nums[3]))
        else:
            raise FieldCountMismatch(head, f"unknown section {key!r}")
    if mode is None or score is None or ball is None:
        raise FieldCountMismatch(head, "missing pmode/score/ball")
    return FullState(cycle, mode, score[0], score[1], ball[0], ball[1], tuple(players))


def decode_server_datagram(data: bytes) -> ServerMessage:
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as e:
        raise CodecError(f"non-ascii datagram: {e}") from None
    return decode_server_message(parse_sexpr(text))


# ---------------------------------------------------------------------------
# encoding


def _name_expr(name: ObjName) -> list:
    if isinstance(name, BallObj):
        return [Atom("b")]
    if isinstance(name, FlagObj):
        return [Atom(p) for p in name.flag_id.split(" ")]
    if isinstance(name, GoalObj):
        return [Atom("g"), Atom(name.side)]
    if isinstance(name, LineObj):
        return [Atom("l"), Atom(name.line_id)]
    parts = [Atom("p")]
    if name.side is not None:
        parts.append(Atom(name.side))
        if name.unum is not None:
            parts.append(Atom(str(name.unum)))
    return parts


def encode_server_message(msg: ServerMessage) -> str:
    if isinstance(msg, Init):
        e: list = [Atom("init"), Atom(msg.side), Atom(str(msg.unum)), Atom(msg.play_mode.to_wire())]
    elif isinstance(msg, See):
        e = [Atom("see"), Atom(str(msg.cycle))]
        for o in msg.objects:
            entry: list = [_name_expr(o.name), Atom(fmt2(o.distance)), Atom(fmt2(o.direction))]
            if o.dist_change is not None and o.dir_change is not None:
                entry += [Atom(fmt2(o.dist_change)), Atom(fmt2(o.dir_change))]
            e.append(entry)
    elif isinstance(msg, SenseBody):
        e = [
            Atom("sense_body"), Atom(str(msg.cycle)),
            [Atom("stamina"), Atom(fmt_full(msg.stamina)), Atom(fmt_full(msg.effort))],
            [Atom("speed"), Atom(fmt_full(msg.speed_mag)), Atom(fmt_full(msg.speed_dir))],
            [Atom("head_angle"), Atom(fmt_full(msg.neck_dir))],
        ]
    elif isinstance(msg, FullState):
        e = [
            Atom("fullstate"), Atom(str(msg.cycle)),
            [Atom("pmode"), Atom(msg.play_mode.to_wire())],
            [Atom("score"), Atom(str(msg.score_l)), Atom(str(msg.score_r))],
            [Atom("ball"), Atom(fmt_full(msg.ball_pos.x)), Atom(fmt_full(msg.ball_pos.y)),
             Atom(fmt_full(msg.ball_vel.x)), Atom(fmt_full(msg.ball_vel.y))],
        ]
        for p in msg.players:
            e.append([
                [Atom("p"), Atom(p.side), Atom(str(p.unum))],
                Atom(fmt_full(p.pos.x)), Atom(fmt_full(p.pos.y)),
                Atom(fmt_full(p.vel.x)), Atom(fmt_full(p.vel.y)),
                Atom(fmt_full(p.body_dir)), Atom(fmt_full(p.neck_dir)),
                Atom(fmt_full(p.stamina)), Atom(fmt_full(p.effort)),
            ])
    elif isinstance(msg, Hear):
        e = [Atom("hear"), Atom(str(msg.cycle)), Atom(msg.sender, quoted=" " in msg.sender),
             Atom(msg.text, quoted=True)]
    elif isinstance(msg, ServerParamMsg):
        e = [Atom("server_param")] + [[Atom(k), Atom(fmt_full(v))] for k, v in msg.params]
    elif isinstance(msg, PlayerParamMsg):
        e = [Atom("player_param")] + [[Atom(k), Atom(fmt_full(v))] for k, v in msg.params]
    elif isinstance(msg, PlayerTypeMsg):
        e = [Atom("player_type"), [Atom("id"), Atom(str(msg.type_id))]]
        e += [[Atom(k), Atom(fmt_full(v))] for k, v in msg.params]
    elif isinstance(msg, ErrorMsg):
        e = [Atom("error"), Atom(msg.text, quoted=True)]
    elif isinstance(msg, OkMsg):
        e = [Atom("ok"), Atom(msg.text, quoted=True)]
    else:
        raise TypeError(f"not a ServerMessage: {msg!r}")
    return serialize_sexpr(e)
