"""Client commands and their wire codecs.

encode/decode form an exact round trip: numbers go on the wire at full
precision and power/direction bounds are enforced on both paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..modes import PlayMode
from .errors import (
    CodecError,
    FieldCountMismatch,
    OutOfRangeField,
    UnknownCommandHead,
)
from .numbers import fmt_full, parse_int, parse_num
from .sexpr import Atom, SExpr, parse_sexpr, serialize_sexpr


@dataclass(frozen=True, slots=True)
class InitCmd:
    team: Optional[str]  # None for the trainer
    version: int = 18
    goalie: bool = False
    coach: bool = False


@dataclass(frozen=True, slots=True)
class Move:
    x: float
    y: float


@dataclass(frozen=True, slots=True)
class Dash:
    power: float
    dir: float = 0.0


@dataclass(frozen=True, slots=True)
class Turn:
    moment: float


@dataclass(frozen=True, slots=True)
class Kick:
    power: float
    dir: float


@dataclass(frozen=True, slots=True)
class TurnNeck:
    moment: float


@dataclass(frozen=True, slots=True)
class Say:
    text: str


@dataclass(frozen=True, slots=True)
class TrainerMove:
    """Teleport the ball or a player; trainer only."""

    target: tuple  # ("ball",) or ("player", side, unum)
    x: float
    y: float
    vx: Optional[float] = None
    vy: Optional[float] = None
    dir: Optional[float] = None  # body direction, player targets only


@dataclass(frozen=True, slots=True)
class ChangeMode:
    mode: PlayMode


@dataclass(frozen=True, slots=True)
class Recover:
    pass


@dataclass(frozen=True, slots=True)
class Bye:
    pass


Command = Union[InitCmd, Move, Dash, Turn, Kick, TurnNeck, Say, TrainerMove, ChangeMode, Recover, Bye]

# Commands that move the body; at most one is accepted per agent per cycle.
BODY_COMMANDS = (Move, Dash, Turn, Kick)


def _check_power(name: str, v: float) -> float:
    if not -100.0 <= v <= 100.0:
        raise OutOfRangeField(name, v)
    return v


def _check_dir(name: str, v: float) -> float:
    if not -180.0 <= v < 180.0:
        raise OutOfRangeField(name, v)
    return v


def validate_command(cmd: Command) -> None:
    if isinstance(cmd, Dash):
        _check_power("dash.power", cmd.power)
        _check_dir("dash.dir", cmd.dir)
    elif isinstance(cmd, Turn):
        _check_dir("turn.moment", cmd.moment)
    elif isinstance(cmd, Kick):
        _check_power("kick.power", cmd.power)
        _check_dir("kick.dir", cmd.dir)
    elif isinstance(cmd, TurnNeck):
        _check_dir("turn_neck.moment", cmd.moment)
    elif isinstance(cmd, TrainerMove):
        if cmd.target[0] not in ("ball", "player"):
            raise OutOfRangeField("move.target", cmd.target)
        if cmd.dir is not None:
            _check_dir("move.dir", cmd.dir)
    elif isinstance(cmd, InitCmd):
        if cmd.version < 1:
            raise OutOfRangeField("init.version", cmd.version)
        if cmd.goalie and cmd.coach:
            raise OutOfRangeField("init.goalie+coach", True)


def encode_client_command(cmd: Command) -> str:
    validate_command(cmd)
    if isinstance(cmd, InitCmd):
        e: list = [Atom("init")]
        if cmd.team is not None:
            e.append(Atom(cmd.team, quoted=" " in cmd.team))
        e.append([Atom("version"), Atom(str(cmd.version))])
        if cmd.goalie:
            e.append([Atom("goalie")])
        if cmd.coach:
            e.append([Atom("coach")])
    elif isinstance(cmd, Move):
        e = [Atom("move"), Atom(fmt_full(cmd.x)), Atom(fmt_full(cmd.y))]
    elif isinstance(cmd, Dash):
        e = [Atom("dash"), Atom(fmt_full(cmd.power)), Atom(fmt_full(cmd.dir))]
    elif isinstance(cmd, Turn):
        e = [Atom("turn"), Atom(fmt_full(cmd.moment))]
    elif isinstance(cmd, Kick):
        e = [Atom("kick"), Atom(fmt_full(cmd.power)), Atom(fmt_full(cmd.dir))]
    elif isinstance(cmd, TurnNeck):
        e = [Atom("turn_neck"), Atom(fmt_full(cmd.moment))]
    elif isinstance(cmd, Say):
        e = [Atom("say"), Atom(cmd.text, quoted=True)]
    elif isinstance(cmd, TrainerMove):
        tgt: list = [Atom("ball")] if cmd.target[0] == "ball" else [
            Atom("player"), Atom(cmd.target[1]), Atom(str(cmd.target[2]))
        ]
        e = [Atom("move"), tgt, Atom(fmt_full(cmd.x)), Atom(fmt_full(cmd.y))]
        if cmd.target[0] == "ball":
            if cmd.vx is not None and cmd.vy is not None:
                e += [Atom(fmt_full(cmd.vx)), Atom(fmt_full(cmd.vy))]
        elif cmd.dir is not None:
            e.append(Atom(fmt_full(cmd.dir)))
    elif isinstance(cmd, ChangeMode):
        e = [Atom("change_mode"), Atom(cmd.mode.to_wire())]
    elif isinstance(cmd, Recover):
        e = [Atom("recover")]
    elif isinstance(cmd, Bye):
        e = [Atom("bye")]
    else:
        raise TypeError(f"not a Command: {cmd!r}")
    return serialize_sexpr(e)


def _atom_text(expr: SExpr, head: str) -> str:
    if not isinstance(expr, Atom):
        raise FieldCountMismatch(head, "expected atom")
    return expr.text


def decode_client_command(text: str) -> Command:
    expr = parse_sexpr(text)
    if not isinstance(expr, list) or not expr or not isinstance(expr[0], Atom):
        raise UnknownCommandHead(text[:40])
    head = expr[0].text
    args = expr[1:]
    if head == "init":
        return _decode_init(args)
    if head == "move":
        if args and isinstance(args[0], list):
            return _decode_trainer_move(args)
        if len(args) != 2:
            raise FieldCountMismatch(head)
        return Move(parse_num(args[0]), parse_num(args[1]))
    if head == "dash":
        if len(args) not in (1, 2):
            raise FieldCountMismatch(head)
        power = _check_power("dash.power", parse_num(args[0]))
        direction = _check_dir("dash.dir", parse_num(args[1])) if len(args) == 2 else 0.0
        return Dash(power, direction)
    if head == "turn":
        if len(args) != 1:
            raise FieldCountMismatch(head)
        return Turn(_check_dir("turn.moment", parse_num(args[0])))
    if head == "kick":
        if len(args) != 2:
            raise FieldCountMismatch(head)
        return Kick(_check_power("kick.power", parse_num(args[0])),
                    _check_dir("kick.dir", parse_num(args[1])))
    if head == "turn_neck":
        if len(args) != 1:
            raise FieldCountMismatch(head)
        return TurnNeck(_check_dir("turn_neck.moment", parse_num(args[0])))
    if head == "say":
        if len(args) != 1:
            raise FieldCountMismatch(head)
        return Say(_atom_text(args[0], head))
    if head == "change_mode":
        if len(args) != 1:
            raise FieldCountMismatch(head)
        try:
            return ChangeMode(PlayMode.from_wire(_atom_text(args[0], head)))
        except ValueError:
            raise FieldCountMismatch(head, "bad play mode") from None
    if head == "recover":
        if args:
            raise FieldCountMismatch(head)
        return Recover()
    if head == "bye":
        if args:
            raise FieldCountMismatch(head)
        return Bye()
    raise UnknownCommandHead(head)


def _decode_init(args: list) -> InitCmd:
    team: Optional[str] = None
    version: Optional[int] = None
    goalie = coach = False
    rest = args
    if rest and isinstance(rest[0], Atom):
        team = rest[0].text
        rest = rest[1:]
    for sub in rest:
        if not isinstance(sub, list) or not sub or not isinstance(sub[0], Atom):
            raise FieldCountMismatch("init")
        key = sub[0].text
        if key == "version" and len(sub) == 2:
            version = parse_int(sub[1])
        elif key == "goalie" and len(sub) == 1:
            goalie = True
        elif key == "coach" and len(sub) == 1:
            coach = True
        else:
            raise FieldCountMismatch("init", f"unknown option {key!r}")
    if version is None:
        raise FieldCountMismatch("init", "missing (version N)")
    cmd = InitCmd(team, version, goalie, coach)
    validate_command(cmd)
    return cmd


def _decode_trainer_move(args: list) -> TrainerMove:
    tgt = args[0]
    parts = [_atom_text(c, "move") for c in tgt]
    nums = [parse_num(c) for c in args[1:]]
    if parts == ["ball"]:
        if len(nums) == 2:
            return TrainerMove(("ball",), nums[0], nums[1])
        if len(nums) == 4:
            return TrainerMove(("ball",), nums[0], nums[1], nums[2], nums[3])
        raise FieldCountMismatch("move", "ball target takes 2 or 4 numbers")
    if len(parts) == 3 and parts[0] == "player" and parts[1] in ("l", "r"):
        try:
            unum = int(parts[2])
        except ValueError:
            raise FieldCountMismatch("move", "bad unum") from None
        if len(nums) == 2:
            return TrainerMove(("player", parts[1], unum), nums[0], nums[1])
        if len(nums) == 3:
            return TrainerMove(("player", parts[1], unum), nums[0], nums[1],
                               dir=_check_dir("move.dir", nums[2]))
        raise FieldCountMismatch("move", "player target takes 2 or 3 numbers")
    raise FieldCountMismatch("move", f"bad target {parts!r}")


def decode_client_datagram(data: bytes) -> Command:
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as e:
        raise CodecError(f"non-ascii datagram: {e}") from None
    return decode_client_command(text)
