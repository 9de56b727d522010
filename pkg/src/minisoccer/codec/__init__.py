"""S-expression wire protocol: tokenizer, typed messages, client commands."""

from .commands import (
    BODY_COMMANDS,
    Bye,
    ChangeMode,
    Command,
    Dash,
    InitCmd,
    Kick,
    Move,
    Recover,
    Say,
    TrainerMove,
    Turn,
    TurnNeck,
    decode_client_command,
    decode_client_datagram,
    encode_client_command,
    validate_command,
)
from .errors import (
    CodecError,
    FieldCountMismatch,
    IllegalCharacter,
    NumericParseFailure,
    OutOfRangeField,
    UnbalancedParens,
    UnknownCommandHead,
    UnknownFlagId,
    UnknownMessageHead,
)
from .landmarks import FLAGS, GOALS, LANDMARKS
from .messages import (
    BallObj,
    ErrorMsg,
    FlagObj,
    FullState,
    GoalObj,
    Hear,
    Init,
    LineObj,
    ObservedObject,
    OkMsg,
    PlayerObj,
    PlayerParamMsg,
    PlayerSnap,
    PlayerTypeMsg,
    See,
    SenseBody,
    ServerMessage,
    ServerParamMsg,
    decode_server_datagram,
    decode_server_message,
    encode_server_message,
)
from .numbers import fmt2, fmt_full, parse_int, parse_num
from .sexpr import Atom, SExpr, parse_sexpr, serialize_sexpr

__all__ = [
    "Atom",
    "BODY_COMMANDS",
    "BallObj",
    "Bye",
    "ChangeMode",
    "CodecError",
    "Command",
    "Dash",
    "ErrorMsg",
    "FLAGS",
    "FieldCountMismatch",
    "FlagObj",
    "FullState",
    "GOALS",
    "GoalObj",
    "Hear",
    "IllegalCharacter",
    "Init",
    "InitCmd",
    "Kick",
    "LANDMARKS",
    "LineObj",
    "Move",
    "NumericParseFailure",
    "ObservedObject",
    "OkMsg",
    "OutOfRangeField",
    "PlayerObj",
    "PlayerParamMsg",
    "PlayerSnap",
    "PlayerTypeMsg",
    "Recover",
    "SExpr",
    "Say",
    "See",
    "SenseBody",
    "ServerMessage",
    "ServerParamMsg",
    "TrainerMove",
    "Turn",
    "TurnNeck",
    "UnbalancedParens",
    "UnknownCommandHead",
    "UnknownFlagId",
    "UnknownMessageHead",
    "decode_client_command",
    "decode_client_datagram",
    "decode_server_datagram",
    "decode_server_message",
    "encode_server_message",
    "encode_client_command",
    "fmt2",
    "fmt_full",
    "parse_int",
    "parse_num",
    "parse_sexpr",
    "serialize_sexpr",
    "validate_command",
]
