"""Playmaker service boundary: schema, marshalling, channels, hosting."""

from .actions import (
    ChangeModeAction,
    DashAction,
    GoToPointAction,
    InterceptBallAction,
    KickAction,
    MoveAction,
    MoveBallAction,
    MovePlayerAction,
    NoOpAction,
    RecoverAction,
    SayAction,
    SmartKickAction,
    TurnAction,
    TurnNeckAction,
    TurnNeckToBallAction,
    TurnToPointAction,
)
from .channel import (
    CHANNEL_DOWN,
    DEADLINE_GRACE_MS,
    DEFAULT_DEADLINE_MS,
    MISSING_PREREQUISITE,
    OK,
    TIMEOUT,
    CallOutcome,
    ChannelStats,
    GrpcPlaymakerChannel,
    InProcessPlaymakerChannel,
)
from .marshal import (
    NO_PLAYER_UNUM,
    ROSTER_SIZE,
    UNREACHABLE_CYCLES,
    fill_world_model,
    marshal_coach_actions,
    marshal_init,
    marshal_player_actions,
    marshal_player_params,
    marshal_player_type,
    marshal_server_params,
    marshal_state,
    marshal_trainer_actions,
    param_pairs_from,
    relative_mode_name,
    relative_mode_number,
    server_mode_from_number,
    server_mode_number,
    unmarshal_coach_actions,
    unmarshal_player_actions,
    unmarshal_trainer_actions,
)
from .registration import (
    MissingPrerequisiteError,
    RegistrationLedger,
    TRAINER_REGISTER_ID,
    compute_register_id,
)
from .schema import METHOD_NAMES, METHOD_TYPES, SERVICE_NAME, Schema, get_schema
from .service import MIN_CONCURRENT_REQUESTS, SequencedService, serve_playmaker

__all__ = [
    "ChangeModeAction",
    "DashAction",
    "GoToPointAction",
    "InterceptBallAction",
    "KickAction",
    "MoveAction",
    "MoveBallAction",
    "MovePlayerAction",
    "NoOpAction",
    "RecoverAction",
    "SayAction",
    "SmartKickAction",
    "TurnAction",
    "TurnNeckAction",
    "TurnNeckToBallAction",
    "TurnToPointAction",
    "CHANNEL_DOWN",
    "DEADLINE_GRACE_MS",
    "DEFAULT_DEADLINE_MS",
    "MISSING_PREREQUISITE",
    "OK",
    "TIMEOUT",
    "CallOutcome",
    "ChannelStats",
    "GrpcPlaymakerChannel",
    "InProcessPlaymakerChannel",
    "NO_PLAYER_UNUM",
    "ROSTER_SIZE",
    "UNREACHABLE_CYCLES",
    "fill_world_model",
    "marshal_coach_actions",
    "marshal_init",
    "marshal_player_actions",
    "marshal_player_params",
    "marshal_player_type",
    "marshal_server_params",
    "marshal_state",
    "marshal_trainer_actions",
    "param_pairs_from",
    "relative_mode_name",
    "relative_mode_number",
    "server_mode_from_number",
    "server_mode_number",
    "unmarshal_coach_actions",
    "unmarshal_player_actions",
    "unmarshal_trainer_actions",
    "MissingPrerequisiteError",
    "RegistrationLedger",
    "TRAINER_REGISTER_ID",
    "compute_register_id",
    "METHOD_NAMES",
    "METHOD_TYPES",
    "SERVICE_NAME",
    "Schema",
    "get_schema",
    "MIN_CONCURRENT_REQUESTS",
    "SequencedService",
    "serve_playmaker",
]
