"""Runtime access to the playmaker service schema.

The wire contract lives in ``proto/game.proto``; its compiled descriptor set
is shipped with the package (``game.desc``) and loaded here into a private
descriptor pool. Message classes are materialized dynamically, so no
generated ``*_pb2.py`` modules are needed.
"""

from __future__ import annotations

import importlib.resources
from typing import Dict

from google.protobuf import descriptor_pb2, descriptor_pool, message_factory

_PACKAGE = "game"

_MESSAGE_NAMES = (
    "Vector",
    "SelfState",
    "BallState",
    "PlayerEntry",
    "InterceptSummary",
    "WorldModel",
    "State",
    "Dash",
    "Turn",
    "Kick",
    "TurnNeck",
    "Move",
    "Say",
    "BodyGoToPoint",
    "BodySmartKick",
    "BodyTurnToPoint",
    "BodyInterceptBall",
    "NeckTurnToBall",
    "DoNothing",
    "PlayerAction",
    "PlayerActionsReply",
    "CoachAction",
    "CoachActionsReply",
    "MoveBall",
    "MovePlayer",
    "ChangePlayMode",
    "Recover",
    "TrainerAction",
    "TrainerActionsReply",
    "InitMessage",
    "Param",
    "ServerParams",
    "PlayerParams",
    "PlayerType",
    "Ack",
)

SERVICE_NAME = "game.Game"

METHOD_NAMES = (
    "GetPlayerActions",
    "GetCoachActions",
    "GetTrainerActions",
    "SendInitMessage",
    "SendServerParams",
    "SendPlayerParams",
    "SendPlayerType",
)

# Request and reply message names per method, in schema order.
METHOD_TYPES: Dict[str, tuple] = {
    "GetPlayerActions": ("State", "PlayerActionsReply"),
    "GetCoachActions": ("State", "CoachActionsReply"),
    "GetTrainerActions": ("State", "TrainerActionsReply"),
    "SendInitMessage": ("InitMessage", "Ack"),
    "SendServerParams": ("ServerParams", "Ack"),
    "SendPlayerParams": ("PlayerParams", "Ack"),
    "SendPlayerType": ("PlayerType", "Ack"),
}


def _load_pool() -> descriptor_pool.DescriptorPool:
    data = (
        importlib.resources.files("minisoccer.rpc")
        .joinpath("game.desc")
        .read_bytes()
    )
    fds = descriptor_pb2.FileDescriptorSet()
    fds.ParseFromString(data)
    pool = descriptor_pool.DescriptorPool()
    for fd in fds.file:
        pool.Add(fd)
    return pool


def _message_class(pool, full_name):
    desc = pool.FindMessageTypeByName(full_name)
    if hasattr(message_factory, "GetMessageClass"):
        return message_factory.GetMessageClass(desc)
    return message_factory.MessageFactory(pool).GetPrototype(desc)


class Schema:
    """Dynamic message classes plus service metadata, loaded once."""

    def __init__(self) -> None:
        self.pool = _load_pool()
        self.messages: Dict[str, type] = {
            name: _message_class(self.pool, f"{_PACKAGE}.{name}")
            for name in _MESSAGE_NAMES
        }
        self.service = self.pool.FindServiceByName(SERVICE_NAME)
        self.play_mode_enum = self.pool.FindEnumTypeByName("game.PlayMode")
        self.server_play_mode_enum = self.pool.FindEnumTypeByName(
            "game.ServerPlayMode"
        )
        self.agent_type_enum = self.pool.FindEnumTypeByName("game.AgentType")

    def new(self, name: str):
        return self.messages[name]()

    def method_path(self, method: str) -> str:
        return f"/{SERVICE_NAME}/{method}"


_SCHEMA = None


def get_schema() -> Schema:
    global _SCHEMA
    if _SCHEMA is None:
        _SCHEMA = Schema()
    return _SCHEMA
