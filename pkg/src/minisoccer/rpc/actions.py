"""Action dataclasses exchanged over the playmaker service.

These mirror the oneof variants of the schema one-to-one. Primitive actions
map straight onto simulator commands; high-level body actions are compiled
by the proxy into primitives using its world model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..geometry import Vec2
from ..modes import PlayMode


@dataclass(frozen=True)
class DashAction:
    power: float
    dir: float = 0.0


@dataclass(frozen=True)
class TurnAction:
    moment: float


@dataclass(frozen=True)
class KickAction:
    power: float
    dir: float = 0.0


@dataclass(frozen=True)
class TurnNeckAction:
    moment: float


@dataclass(frozen=True)
class MoveAction:
    x: float
    y: float


@dataclass(frozen=True)
class SayAction:
    text: str


@dataclass(frozen=True)
class GoToPointAction:
    target: Vec2
    dist_thr: float = 1.0
    max_power: float = 100.0


@dataclass(frozen=True)
class SmartKickAction:
    target: Vec2
    first_speed: float
    speed_thr: float = 0.5
    max_steps: int = 1


@dataclass(frozen=True)
class TurnToPointAction:
    target: Vec2


@dataclass(frozen=True)
class InterceptBallAction:
    pass


@dataclass(frozen=True)
class TurnNeckToBallAction:
    pass


@dataclass(frozen=True)
class NoOpAction:
    pass


PlayerActionT = Union[
    DashAction,
    TurnAction,
    KickAction,
    TurnNeckAction,
    MoveAction,
    SayAction,
    GoToPointAction,
    SmartKickAction,
    TurnToPointAction,
    InterceptBallAction,
    TurnNeckToBallAction,
    NoOpAction,
]

CoachActionT = Union[SayAction, NoOpAction]


@dataclass(frozen=True)
class MoveBallAction:
    pos: Vec2
    vel: Vec2 = field(default_factory=lambda: Vec2(0.0, 0.0))


@dataclass(frozen=True)
class MovePlayerAction:
    side: str
    unum: int
    pos: Vec2
    body_dir: float = 0.0


@dataclass(frozen=True)
class ChangeModeAction:
    mode: PlayMode


@dataclass(frozen=True)
class RecoverAction:
    pass


TrainerActionT = Union[
    MoveBallAction,
    MovePlayerAction,
    ChangeModeAction,
    RecoverAction,
]

# High-level body actions the proxy must compile before sending to the
# simulator. Order matters nowhere; membership checks only.
HIGH_LEVEL_BODY = (
    GoToPointAction,
    SmartKickAction,
    TurnToPointAction,
    InterceptBallAction,
)

PRIMITIVE_BODY = (DashAction, TurnAction, KickAction, MoveAction)
