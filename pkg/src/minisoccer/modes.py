"""Referee play modes and their wire names."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

# Kinds that carry a side on the wire ("kick_off_l" etc.)
SIDED_KINDS = ("kick_off", "kick_in", "goal_kick", "corner_kick", "goal")
PLAIN_KINDS = ("before_kick_off", "play_on", "time_over")


@dataclass(frozen=True, slots=True)
class PlayMode:
    kind: str
    side: Optional[str] = None  # 'l' or 'r' for sided kinds

    def __post_init__(self):
        if self.kind in SIDED_KINDS:
            if self.side not in ("l", "r"):
                raise ValueError(f"{self.kind} requires a side")
        elif self.kind in PLAIN_KINDS:
            if self.side is not None:
                raise ValueError(f"{self.kind} carries no side")
        else:
            raise ValueError(f"unknown play mode kind {self.kind!r}")

    def to_wire(self) -> str:
        return f"{self.kind}_{self.side}" if self.side else self.kind

    @staticmethod
    def from_wire(name: str) -> "PlayMode":
        if name in PLAIN_KINDS:
            return PlayMode(name)
        if name.endswith(("_l", "_r")):
            kind, side = name[:-2], name[-1]
            if kind in SIDED_KINDS:
                return PlayMode(kind, side)
        raise ValueError(f"unknown play mode {name!r}")


BEFORE_KICK_OFF = PlayMode("before_kick_off")
PLAY_ON = PlayMode("play_on")
TIME_OVER = PlayMode("time_over")

ALL_MODES = (BEFORE_KICK_OFF, PLAY_ON, TIME_OVER) + tuple(
    PlayMode(kind, side) for kind in SIDED_KINDS for side in "lr"
)


def kick_off(side: str) -> PlayMode:
    return PlayMode("kick_off", side)


def other_side(side: str) -> str:
    return "r" if side == "l" else "l"


def is_dead_ball(mode: PlayMode) -> bool:
    """Modes during which the ball is frozen until the entitled team kicks."""
    return mode.kind in ("before_kick_off", "kick_off", "kick_in", "goal_kick", "corner_kick", "goal")


def entitled_side(mode: PlayMode) -> Optional[str]:
    """Which side may kick to resume play; None when the ball is live or dead for both."""
    if mode.kind == "before_kick_off":
        return "l"  # convention: left kicks off
    if mode.kind in ("kick_off", "kick_in", "goal_kick", "corner_kick"):
        return mode.side
    return None
