"""Estimated game state, kept in a team-normalized frame.

Every stored position uses coordinates where our own goal sits at
x = -52.5 whichever side we were assigned; right-side agents mirror both
axes and all global angles on the way in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..geometry import Vec2, mirror_deg
from ..modes import BEFORE_KICK_OFF, PlayMode
from .params import WmParams


@dataclass(slots=True)
class PoseEstimate:
    pos: Vec2 = Vec2(0.0, 0.0)
    body_dir: float = 0.0
    neck_dir: float = 0.0
    pos_error: float = 1000.0
    valid: bool = False


@dataclass(slots=True)
class TrackedObject:
    kind: str  # "ball" | "player"
    side: Optional[str] = None  # "ours" | "theirs" for players
    unum: Optional[int] = None
    pos: Vec2 = Vec2(0.0, 0.0)
    vel: Vec2 = Vec2(0.0, 0.0)
    body_dir: Optional[float] = None  # unknown unless seen via FullState
    confidence: float = 0.0
    last_seen_cycle: int = -1


# Relative play-mode names carried over the RPC boundary; the order is part
# of the wire contract.
RELATIVE_MODES = (
    "before_kick_off",
    "play_on",
    "time_over",
    "kick_off_ours",
    "kick_off_theirs",
    "kick_in_ours",
    "kick_in_theirs",
    "goal_kick_ours",
    "goal_kick_theirs",
    "corner_kick_ours",
    "corner_kick_theirs",
    "goal_ours",
    "goal_theirs",
)


def relative_play_mode(mode: PlayMode, our_side: str) -> str:
    if mode.side is None:
        return mode.kind
    suffix = "ours" if mode.side == our_side else "theirs"
    return f"{mode.kind}_{suffix}"


def absolute_play_mode(name: str, our_side: str) -> PlayMode:
    if name in ("before_kick_off", "play_on", "time_over"):
        return PlayMode(name)
    kind, _, rel = name.rpartition("_")
    side = our_side if rel == "ours" else ("l" if our_side == "r" else "r")
    return PlayMode(kind, side)


@dataclass
class WorldState:
    params: WmParams = field(default_factory=WmParams)
    our_side: str = "l"
    our_team: str = ""
    their_team: str = ""
    self_unum: int = 0
    cycle: int = 0
    play_mode: PlayMode = BEFORE_KICK_OFF
    score_ours: int = 0
    score_theirs: int = 0
    self_pose: PoseEstimate = field(default_factory=PoseEstimate)
    self_vel: Vec2 = Vec2(0.0, 0.0)
    stamina: float = 8000.0
    effort: float = 1.0
    ball: Optional[TrackedObject] = None
    teammates: Dict[int, TrackedObject] = field(default_factory=dict)
    opponents: Dict[int, TrackedObject] = field(default_factory=dict)
    hears: List[Tuple[int, str, str]] = field(default_factory=list)
    stale_messages: int = 0
    last_fix_cycle: int = -1000
    last_ball_sight: Optional[Tuple[int, Vec2]] = None

    # -- frame helpers -----------------------------------------------------

    def norm_pos(self, p: Vec2) -> Vec2:
        return p.mirrored() if self.our_side == "r" else p

    def norm_dir(self, d: float) -> float:
        return mirror_deg(d) if self.our_side == "r" else d

    def team_of(self, absolute_side: str) -> str:
        return "ours" if absolute_side == self.our_side else "theirs"

    @property
    def relative_mode(self) -> str:
        return relative_play_mode(self.play_mode, self.our_side)

    def tracked_players(self) -> List[TrackedObject]:
        out = [self.teammates[k] for k in sorted(self.teammates)]
        out.extend(self.opponents[k] for k in sorted(self.opponents))
        return out

    def self_tracked(self) -> TrackedObject:
        """The self entry inside `teammates`, created on first access."""
        obj = self.teammates.get(self_unum := self.self_unum)
        if obj is None:
            obj = TrackedObject(kind="player", side="ours", unum=self_unum)
            self.teammates[self_unum] = obj
        return obj

    def sync_self_entry(self) -> None:
        obj = self.self_tracked()
        obj.pos = self.self_pose.pos
        obj.vel = self.self_vel
        obj.body_dir = self.self_pose.body_dir
        obj.confidence = 1.0 if self.self_pose.valid else max(obj.confidence, 0.0)
        obj.last_seen_cycle = self.cycle
