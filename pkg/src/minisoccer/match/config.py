"""Match orchestration configuration.

A MatchConfig names the two teams, pins the seed, and carries the few
knobs the orchestrator itself needs; everything else about the simulation
goes through the `sim` override mapping onto SimConfig fields. Configs
load from YAML with strict key checking, so typos fail instead of
silently running a default match.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from typing import Optional

import yaml

from ..sim import SimConfig

PLAYMAKER_BUILTIN = "builtin"
PLAYMAKER_NONE = "none"

PACINGS = ("lockstep", "timed")


@dataclass
class TeamSpec:
    """One side of a match.

    `playmaker` selects the decision service: "builtin" for the in-process
    reference policy, "none" for no service at all (agents fall back every
    cycle), anything else is a host:port gRPC endpoint.
    """

    name: str
    playmaker: str = PLAYMAKER_BUILTIN
    players: int = 11
    coach: bool = False

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("team name must be non-empty")
        if not 1 <= self.players <= 11:
            raise ValueError(f"players must be 1..11, got {self.players}")
        if not self.playmaker:
            raise ValueError("playmaker must be non-empty")


@dataclass
class MatchConfig:
    left: TeamSpec = field(default_factory=lambda: TeamSpec("home"))
    right: TeamSpec = field(default_factory=lambda: TeamSpec("away"))
    seed: int = 1
    replay_path: Optional[str] = "replay.jsonl"
    observation_mode: str = "fullstate"
    pacing: str = "lockstep"
    tick_scale: float = 1.0  # timed pacing only: wall fraction per cycle
    barrier_cap: float = 0.25  # lockstep: longest wait for a straggler
    deadline_ms: float = 70.0
    episode_script: Optional[str] = None  # path to a trainer script file
    max_wall_s: float = 1800.0
    host: str = "127.0.0.1"
    player_port: int = 0  # 0 picks a free port
    trainer_port: int = 0
    sim: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.pacing not in PACINGS:
            raise ValueError(f"pacing must be one of {PACINGS}, got {self.pacing!r}")
        if self.left.name == self.right.name:
            raise ValueError("team names must differ")
        if self.tick_scale <= 0:
            raise ValueError("tick_scale must be positive")
        if self.deadline_ms <= 0:
            raise ValueError("deadline_ms must be positive")

    def sim_config(self) -> SimConfig:
        kw = dict(
            seed=self.seed,
            observation_mode=self.observation_mode,
            player_port=self.player_port,
            trainer_port=self.trainer_port,
        )
        kw.update(self.sim)
        return SimConfig(**kw)

    def snapshot(self) -> dict:
        """Deterministic header content for the replay log.

        Contains the resolved simulation parameters and both team specs;
        nothing time- or host-dependent, so reruns of the same config
        produce byte-identical headers.
        """
        sim = asdict(self.sim_config())
        # Bound ports are an OS artifact, not match substance.
        sim.pop("player_port", None)
        sim.pop("trainer_port", None)
        return {
            "teams": {"l": asdict(self.left), "r": asdict(self.right)},
            "seed": self.seed,
            "pacing": self.pacing,
            "deadline_ms": self.deadline_ms,
            "episode_script": self.episode_script,
            "sim": sim,
        }


def _team_from_dict(data: dict, default_name: str) -> TeamSpec:
    if not isinstance(data, dict):
        raise ValueError(f"team spec must be a mapping, got {type(data).__name__}")
    known = {f.name for f in fields(TeamSpec)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown team keys: {sorted(unknown)}")
    merged = {"name": default_name, **data}
    return TeamSpec(**merged)


def match_config_from_dict(data: dict) -> MatchConfig:
    if not isinstance(data, dict):
        raise ValueError("match config must be a mapping")
    data = dict(data)
    teams = data.pop("teams", {})
    if not isinstance(teams, dict) or set(teams) - {"left", "right"}:
        raise ValueError("teams must be a mapping with keys left/right")
    known = {f.name for f in fields(MatchConfig)} - {"left", "right"}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown match keys: {sorted(unknown)}")
    kw = dict(data)
    kw["left"] = _team_from_dict(teams.get("left", {}), "home")
    kw["right"] = _team_from_dict(teams.get("right", {}), "away")
    return MatchConfig(**kw)


def load_match_config(path: str) -> MatchConfig:
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    return match_config_from_dict(data or {})
