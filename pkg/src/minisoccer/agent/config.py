"""Per-agent configuration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


@dataclass
class AgentConfig:
    team: str = "home"
    unum_hint: int = 0
    agent_type: str = "player"  # "player" | "coach" | "trainer"
    host: str = "127.0.0.1"
    player_port: int = 6000
    trainer_port: int = 6001
    # None: no playmaker, fallback every cycle. A string is a gRPC address;
    # any other object is treated as an in-process service.
    playmaker: Optional[Union[str, object]] = None
    deadline_ms: float = 70.0
    cycle_ms: int = 100
    version: str = "18"
    goalie: bool = False
    fallback_policy: str = "default"
    max_cycles: Optional[int] = None
    recv_timeout_s: float = 10.0

    def __post_init__(self) -> None:
        if self.agent_type not in ("player", "coach", "trainer"):
            raise ValueError(f"unknown agent type {self.agent_type!r}")
        if not self.deadline_ms < self.cycle_ms:
            raise ValueError(
                f"deadline {self.deadline_ms}ms must stay under the "
                f"{self.cycle_ms}ms cycle"
            )
        if self.fallback_policy != "default":
            raise ValueError(f"unknown fallback policy {self.fallback_policy!r}")
