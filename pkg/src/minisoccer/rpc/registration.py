"""Register-id assignment and the registration sequence ledger.

Every agent the proxy manages gets a stable numeric id the playmaker can
key its per-agent state on: left players 101-111, right players 201-211,
coaches 112/212, the trainer 900.

A playmaker must have received, for a given id, the init message and all
three parameter payloads before any action query for that id is legal;
the ledger tracks that handshake.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Set

TRAINER_REGISTER_ID = 900
COACH_OFFSET = 12
_SIDE_BASE = {"l": 100, "r": 200}

class MissingPrerequisiteError(Exception):
    """Action query arrived before the registration handshake finished."""


STAGE_INIT = "init"
STAGE_SERVER_PARAMS = "server_params"
STAGE_PLAYER_PARAMS = "player_params"
STAGE_PLAYER_TYPE = "player_type"

REQUIRED_STAGES = frozenset(
    (STAGE_INIT, STAGE_SERVER_PARAMS, STAGE_PLAYER_PARAMS, STAGE_PLAYER_TYPE)
)


def compute_register_id(agent_type: str, side: Optional[str] = None, unum: int = 0) -> int:
    if agent_type == "trainer":
        return TRAINER_REGISTER_ID
    if side not in _SIDE_BASE:
        raise ValueError(f"side required for {agent_type}: {side!r}")
    if agent_type == "coach":
        return _SIDE_BASE[side] + COACH_OFFSET
    if agent_type == "player":
        if not 1 <= unum <= 11:
            raise ValueError(f"unum out of range: {unum}")
        return _SIDE_BASE[side] + unum
    raise ValueError(f"unknown agent type: {agent_type!r}")


@dataclass
class RegistrationLedger:
    """Which handshake stages each register id has completed."""

    stages: Dict[int, Set[str]] = field(default_factory=dict)

    def mark(self, register_id: int, stage: str) -> None:
        if stage not in REQUIRED_STAGES:
            raise ValueError(f"unknown stage: {stage!r}")
        self.stages.setdefault(register_id, set()).add(stage)

    def ready(self, register_id: int) -> bool:
        return self.stages.get(register_id, set()) >= REQUIRED_STAGES

    def missing(self, register_id: int) -> Set[str]:
        return set(REQUIRED_STAGES) - self.stages.get(register_id, set())
