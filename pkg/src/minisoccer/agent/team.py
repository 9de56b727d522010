"""Team-level agent supervision: eleven players plus a coach."""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field, replace
from typing import List, Optional, Union

from .config import AgentConfig
from .loop import Agent, ServerUnreachable

REGISTRATION_STAGGER_S = 0.01


@dataclass
class TeamConfig:
    name: str = "home"
    playmaker: Optional[Union[str, object]] = None
    n_players: int = 11
    coach: bool = True
    host: str = "127.0.0.1"
    player_port: int = 6000
    trainer_port: int = 6001
    deadline_ms: float = 70.0
    max_cycles: Optional[int] = None

    def agent_config(self, agent_type: str, unum: int = 0) -> AgentConfig:
        return AgentConfig(
            team=self.name,
            unum_hint=unum,
            agent_type=agent_type,
            host=self.host,
            player_port=self.player_port,
            trainer_port=self.trainer_port,
            playmaker=self.playmaker,
            deadline_ms=self.deadline_ms,
            max_cycles=self.max_cycles,
        )


@dataclass
class TeamHandle:
    name: str
    agents: List[Agent] = field(default_factory=list)
    threads: List[threading.Thread] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)

    def join(self, timeout: Optional[float] = None) -> None:
        deadline = None if timeout is None else time.monotonic() + timeout
        for t in self.threads:
            remaining = (
                None if deadline is None else max(0.0, deadline - time.monotonic())
            )
            t.join(remaining)

    def stop(self) -> None:
        for agent in self.agents:
            agent.stop()

    @property
    def alive(self) -> bool:
        return any(t.is_alive() for t in self.threads)


def start_team(cfg: TeamConfig) -> TeamHandle:
    """Registers every agent in unum order, then runs each loop on a thread.

    Registration is serial with a short stagger so the server assigns
    uniform numbers 1..n in order; a failed agent is recorded and skipped
    without stopping its siblings.
    """
    handle = TeamHandle(cfg.name)
    specs = [("player", u) for u in range(1, cfg.n_players + 1)]
    if cfg.coach:
        specs.append(("coach", 0))
    for agent_type, unum in specs:
        agent = Agent(cfg.agent_config(agent_type, unum))
        try:
            agent.connect()
        except ServerUnreachable as err:
            handle.errors.append(f"{cfg.name} {agent_type} {unum}: {err}")
            continue
        handle.agents.append(agent)
        time.sleep(REGISTRATION_STAGGER_S)

    def run_one(a: Agent) -> None:
        try:
            a.run()
        except ServerUnreachable as err:
            handle.errors.append(f"{cfg.name} {a.cfg.agent_type} {a.unum}: {err}")
        except Exception as err:  # keep siblings alive; surface in errors
            handle.errors.append(
                f"{cfg.name} {a.cfg.agent_type} {a.unum}: {err!r}"
            )

    for agent in handle.agents:
        thread = threading.Thread(
            target=run_one, args=(agent,), name=f"{cfg.name}-{agent.unum}", daemon=True
        )
        handle.threads.append(thread)
        thread.start()
    return handle


def run_team(cfg: TeamConfig) -> TeamHandle:
    handle = start_team(cfg)
    handle.join()
    return handle
