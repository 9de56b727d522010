"""Full-match orchestration: server, two teams, optional trainer, replay.

Everything runs inside one process. The simulation server owns its thread
and the replay file; each agent runs its own loop thread and talks to the
server over loopback UDP exactly as an external process would. Decision
services resolve per team: the in-process reference playmaker, a remote
gRPC endpoint, or none at all (pure fallback).
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..agent import Agent, AgentConfig, ServerUnreachable, TeamConfig, start_team
from ..rpc import SequencedService
from ..rpc.schema import get_schema
from ..sim import SimServer
from .builtin import BuiltinPlaymaker, ScriptTrainer, load_episode_script
from .config import MatchConfig, PLAYMAKER_BUILTIN, PLAYMAKER_NONE, TeamSpec
from .replay import OutOfOrderCycle, ReplayWriter

# Event kinds that signal a client broke the wire contract, as opposed to
# merely attempting something the rules forbid.
CADENCE_EVENT_KINDS = ("duplicate_command", "multiple_body_commands")
RULE_EVENT_KIND = "illegal_command"


class LaunchFailure(RuntimeError):
    def __init__(self, component: str, reason: str) -> None:
        super().__init__(f"{component}: {reason}")
        self.component = component
        self.reason = reason


@dataclass
class TeamReport:
    name: str
    side: str
    players: int
    agent_cycles: int = 0
    commands_sent: int = 0
    deadline_misses: int = 0
    playmaker_cycles: int = 0
    fallback_cycles: int = 0
    rpc_timeouts: int = 0
    rpc_channel_down: int = 0
    errors: List[str] = field(default_factory=list)

    @property
    def deadline_miss_rate(self) -> float:
        if self.agent_cycles == 0:
            return 0.0
        return self.deadline_misses / self.agent_cycles


@dataclass
class MatchResult:
    score_l: int
    score_r: int
    cycles: int
    replay_path: Optional[str]
    replay_records: int
    team_l: TeamReport
    team_r: TeamReport
    protocol_errors: int  # decode failures + command cadence violations
    rejected_commands: int  # rule-level rejections (recorded as events)
    goals_logged: int
    server_ticks: int
    ejections: int
    errors: List[str] = field(default_factory=list)
    rpc_call_logs: Dict[str, list] = field(default_factory=dict)

    @property
    def completed(self) -> bool:
        return not self.errors


class _SinkAdapter:
    """Counts events while forwarding records to the replay writer.

    A replay write error is latched instead of raised so it cannot take
    the simulation thread down mid-match; the match result reports it.
    """

    def __init__(self, writer: Optional[ReplayWriter]) -> None:
        self.writer = writer
        self.cadence = 0
        self.rejections = 0
        self.goals = 0
        self.records = 0
        self.error: Optional[str] = None

    def __call__(self, record: dict) -> None:
        self.records += 1
        for ev in record.get("events", ()):
            kind = ev.get("kind")
            if kind in CADENCE_EVENT_KINDS:
                self.cadence += 1
            elif kind == RULE_EVENT_KIND:
                self.rejections += 1
            elif kind == "goal":
                self.goals += 1
        if self.writer is not None:
            try:
                self.writer.append(record)
            except (OutOfOrderCycle, OSError, ValueError) as err:
                self.error = f"replay write failed: {err}"
                self.writer = None


def _resolve_playmaker(spec: TeamSpec, schema, log_calls: bool):
    """Returns (channel target for AgentConfig, service or None)."""
    if spec.playmaker == PLAYMAKER_BUILTIN:
        service = SequencedService(
            BuiltinPlaymaker(schema), schema, log_calls=log_calls
        )
        return service, service
    if spec.playmaker == PLAYMAKER_NONE:
        return None, None
    return spec.playmaker, None


def _team_report(name: str, side: str, handle) -> TeamReport:
    report = TeamReport(name=name, side=side, players=0)
    for agent in handle.agents:
        if agent.cfg.agent_type != "player":
            continue
        report.players += 1
        report.agent_cycles += agent.stats.cycles
        report.commands_sent += agent.stats.commands_sent
        report.deadline_misses += agent.stats.deadline_misses
        report.playmaker_cycles += agent.stats.playmaker_cycles
        report.fallback_cycles += agent.stats.fallback_cycles
        report.rpc_timeouts += agent.stats.rpc_timeouts
        report.rpc_channel_down += agent.stats.rpc_channel_down
    report.errors = list(handle.errors)
    return report


def run_match(cfg: MatchConfig, *, log_rpc_calls: bool = False) -> MatchResult:
    """Runs one match to completion and returns its result.

    Raises LaunchFailure when the server cannot bind or a component that
    must exist cannot start; once the match is underway, failures degrade
    into fallback play and surface in the result instead.
    """
    schema = get_schema()
    errors: List[str] = []

    script = None
    if cfg.episode_script is not None:
        try:
            script = load_episode_script(cfg.episode_script)
        except (OSError, ValueError) as err:
            raise LaunchFailure("episode_script", str(err))

    sim_cfg = cfg.sim_config()
    writer: Optional[ReplayWriter] = None
    if cfg.replay_path is not None:
        try:
            writer = ReplayWriter(cfg.replay_path, cfg.snapshot())
        except OSError as err:
            raise LaunchFailure("replay", str(err))
    sink = _SinkAdapter(writer)

    try:
        server = SimServer(
            sim_cfg,
            lockstep=cfg.pacing == "lockstep",
            tick_scale=cfg.tick_scale,
            barrier_cap=cfg.barrier_cap,
            replay_sink=sink,
            expected_players=cfg.left.players + cfg.right.players,
            host=cfg.host,
        )
    except OSError as err:
        if writer is not None:
            writer.close()
        raise LaunchFailure("server", str(err))

    server_thread = threading.Thread(target=server.serve, name="sim-server", daemon=True)

    left_channel, left_service = _resolve_playmaker(cfg.left, schema, log_rpc_calls)
    right_channel, right_service = _resolve_playmaker(cfg.right, schema, log_rpc_calls)

    trainer_agent: Optional[Agent] = None
    trainer_thread: Optional[threading.Thread] = None
    left = right = None
    try:
        server_thread.start()

        if script is not None:
            trainer_agent = Agent(
                AgentConfig(
                    team="",
                    agent_type="trainer",
                    host=cfg.host,
                    player_port=server.player_port,
                    trainer_port=server.trainer_port,
                    playmaker=SequencedService(
                        ScriptTrainer(script, schema), schema, log_calls=log_rpc_calls
                    ),
                    deadline_ms=cfg.deadline_ms,
                )
            )
            try:
                trainer_agent.connect()
            except ServerUnreachable as err:
                raise LaunchFailure("trainer", str(err))
            trainer_thread = threading.Thread(
                target=trainer_agent.run, name="trainer", daemon=True
            )
            trainer_thread.start()

        def team_cfg(spec: TeamSpec, channel) -> TeamConfig:
            return TeamConfig(
                name=spec.name,
                playmaker=channel,
                n_players=spec.players,
                coach=spec.coach,
                host=cfg.host,
                player_port=server.player_port,
                trainer_port=server.trainer_port,
                deadline_ms=cfg.deadline_ms,
            )

        # Left registers first and is assigned the left side.
        left = start_team(team_cfg(cfg.left, left_channel))
        right = start_team(team_cfg(cfg.right, right_channel))
        if not left.agents:
            raise LaunchFailure("team", f"{cfg.left.name}: no agent connected")
        if not right.agents:
            raise LaunchFailure("team", f"{cfg.right.name}: no agent connected")

        wall_deadline = time.monotonic() + cfg.max_wall_s
        while server_thread.is_alive():
            if time.monotonic() > wall_deadline:
                errors.append(f"wall budget {cfg.max_wall_s}s exceeded, stopping")
                server.request_stop()
                break
            server_thread.join(0.2)
        server_thread.join(10.0)
    finally:
        server.request_stop()
        for handle in (left, right):
            if handle is not None:
                handle.stop()
        if trainer_agent is not None:
            trainer_agent.stop()
        for handle in (left, right):
            if handle is not None:
                handle.join(5.0)
        if trainer_thread is not None:
            trainer_thread.join(5.0)
        if writer is not None:
            writer.close()
        server.close()

    if sink.error:
        errors.append(sink.error)
    world = server.world
    result = MatchResult(
        score_l=world.score_l,
        score_r=world.score_r,
        cycles=world.cycle,
        replay_path=cfg.replay_path,
        replay_records=sink.records if writer is None else writer.records,
        team_l=_team_report(cfg.left.name, "l", left),
        team_r=_team_report(cfg.right.name, "r", right),
        protocol_errors=server.stats.decode_errors + sink.cadence,
        rejected_commands=sink.rejections,
        goals_logged=sink.goals,
        server_ticks=server.stats.ticks,
        ejections=server.stats.ejections,
        errors=errors,
    )
    for spec, service in ((cfg.left, left_service), (cfg.right, right_service)):
        if service is not None and log_rpc_calls:
            result.rpc_call_logs[spec.name] = list(service.call_log)
    if trainer_agent is not None and log_rpc_calls:
        result.rpc_call_logs["trainer"] = list(trainer_agent.cfg.playmaker.call_log)
    return result
