"""Command line front end.

Subcommands:
  run-match        full match: server + both teams (+ trainer script)
  run-server       just the simulation server
  run-team         one team of agents against an existing server
  validate-replay  structural check of a replay file

Exit codes: 0 success; 2 when a component failed to launch or the run did
not complete; 3 when the run completed but the protocol-error budget was
exceeded, or a replay failed validation.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields
from typing import List, Optional

from ..agent import TeamConfig, run_team
from ..rpc import SequencedService
from ..rpc.schema import get_schema
from ..sim import SimConfig, SimServer
from .builtin import BuiltinPlaymaker
from .config import (
    MatchConfig,
    PLAYMAKER_BUILTIN,
    PLAYMAKER_NONE,
    TeamSpec,
    load_match_config,
)
from .orchestrate import LaunchFailure, run_match
from .replay import ReplayWriter, validate_replay

EXIT_OK = 0
EXIT_LAUNCH = 2
EXIT_PROTOCOL = 3

_SIM_FIELD_TYPES = {f.name: f.type for f in fields(SimConfig)}


def _parse_sim_overrides(pairs: List[str]) -> dict:
    out = {}
    for pair in pairs:
        name, sep, raw = pair.partition("=")
        if not sep:
            raise ValueError(f"--sim expects KEY=VALUE, got {pair!r}")
        if name not in _SIM_FIELD_TYPES:
            raise ValueError(f"unknown simulation parameter {name!r}")
        ftype = _SIM_FIELD_TYPES[name]
        if ftype in ("int", int):
            out[name] = int(raw)
        elif ftype in ("float", float):
            out[name] = float(raw)
        else:
            out[name] = raw
    return out


def _add_match_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="YAML match configuration file")
    p.add_argument("--seed", type=int, help="simulation seed (default 1)")
    p.add_argument("--replay", help="replay output path (default replay.jsonl)")
    p.add_argument(
        "--no-replay", action="store_true", help="do not write a replay file"
    )
    p.add_argument("--observation-mode", choices=("see", "fullstate"))
    p.add_argument(
        "--pacing",
        choices=("lockstep", "timed"),
        help="lockstep ticks as soon as all commands arrive; timed follows the clock",
    )
    p.add_argument(
        "--tick-scale",
        type=float,
        help="timed pacing: wall-time fraction per cycle (0.1 = 10x speed)",
    )
    p.add_argument("--barrier-cap", type=float, help="lockstep straggler wait, seconds")
    p.add_argument("--deadline-ms", type=float, help="per-call decision deadline")
    p.add_argument("--episode-script", help="JSON trainer script path")
    p.add_argument("--max-wall-s", type=float, help="abort the match after this long")
    p.add_argument("--host", help="bind/connect address (default 127.0.0.1)")
    p.add_argument("--player-port", type=int, help="UDP player port (0 = any free)")
    p.add_argument("--trainer-port", type=int, help="UDP trainer port (0 = any free)")
    p.add_argument(
        "--sim",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override any simulation parameter, e.g. --sim half_cycles=100",
    )
    for side in ("left", "right"):
        p.add_argument(f"--{side}-name", help=f"{side} team name")
        p.add_argument(
            f"--{side}-playmaker",
            help=f"{side} decision service: builtin, none, or host:port",
        )
        p.add_argument(f"--{side}-players", type=int, help=f"{side} player count")
        p.add_argument(
            f"--{side}-coach", action="store_true", help=f"add a {side} coach"
        )
    p.add_argument(
        "--max-protocol-errors",
        type=int,
        default=0,
        help="tolerated decode/cadence violations before exit code 3 (default 0)",
    )


def _merge_team(spec: TeamSpec, args, side: str) -> TeamSpec:
    kw = {}
    name = getattr(args, f"{side}_name")
    playmaker = getattr(args, f"{side}_playmaker")
    players = getattr(args, f"{side}_players")
    coach = getattr(args, f"{side}_coach")
    if name is not None:
        kw["name"] = name
    if playmaker is not None:
        kw["playmaker"] = playmaker
    if players is not None:
        kw["players"] = players
    if coach:
        kw["coach"] = True
    if not kw:
        return spec
    base = {
        "name": spec.name,
        "playmaker": spec.playmaker,
        "players": spec.players,
        "coach": spec.coach,
    }
    base.update(kw)
    return TeamSpec(**base)


def _build_match_config(args) -> MatchConfig:
    cfg = load_match_config(args.config) if args.config else MatchConfig()
    kw = {}
    for flag, attr in (
        ("seed", "seed"),
        ("observation_mode", "observation_mode"),
        ("pacing", "pacing"),
        ("tick_scale", "tick_scale"),
        ("barrier_cap", "barrier_cap"),
        ("deadline_ms", "deadline_ms"),
        ("episode_script", "episode_script"),
        ("max_wall_s", "max_wall_s"),
        ("host", "host"),
        ("player_port", "player_port"),
        ("trainer_port", "trainer_port"),
    ):
        value = getattr(args, flag)
        if value is not None:
            kw[attr] = value
    if args.replay is not None:
        kw["replay_path"] = args.replay
    if args.no_replay:
        kw["replay_path"] = None
    sim = dict(cfg.sim)
    sim.update(_parse_sim_overrides(args.sim))
    return MatchConfig(
        left=_merge_team(cfg.left, args, "left"),
        right=_merge_team(cfg.right, args, "right"),
        seed=kw.get("seed", cfg.seed),
        replay_path=kw.get("replay_path", cfg.replay_path),
        observation_mode=kw.get("observation_mode", cfg.observation_mode),
        pacing=kw.get("pacing", cfg.pacing),
        tick_scale=kw.get("tick_scale", cfg.tick_scale),
        barrier_cap=kw.get("barrier_cap", cfg.barrier_cap),
        deadline_ms=kw.get("deadline_ms", cfg.deadline_ms),
        episode_script=kw.get("episode_script", cfg.episode_script),
        max_wall_s=kw.get("max_wall_s", cfg.max_wall_s),
        host=kw.get("host", cfg.host),
        player_port=kw.get("player_port", cfg.player_port),
        trainer_port=kw.get("trainer_port", cfg.trainer_port),
        sim=sim,
    )


def _cmd_run_match(args) -> int:
    try:
        cfg = _build_match_config(args)
    except (OSError, ValueError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_LAUNCH
    try:
        result = run_match(cfg)
    except LaunchFailure as err:
        print(f"launch failure: {err}", file=sys.stderr)
        return EXIT_LAUNCH

    print(f"score {cfg.left.name} {result.score_l} - {result.score_r} {cfg.right.name}")
    print(f"cycles {result.cycles}")
    if result.replay_path:
        print(f"replay {result.replay_path} ({result.replay_records} records)")
    for report in (result.team_l, result.team_r):
        print(
            f"team {report.name}: deadline-miss {100 * report.deadline_miss_rate:.2f}%"
            f" playmaker {report.playmaker_cycles} fallback {report.fallback_cycles}"
        )
        for err in report.errors:
            print(f"  agent error: {err}")
    print(
        f"protocol errors {result.protocol_errors}"
        f" (budget {args.max_protocol_errors}),"
        f" rejected commands {result.rejected_commands}"
    )
    for err in result.errors:
        print(f"error: {err}", file=sys.stderr)
    if result.errors:
        return EXIT_LAUNCH
    if result.protocol_errors > args.max_protocol_errors:
        return EXIT_PROTOCOL
    return EXIT_OK


def _cmd_run_server(args) -> int:
    try:
        sim_kw = _parse_sim_overrides(args.sim)
    except ValueError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_LAUNCH
    sim_kw.setdefault("player_port", args.player_port)
    sim_kw.setdefault("trainer_port", args.trainer_port)
    sim_kw.setdefault("observation_mode", args.observation_mode)
    sim_kw.setdefault("seed", args.seed)
    writer: Optional[ReplayWriter] = None
    try:
        cfg = SimConfig(**sim_kw)
        if args.replay:
            writer = ReplayWriter(args.replay, {"sim": sim_kw})
        server = SimServer(
            cfg,
            lockstep=args.pacing == "lockstep",
            tick_scale=args.tick_scale,
            barrier_cap=args.barrier_cap,
            replay_sink=None if writer is None else writer.append,
            expected_players=args.expected_players,
            host=args.host,
        )
    except (OSError, ValueError) as err:
        print(f"launch failure: {err}", file=sys.stderr)
        if writer is not None:
            writer.close()
        return EXIT_LAUNCH
    print(
        f"serving on {args.host} player={server.player_port}"
        f" trainer={server.trainer_port}",
        flush=True,
    )
    try:
        world = server.serve()
    except KeyboardInterrupt:
        server.request_stop()
        server.close()
        return EXIT_OK
    finally:
        if writer is not None:
            writer.close()
    print(f"final score {world.score_l}-{world.score_r} at cycle {world.cycle}")
    return EXIT_OK


def _cmd_run_team(args) -> int:
    playmaker = args.playmaker
    if playmaker == PLAYMAKER_BUILTIN:
        playmaker = SequencedService(BuiltinPlaymaker(), get_schema())
    elif playmaker == PLAYMAKER_NONE:
        playmaker = None
    handle = run_team(
        TeamConfig(
            name=args.name,
            playmaker=playmaker,
            n_players=args.players,
            coach=args.coach,
            host=args.host,
            player_port=args.player_port,
            trainer_port=args.trainer_port,
            deadline_ms=args.deadline_ms,
            max_cycles=args.max_cycles,
        )
    )
    for err in handle.errors:
        print(f"agent error: {err}", file=sys.stderr)
    if not handle.agents:
        print("launch failure: no agent connected", file=sys.stderr)
        return EXIT_LAUNCH
    total = sum(a.stats.cycles for a in handle.agents)
    print(f"team {args.name}: {len(handle.agents)} agents, {total} agent-cycles")
    return EXIT_OK


def _cmd_validate_replay(args) -> int:
    problems = validate_replay(args.path, expect_time_over=not args.allow_unfinished)
    if not problems:
        print(f"{args.path}: valid")
        return EXIT_OK
    for problem in problems:
        print(f"{args.path}: {problem}", file=sys.stderr)
    if any(p.startswith("unreadable") for p in problems):
        return EXIT_LAUNCH
    return EXIT_PROTOCOL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minisoccer",
        description="Desk-scale 2D soccer: matches, server, teams, replays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run-match", help="run a full match in one process")
    _add_match_flags(p)
    p.set_defaults(func=_cmd_run_match)

    p = sub.add_parser("run-server", help="run only the simulation server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--player-port", type=int, default=6000)
    p.add_argument("--trainer-port", type=int, default=6001)
    p.add_argument("--observation-mode", choices=("see", "fullstate"), default="see")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--pacing", choices=("lockstep", "timed"), default="timed")
    p.add_argument("--tick-scale", type=float, default=1.0)
    p.add_argument("--barrier-cap", type=float, default=0.25)
    p.add_argument(
        "--expected-players",
        type=int,
        default=0,
        help="wait for this many players before kicking off",
    )
    p.add_argument("--replay", help="write a replay to this path")
    p.add_argument("--sim", action="append", default=[], metavar="KEY=VALUE")
    p.set_defaults(func=_cmd_run_server)

    p = sub.add_parser("run-team", help="run one team against a server")
    p.add_argument("--name", default="home")
    p.add_argument(
        "--playmaker",
        default=PLAYMAKER_BUILTIN,
        help="builtin, none, or a host:port gRPC endpoint",
    )
    p.add_argument("--players", type=int, default=11)
    p.add_argument("--coach", action="store_true")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--player-port", type=int, default=6000)
    p.add_argument("--trainer-port", type=int, default=6001)
    p.add_argument("--deadline-ms", type=float, default=70.0)
    p.add_argument("--max-cycles", type=int, default=None)
    p.set_defaults(func=_cmd_run_team)

    p = sub.add_parser("validate-replay", help="check a replay file")
    p.add_argument("path")
    p.add_argument(
        "--allow-unfinished",
        action="store_true",
        help="do not require the final record to be in time_over",
    )
    p.set_defaults(func=_cmd_validate_replay)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
