"""UDP match server.

Single thread owns the world. Sockets are drained between ticks; commands
are queued and applied in one batch per cycle.

Two pacing modes:
  timed    -- a tick every cycle_ms * tick_scale of wall time, regardless of
              who has sent what;
  lockstep -- a tick fires as soon as every live player has sent a body
              command (or a short cap expires). Players silent for several
              consecutive ticks stop being waited for, so a dead client
              cannot stall the match. Lockstep plus local agents gives
              deterministic, faster-than-real-time matches.
"""

from __future__ import annotations

import socket
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from ..codec import (
    BODY_COMMANDS,
    Bye,
    ChangeMode,
    CodecError,
    Command,
    Dash,
    ErrorMsg,
    Hear,
    InitCmd,
    Init,
    Kick,
    Move,
    OkMsg,
    PlayerParamMsg,
    PlayerTypeMsg,
    Recover,
    Say,
    ServerParamMsg,
    TrainerMove,
    Turn,
    TurnNeck,
    decode_client_datagram,
    encode_server_message,
)
from ..modes import TIME_OVER
from .config import PlayerTypeInfo, SimConfig
from .events import SimEvent
from .observe import full_state_message, render_observation
from .physics import step_simulation
from .referee import referee_judge
from .world import AgentKey, SimWorld, add_player, new_world, world_snapshot

_PLAYER_CMDS = (Move, Dash, Turn, Kick, TurnNeck, Say)
_TRAINER_CMDS = (TrainerMove, ChangeMode, Recover)

ReplaySink = Callable[[dict], None]


@dataclass
class _Conn:
    kind: str  # "player" | "coach" | "trainer"
    side: Optional[str]
    unum: Optional[int]
    addr: Tuple[str, int]
    silent_ticks: int = 0
    ejected: bool = False
    sent_body: bool = False

    @property
    def key(self) -> AgentKey:
        return (self.side, self.unum)


@dataclass
class ServerStats:
    ticks: int = 0
    datagrams_in: int = 0
    decode_errors: int = 0
    ejections: int = 0


class SimServer:
    def __init__(
        self,
        config: SimConfig,
        *,
        lockstep: bool = False,
        tick_scale: float = 1.0,
        replay_sink: Optional[ReplaySink] = None,
        expected_players: int = 0,
        start_grace: float = 10.0,
        barrier_cap: float = 0.25,
        eject_after: int = 10,
        host: str = "127.0.0.1",
    ) -> None:
        self.cfg = config
        self.lockstep = lockstep
        self.tick_scale = tick_scale
        self.replay_sink = replay_sink
        self.expected_players = expected_players
        self.start_grace = start_grace
        self.barrier_cap = barrier_cap
        self.eject_after = eject_after
        self.world: SimWorld = new_world(config)
        self.stats = ServerStats()

        self._stop = threading.Event()
        self._conns: Dict[Tuple[str, int], _Conn] = {}
        self._player_conns: Dict[AgentKey, _Conn] = {}
        self._team_sides: Dict[str, str] = {}
        self._coach_sides: set = set()
        self._has_trainer = False
        self._arrival = 0
        self._tick_cmds: List[Tuple[int, object, Command]] = []
        self._pending_hears: List[Tuple[str, str]] = []  # delivered next tick

        self._player_sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        self._player_sock.bind((host, config.player_port))
        self._player_sock.setblocking(False)
        self._trainer_sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        self._trainer_sock.bind((host, config.trainer_port))
        self._trainer_sock.setblocking(False)
        self.player_port = self._player_sock.getsockname()[1]
        self.trainer_port = self._trainer_sock.getsockname()[1]

    # -- public control ----------------------------------------------------

    def request_stop(self) -> None:
        self._stop.set()

    def close(self) -> None:
        self._player_sock.close()
        self._trainer_sock.close()

    def serve(self) -> SimWorld:
        try:
            self._await_lineup()
            # Kick off the observation-command cadence: agents act on what
            # they see, so the cycle-0 state goes out before the first tick
            # waits on the command barrier.
            self._send_observations([])
            while not self._stop.is_set():
                self._run_tick()
                if self.world.play_mode == TIME_OVER:
                    break
            return self.world
        finally:
            self.close()

    # -- socket handling ---------------------------------------------------

    def _drain(self) -> None:
        for sock, port_kind in ((self._player_sock, "player"), (self._trainer_sock, "trainer")):
            while True:
                try:
                    data, addr = sock.recvfrom(16384)
                except BlockingIOError:
                    break
                except OSError:
                    break
                self.stats.datagrams_in += 1
                self._dispatch(sock, addr, data, port_kind)

    def _wait_readable(self, timeout: float) -> None:
        import select

        try:
            select.select([self._player_sock, self._trainer_sock], [], [], max(0.0, timeout))
        except OSError:
            pass

    def _reply(self, sock: socket.socket, addr, msg) -> None:
        try:
            sock.sendto(encode_server_message(msg).encode("ascii") + b"\x00", addr)
        except OSError:
            pass

    def _dispatch(self, sock, addr, data: bytes, port_kind: str) -> None:
        try:
            cmd = decode_client_datagram(data)
        except CodecError:
            self.stats.decode_errors += 1
            self._reply(sock, addr, ErrorMsg("illegal_command_form"))
            return
        conn = self._conns.get(addr)
        if isinstance(cmd, InitCmd):
            self._handle_init(sock, addr, cmd, port_kind)
            return
        if conn is None:
            self._reply(sock, addr, ErrorMsg("not_registered"))
            return
        if isinstance(cmd, Bye):
            self._remove_conn(conn)
            return
        self._enqueue(sock, conn, cmd)

    def _remove_conn(self, conn: _Conn) -> None:
        self._conns.pop(conn.addr, None)
        if conn.kind == "player":
            self._player_conns.pop(conn.key, None)
        elif conn.kind == "trainer":
            self._has_trainer = False
        elif conn.kind == "coach":
            self._coach_sides.discard(conn.side)

    def _side_for_team(self, team: str) -> Optional[str]:
        side = self._team_sides.get(team)
        if side is not None:
            return side
        if len(self._team_sides) >= 2:
            return None
        side = "l" if not self._team_sides else "r"
        self._team_sides[team] = side
        return side

    def _handle_init(self, sock, addr, cmd: InitCmd, port_kind: str) -> None:
        if port_kind == "trainer":
            if cmd.team is not None or cmd.coach:
                self._reply(sock, addr, ErrorMsg("illegal_command_form"))
                return
            existing = self._conns.get(addr)
            if existing is None:
                if self._has_trainer:
                    self._reply(sock, addr, ErrorMsg("no_more_trainer"))
                    return
                self._conns[addr] = _Conn("trainer", None, None, addr)
                self._has_trainer = True
            self._reply(sock, addr, OkMsg("init"))
            self._send_params(sock, addr)
            return

        if cmd.team is None:
            self._reply(sock, addr, ErrorMsg("illegal_command_form"))
            return
        existing = self._conns.get(addr)
        if existing is not None:
            # Idempotent re-init from the same endpoint.
            self._reply(sock, addr, Init(existing.side, existing.unum or 0, self.world.play_mode))
            return
        side = self._side_for_team(cmd.team)
        if side is None:
            self._reply(sock, addr, ErrorMsg("no_more_team_or_player"))
            return
        if cmd.coach:
            if side in self._coach_sides:
                self._reply(sock, addr, ErrorMsg("no_more_coach"))
                return
            self._coach_sides.add(side)
            self._conns[addr] = _Conn("coach", side, 0, addr)
            self._reply(sock, addr, Init(side, 0, self.world.play_mode))
            self._send_params(sock, addr)
            return
        unum = 1 + sum(1 for k in self._player_conns if k[0] == side)
        if unum > 11:
            self._reply(sock, addr, ErrorMsg("no_more_team_or_player"))
            return
        conn = _Conn("player", side, unum, addr)
        self._conns[addr] = conn
        self._player_conns[conn.key] = conn
        add_player(self.cfg, self.world, side, unum)
        self._reply(sock, addr, Init(side, unum, self.world.play_mode))
        self._send_params(sock, addr)

    def _send_params(self, sock, addr) -> None:
        ptype = PlayerTypeInfo()
        self._reply(sock, addr, ServerParamMsg(self.cfg.numeric_params()))
        self._reply(sock, addr, PlayerParamMsg((("player_types", float(ptype.player_types)),)))
        self._reply(sock, addr, PlayerTypeMsg(ptype.type_id, ptype.param_pairs(self.cfg)))

    def _enqueue(self, sock, conn: _Conn, cmd: Command) -> None:
        if conn.kind == "player":
            if not isinstance(cmd, _PLAYER_CMDS):
                self._reply(sock, conn.addr, ErrorMsg("illegal_command"))
                return
            who: object = conn.key
            if isinstance(cmd, BODY_COMMANDS):
                conn.sent_body = True
                if conn.ejected:
                    conn.ejected = False
                    conn.silent_ticks = 0
        elif conn.kind == "coach":
            if not isinstance(cmd, Say):
                self._reply(sock, conn.addr, ErrorMsg("illegal_command"))
                return
            who = ("coach", conn.side)
        else:
            if not isinstance(cmd, _TRAINER_CMDS):
                self._reply(sock, conn.addr, ErrorMsg("illegal_command"))
                return
            who = "trainer"
        self._arrival += 1
        self._tick_cmds.append((self._arrival, who, cmd))

    # -- tick machinery ----------------------------------------------------

    def _await_lineup(self) -> None:
        deadline = time.monotonic() + self.start_grace
        while (
            not self._stop.is_set()
            and self.expected_players > 0
            and len(self._player_conns) < self.expected_players
            and time.monotonic() < deadline
        ):
            self._drain()
            self._wait_readable(0.005)

    def _barrier_met(self) -> bool:
        return all(
            c.sent_body for c in self._player_conns.values() if not c.ejected
        )

    def _run_tick(self) -> None:
        tick_start = time.monotonic()
        if self.lockstep:
            deadline = tick_start + self.barrier_cap
        else:
            deadline = tick_start + (self.cfg.cycle_ms / 1000.0) * self.tick_scale
        while True:
            self._drain()
            if self._stop.is_set():
                return
            if self.lockstep and self._barrier_met():
                break
            now = time.monotonic()
            if now >= deadline:
                break
            self._wait_readable(min(deadline - now, 0.002))

        ordered = self._ordered_commands()
        events = step_simulation(self.cfg, self.world, ordered)
        events.extend(referee_judge(self.cfg, self.world))
        self.stats.ticks += 1

        if self.replay_sink is not None:
            self.replay_sink(
                {
                    "cycle": self.world.cycle,
                    "world": world_snapshot(self.world),
                    "events": [e.as_dict() for e in events],
                }
            )

        hears = self._collect_hears(events)
        self._update_liveness()
        self._send_observations(hears)

    def _ordered_commands(self):
        trainer = [(a, w, c) for (a, w, c) in self._tick_cmds if w == "trainer"]
        rest = [(a, w, c) for (a, w, c) in self._tick_cmds if w != "trainer"]
        trainer.sort(key=lambda t: t[0])
        rest.sort(key=lambda t: (t[1], t[0]))
        self._tick_cmds = []
        return [(w, c) for (_, w, c) in trainer + rest]

    def _collect_hears(self, events: List[SimEvent]) -> List[Hear]:
        """Referee announcements are heard this cycle, chatter next cycle."""
        hears = [
            Hear(self.world.cycle, sender, text) for sender, text in self._pending_hears
        ]
        self._pending_hears = []
        for ev in events:
            if ev.kind == "mode_change":
                wire = ev.detail.split(" (", 1)[0]
                hears.append(Hear(self.world.cycle, "referee", wire))
            elif ev.kind == "say":
                sender, _, text = ev.detail.partition(": ")
                self._pending_hears.append((sender, text))
        return hears

    def _update_liveness(self) -> None:
        if not self.lockstep:
            return
        for conn in self._player_conns.values():
            if conn.ejected:
                conn.sent_body = False
                continue
            if conn.sent_body:
                conn.silent_ticks = 0
            else:
                conn.silent_ticks += 1
                if conn.silent_ticks >= self.eject_after:
                    conn.ejected = True
                    self.stats.ejections += 1
            conn.sent_body = False

    def _send_observations(self, hears: List[Hear]) -> None:
        full_wire = encode_server_message(full_state_message(self.world)).encode("ascii") + b"\x00"
        hear_wires = [
            encode_server_message(h).encode("ascii") + b"\x00" for h in hears
        ]
        for addr in sorted(self._conns):
            conn = self._conns[addr]
            sock = self._trainer_sock if conn.kind == "trainer" else self._player_sock
            try:
                if conn.kind == "player":
                    if self.cfg.observation_mode == "fullstate":
                        sock.sendto(full_wire, addr)
                    else:
                        for msg in render_observation(self.cfg, self.world, conn.key, "see"):
                            sock.sendto(
                                encode_server_message(msg).encode("ascii") + b"\x00", addr
                            )
                    for hw in hear_wires:
                        sock.sendto(hw, addr)
                else:
                    sock.sendto(full_wire, addr)
                    for hw in hear_wires:
                        sock.sendto(hw, addr)
            except OSError:
                pass


def run_server(config: SimConfig, **kw) -> SimWorld:
    """Convenience wrapper: construct, serve to completion, return final world."""
    return SimServer(config, **kw).serve()
