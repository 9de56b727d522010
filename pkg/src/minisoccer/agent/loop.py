"""The per-agent loop: socket in, world model, playmaker query, command out.

Each agent owns one UDP socket and one playmaker channel and is fully
isolated from its teammates. The loop is observation-driven: the server
sends the state of each cycle, the agent integrates it, asks the playmaker
(with a hard deadline), compiles the reply, and answers with exactly one
body command before the next tick closes.
"""

from __future__ import annotations

import select
import socket
import time
from dataclasses import dataclass, field
from typing import List, Optional

from ..codec import (
    Bye,
    ChangeMode,
    Command,
    Dash,
    FullState,
    Hear,
    Init,
    InitCmd,
    Kick,
    Move,
    OkMsg,
    PlayerParamMsg,
    PlayerTypeMsg,
    Say,
    See,
    SenseBody,
    ServerParamMsg,
    ErrorMsg,
    TrainerMove,
    Turn,
    TurnNeck,
    CodecError,
    Recover as RecoverCmd,
    decode_server_datagram,
    encode_client_command,
)
from ..formation import formation_point
from ..geometry import Vec2
from ..modes import TIME_OVER
from ..rpc import (
    GrpcPlaymakerChannel,
    InProcessPlaymakerChannel,
    MISSING_PREREQUISITE,
    compute_register_id,
    marshal_init,
    marshal_player_params,
    marshal_player_type,
    marshal_server_params,
    marshal_state,
    unmarshal_coach_actions,
    unmarshal_player_actions,
    unmarshal_trainer_actions,
)
from ..rpc import actions as act
from ..wm import WmParams, WorldState, build_intercept_table, integrate_observation
from .compile import compile_action
from .config import AgentConfig
from .fallback import fallback_body

REGISTRATION_DEADLINE_MS = 500.0

SOURCE_PLAYMAKER = "playmaker"
SOURCE_FALLBACK = "fallback"
SOURCE_AUTO_MOVE = "auto_move"


class ServerUnreachable(RuntimeError):
    pass


@dataclass
class AgentStats:
    cycles: int = 0
    commands_sent: int = 0
    playmaker_cycles: int = 0
    fallback_cycles: int = 0
    auto_moves: int = 0
    rpc_timeouts: int = 0
    rpc_channel_down: int = 0
    deadline_soft_misses: int = 0
    registration_attempts: int = 0
    send_errors: int = 0

    @property
    def deadline_misses(self) -> int:
        return self.rpc_timeouts + self.deadline_soft_misses


@dataclass
class CycleLog:
    cycle: int
    rpc_latency_ms: float
    action_source: str
    command: str


@dataclass
class _Registration:
    side: Optional[str]
    unum: int
    server_params: ServerParamMsg
    player_params: PlayerParamMsg
    player_types: List[PlayerTypeMsg] = field(default_factory=list)


class Agent:
    def __init__(self, cfg: AgentConfig) -> None:
        self.cfg = cfg
        self.channel = self._make_channel(cfg)
        self.sock: Optional[socket.socket] = None
        self.side: Optional[str] = None
        self.unum: int = 0
        self.register_id: int = 0
        self.ws: Optional[WorldState] = None
        self.stats = AgentStats()
        self.cycle_log: List[CycleLog] = []
        self._registration: Optional[_Registration] = None
        self._rpc_ready = False
        self._fullstate_mode = False
        self._prev_mode = None
        self._auto_move_pending = False
        self._last_acted = -1
        self._stopped = False

    @staticmethod
    def _make_channel(cfg: AgentConfig):
        if cfg.playmaker is None:
            return None
        if isinstance(cfg.playmaker, str):
            return GrpcPlaymakerChannel(cfg.playmaker, deadline_ms=cfg.deadline_ms)
        # In-process services run inline: scheduling jitter must not turn
        # into spurious timeouts, or identical runs could diverge. Slow
        # replies still count as deadline misses via elapsed time.
        return InProcessPlaymakerChannel(
            cfg.playmaker, deadline_ms=cfg.deadline_ms, synchronous=True
        )

    # -- registration ------------------------------------------------------

    def _send_cmd(self, cmd: Command) -> None:
        wire = encode_client_command(cmd).encode("ascii") + b"\x00"
        try:
            self.sock.send(wire)
        except OSError:
            # Liveness is judged on the receive side; a failed send (the
            # usual cause is the server port closing) must not kill the
            # loop on its own.
            self.stats.send_errors += 1
            return
        self.stats.commands_sent += 1

    def _recv_msg(self, timeout: float):
        self.sock.settimeout(timeout)
        try:
            data = self.sock.recv(16384)
        except socket.timeout:
            return None
        except ConnectionRefusedError:
            raise ServerUnreachable("server port closed")
        return decode_server_datagram(data)

    def connect(self) -> None:
        cfg = self.cfg
        port = cfg.trainer_port if cfg.agent_type == "trainer" else cfg.player_port
        self.sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        self.sock.connect((cfg.host, port))
        if cfg.agent_type == "trainer":
            init = InitCmd(team=None)
        else:
            init = InitCmd(
                team=cfg.team,
                version=int(cfg.version),
                goalie=cfg.goalie,
                coach=cfg.agent_type == "coach",
            )
        self._send_cmd(init)
        self.stats.commands_sent -= 1  # handshake, not a game command

        reg = _Registration(None, 0, ServerParamMsg(), PlayerParamMsg())
        got_init = False
        got = {"server": False, "player": False, "type": False}
        deadline = time.monotonic() + cfg.recv_timeout_s
        while not (got_init and all(got.values())):
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise ServerUnreachable(
                    f"no registration reply from {cfg.host}:{port}"
                )
            try:
                msg = self._recv_msg(min(remaining, 1.0))
            except CodecError as err:
                raise ServerUnreachable(f"bad registration reply: {err}")
            if msg is None:
                continue
            if isinstance(msg, ErrorMsg):
                raise ServerUnreachable(f"server refused init: {msg.text}")
            if isinstance(msg, Init):
                reg.side, reg.unum = msg.side, msg.unum
                got_init = True
            elif isinstance(msg, OkMsg) and msg.text == "init":
                got_init = True
            elif isinstance(msg, ServerParamMsg):
                reg.server_params = msg
                got["server"] = True
            elif isinstance(msg, PlayerParamMsg):
                reg.player_params = msg
                got["player"] = True
            elif isinstance(msg, PlayerTypeMsg):
                reg.player_types.append(msg)
                got["type"] = True

        self._registration = reg
        self.side = reg.side
        self.unum = reg.unum
        self.register_id = compute_register_id(
            self.cfg.agent_type, self.side or "l", self.unum
        )
        params = WmParams.from_server_params(reg.server_params.as_dict())
        self.ws = WorldState(
            params=params,
            our_side=self.side or "l",
            our_team=cfg.team or "",
            self_unum=self.unum,
        )
        self._register_rpc()

    def _register_rpc(self) -> bool:
        if self.channel is None:
            return False
        self.stats.registration_attempts += 1
        reg = self._registration
        calls = [
            (
                "SendInitMessage",
                marshal_init(
                    register_id=self.register_id,
                    agent_type=self.cfg.agent_type,
                    team_name=self.cfg.team or "",
                    unum=self.unum,
                    version=self.cfg.version,
                ),
            ),
            (
                "SendServerParams",
                marshal_server_params(self.register_id, reg.server_params.params),
            ),
            (
                "SendPlayerParams",
                marshal_player_params(self.register_id, reg.player_params.params),
            ),
        ]
        for pt in reg.player_types or [PlayerTypeMsg(0)]:
            calls.append(
                (
                    "SendPlayerType",
                    marshal_player_type(self.register_id, pt.type_id, pt.params),
                )
            )
        for method, msg in calls:
            outcome = self.channel.call_with_deadline(
                method, msg, REGISTRATION_DEADLINE_MS
            )
            if not outcome.ok:
                self._rpc_ready = False
                return False
        self._rpc_ready = True
        return True

    # -- main loop ---------------------------------------------------------

    def run(self):
        if self.sock is None:
            self.connect()
        try:
            while not self._stopped:
                if not self._pump():
                    break
                if self.ws.play_mode == TIME_OVER:
                    break
                if (
                    self.cfg.max_cycles is not None
                    and self.ws.cycle >= self.cfg.max_cycles
                ):
                    break
        finally:
            self._shutdown()
        return self.stats

    def stop(self) -> None:
        self._stopped = True

    def _pump(self) -> bool:
        """Receive one batch of observations and act once. False on silence."""
        try:
            msg = self._recv_msg(self.cfg.recv_timeout_s)
        except CodecError:
            return True
        if msg is None:
            raise ServerUnreachable("server went silent")
        self._integrate(msg)
        # Collect the rest of this cycle's burst; the server sends all of a
        # tick's datagrams back to back, so a short grace poll suffices.
        while True:
            readable, _, _ = select.select([self.sock], [], [], 0.002)
            if not readable:
                break
            try:
                extra = self._recv_msg(0.01)
            except CodecError:
                continue
            if extra is None:
                break
            self._integrate(extra)
        if self.ws.play_mode == TIME_OVER:
            return True  # game over; run() exits, nothing left to answer
        if self.ws.cycle > self._last_acted or (
            self._last_acted < 0 and self.ws.cycle == 0
        ):
            self._act()
            self._last_acted = self.ws.cycle
        return True

    def _integrate(self, msg) -> None:
        if isinstance(msg, FullState):
            self._fullstate_mode = True
        if isinstance(msg, (See, SenseBody, FullState, Hear)):
            integrate_observation(self.ws, msg)

    # -- acting ------------------------------------------------------------

    def _act(self) -> None:
        ws = self.ws
        self.stats.cycles += 1
        if self.cfg.agent_type == "player" and ws.play_mode != self._prev_mode:
            if ws.play_mode.kind in ("before_kick_off", "kick_off"):
                self._auto_move_pending = True
        self._prev_mode = ws.play_mode

        table = build_intercept_table(ws)
        state = marshal_state(
            ws,
            table,
            agent_type=self.cfg.agent_type,
            register_id=self.register_id,
            need_preprocess=self._auto_move_pending,
            full_ws=ws if self._fullstate_mode else None,
        )

        outcome = None
        if self.channel is not None:
            if not self._rpc_ready:
                self._register_rpc()
            if self._rpc_ready:
                method = {
                    "player": "GetPlayerActions",
                    "coach": "GetCoachActions",
                    "trainer": "GetTrainerActions",
                }[self.cfg.agent_type]
                outcome = self.channel.call_with_deadline(method, state)
                if outcome.status == MISSING_PREREQUISITE:
                    self._rpc_ready = False
                elif outcome.status == "timeout":
                    self.stats.rpc_timeouts += 1
                elif outcome.status == "channel_down":
                    self.stats.rpc_channel_down += 1
                elif outcome.ok and outcome.elapsed_ms > self.cfg.deadline_ms:
                    self.stats.deadline_soft_misses += 1

        if self.cfg.agent_type == "player":
            self._act_player(table, outcome)
        elif self.cfg.agent_type == "coach":
            self._act_coach(outcome)
        else:
            self._act_trainer(outcome)

    def _act_player(self, table, outcome) -> None:
        ws = self.ws
        body: Optional[act.PlayerActionT] = None
        neck: Optional[act.TurnNeckAction] = None
        say: Optional[act.SayAction] = None
        source = SOURCE_FALLBACK
        if outcome is not None and outcome.ok:
            for action in unmarshal_player_actions(outcome.reply):
                compiled = compile_action(ws, table, action)
                if compiled is None:
                    continue
                if isinstance(compiled, act.TurnNeckAction):
                    if neck is None:
                        neck = compiled
                elif isinstance(compiled, act.SayAction):
                    if say is None:
                        say = compiled
                elif body is None:
                    body = compiled
            if body is not None:
                source = SOURCE_PLAYMAKER
        if body is None:
            body = fallback_body(ws, table)
            self.stats.fallback_cycles += 1
        else:
            self.stats.playmaker_cycles += 1

        if self._auto_move_pending:
            if ws.play_mode.kind in ("before_kick_off", "kick_off"):
                spot = formation_point(self.unum)
                body = act.MoveAction(spot.x, spot.y)
                source = SOURCE_AUTO_MOVE
                self.stats.auto_moves += 1
            self._auto_move_pending = False

        # Body goes out last: the server's lockstep barrier fires on the
        # body command, so anything sent after it could slide into the
        # next tick and double up there.
        if neck is not None:
            self._send_cmd(TurnNeck(neck.moment))
        if say is not None:
            self._send_cmd(Say(say.text))
        cmd = self._to_command(body)
        self._send_cmd(cmd)
        self.cycle_log.append(
            CycleLog(
                ws.cycle,
                0.0 if outcome is None else outcome.elapsed_ms,
                source,
                encode_client_command(cmd),
            )
        )

    def _act_coach(self, outcome) -> None:
        if outcome is None or not outcome.ok:
            return
        for action in unmarshal_coach_actions(outcome.reply):
            if isinstance(action, act.SayAction):
                self._send_cmd(Say(action.text))
                break

    def _act_trainer(self, outcome) -> None:
        if outcome is None or not outcome.ok:
            return
        for action in unmarshal_trainer_actions(outcome.reply):
            if isinstance(action, act.MoveBallAction):
                self._send_cmd(
                    TrainerMove(
                        ("ball",),
                        action.pos.x,
                        action.pos.y,
                        action.vel.x,
                        action.vel.y,
                    )
                )
            elif isinstance(action, act.MovePlayerAction):
                self._send_cmd(
                    TrainerMove(
                        ("player", action.side, action.unum),
                        action.pos.x,
                        action.pos.y,
                        dir=action.body_dir,
                    )
                )
            elif isinstance(action, act.ChangeModeAction):
                self._send_cmd(ChangeMode(action.mode))
            elif isinstance(action, act.RecoverAction):
                self._send_cmd(RecoverCmd())

    def _denorm(self, x: float, y: float) -> Vec2:
        if self.side == "r":
            return Vec2(-x, -y)
        return Vec2(x, y)

    def _to_command(self, body: act.PlayerActionT) -> Command:
        if isinstance(body, act.DashAction):
            power = max(-100.0, min(100.0, body.power))
            return Dash(power, body.dir)
        if isinstance(body, act.TurnAction):
            return Turn(body.moment)
        if isinstance(body, act.KickAction):
            power = max(-100.0, min(100.0, body.power))
            return Kick(power, body.dir)
        if isinstance(body, act.MoveAction):
            spot = self._denorm(body.x, body.y)
            return Move(spot.x, spot.y)
        raise TypeError(f"not a body primitive: {body!r}")

    def _shutdown(self) -> None:
        if self.sock is not None:
            try:
                self._send_cmd(Bye())
            except OSError:
                pass
            self.sock.close()
            self.sock = None
        if self.channel is not None:
            self.channel.close()
            self.channel = None


def run_agent(cfg: AgentConfig) -> AgentStats:
    return Agent(cfg).run()
