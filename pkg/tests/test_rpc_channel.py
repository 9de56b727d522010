"""Channel semantics: deadlines, ordering enforcement, failure modes."""

import threading
import time

import pytest

from minisoccer.rpc import (
    CHANNEL_DOWN,
    DEADLINE_GRACE_MS,
    MISSING_PREREQUISITE,
    OK,
    TIMEOUT,
    GrpcPlaymakerChannel,
    InProcessPlaymakerChannel,
    SequencedService,
    get_schema,
    marshal_init,
    marshal_player_actions,
    marshal_player_params,
    marshal_player_type,
    marshal_server_params,
    serve_playmaker,
)
from minisoccer.rpc.actions import SayAction


class EchoService:
    """Answers every action query with a say echoing id and cycle."""

    def __init__(self, delay_s: float = 0.0):
        self.delay_s = delay_s
        self.calls = []
        self.schema = get_schema()

    def _ack(self):
        msg = self.schema.new("Ack")
        msg.ok = True
        return msg

    def SendInitMessage(self, request):
        self.calls.append(("init", request.register_id))
        return self._ack()

    def SendServerParams(self, request):
        self.calls.append(("server_params", request.register_id))
        return self._ack()

    def SendPlayerParams(self, request):
        self.calls.append(("player_params", request.register_id))
        return self._ack()

    def SendPlayerType(self, request):
        self.calls.append(("player_type", request.register_id))
        return self._ack()

    def GetPlayerActions(self, request):
        if self.delay_s:
            time.sleep(self.delay_s)
        self.calls.append(("get", request.register_id))
        text = f"{request.register_id}:{request.world.cycle}"
        return marshal_player_actions([SayAction(text)], self.schema)

    def GetCoachActions(self, request):
        from minisoccer.rpc import marshal_coach_actions

        return marshal_coach_actions([SayAction("coach")], self.schema)

    def GetTrainerActions(self, request):
        from minisoccer.rpc import marshal_trainer_actions

        return marshal_trainer_actions([], self.schema)


def make_state(register_id: int, cycle: int = 0):
    schema = get_schema()
    msg = schema.new("State")
    msg.register_id = register_id
    msg.world.cycle = cycle
    return msg


def register_agent(channel, register_id: int) -> None:
    assert channel.call_with_deadline(
        "SendInitMessage",
        marshal_init(register_id=register_id, agent_type="player", unum=1),
        deadline_ms=1000,
    ).ok
    assert channel.call_with_deadline(
        "SendServerParams", marshal_server_params(register_id, []), deadline_ms=1000
    ).ok
    assert channel.call_with_deadline(
        "SendPlayerParams", marshal_player_params(register_id, []), deadline_ms=1000
    ).ok
    assert channel.call_with_deadline(
        "SendPlayerType", marshal_player_type(register_id, 0, []), deadline_ms=1000
    ).ok


def test_in_process_requires_full_handshake():
    channel = InProcessPlaymakerChannel(SequencedService(EchoService()))
    try:
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101), deadline_ms=1000
        )
        assert out.status == MISSING_PREREQUISITE
        assert "init" in out.detail

        channel.call_with_deadline(
            "SendInitMessage",
            marshal_init(register_id=101, agent_type="player", unum=1),
            deadline_ms=1000,
        )
        channel.call_with_deadline(
            "SendServerParams", marshal_server_params(101, []), deadline_ms=1000
        )
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101), deadline_ms=1000
        )
        assert out.status == MISSING_PREREQUISITE
        assert "player_params" in out.detail and "player_type" in out.detail

        channel.call_with_deadline(
            "SendPlayerParams", marshal_player_params(101, []), deadline_ms=1000
        )
        channel.call_with_deadline(
            "SendPlayerType", marshal_player_type(101, 0, []), deadline_ms=1000
        )
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101, cycle=7), deadline_ms=1000
        )
        assert out.ok
        from minisoccer.rpc import unmarshal_player_actions

        assert unmarshal_player_actions(out.reply) == [SayAction("101:7")]
    finally:
        channel.close()


def test_handshake_is_per_register_id():
    channel = InProcessPlaymakerChannel(SequencedService(EchoService()))
    try:
        register_agent(channel, 101)
        assert channel.call_with_deadline(
            "GetPlayerActions", make_state(101), deadline_ms=1000
        ).ok
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(102), deadline_ms=1000
        )
        assert out.status == MISSING_PREREQUISITE
    finally:
        channel.close()


def test_in_process_slow_service_times_out_near_deadline():
    channel = InProcessPlaymakerChannel(SequencedService(EchoService(delay_s=0.2)))
    try:
        register_agent(channel, 101)
        start = time.monotonic()
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101), deadline_ms=50
        )
        wall_ms = (time.monotonic() - start) * 1000.0
        assert out.status == TIMEOUT
        assert abs(out.elapsed_ms - 50.0) <= 10.0
        assert wall_ms <= 50.0 + DEADLINE_GRACE_MS
    finally:
        channel.close()


def test_in_process_late_reply_never_leaks_into_next_call():
    service = EchoService(delay_s=0.12)
    channel = InProcessPlaymakerChannel(SequencedService(service))
    try:
        register_agent(channel, 101)
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101, cycle=1), deadline_ms=40
        )
        assert out.status == TIMEOUT
        service.delay_s = 0.0
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101, cycle=2), deadline_ms=1000
        )
        assert out.ok
        from minisoccer.rpc import unmarshal_player_actions

        assert unmarshal_player_actions(out.reply) == [SayAction("101:2")]
    finally:
        channel.close()


def test_in_process_service_exception_is_channel_down():
    class Broken(EchoService):
        def GetPlayerActions(self, request):
            raise RuntimeError("boom")

    channel = InProcessPlaymakerChannel(SequencedService(Broken()))
    try:
        register_agent(channel, 101)
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101), deadline_ms=1000
        )
        assert out.status == CHANNEL_DOWN
        assert "boom" in out.detail
    finally:
        channel.close()


@pytest.fixture
def grpc_echo():
    service = EchoService()
    server, port = serve_playmaker(SequencedService(service), port=0)
    channel = GrpcPlaymakerChannel(f"127.0.0.1:{port}")
    yield service, server, channel
    channel.close()
    server.stop(grace=None)


def test_grpc_round_trip_and_ordering(grpc_echo):
    service, _server, channel = grpc_echo
    out = channel.call_with_deadline(
        "GetPlayerActions", make_state(205), deadline_ms=1000
    )
    assert out.status == MISSING_PREREQUISITE
    register_agent(channel, 205)
    out = channel.call_with_deadline(
        "GetPlayerActions", make_state(205, cycle=31), deadline_ms=1000
    )
    assert out.ok
    from minisoccer.rpc import unmarshal_player_actions

    assert unmarshal_player_actions(out.reply) == [SayAction("205:31")]
    stage_calls = [c for c in service.calls if c[1] == 205]
    assert stage_calls == [
        ("init", 205),
        ("server_params", 205),
        ("player_params", 205),
        ("player_type", 205),
        ("get", 205),
    ]


def test_grpc_slow_service_times_out_near_deadline():
    service = EchoService(delay_s=0.3)
    server, port = serve_playmaker(SequencedService(service), port=0)
    channel = GrpcPlaymakerChannel(f"127.0.0.1:{port}")
    try:
        register_agent(channel, 101)
        start = time.monotonic()
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101), deadline_ms=60
        )
        wall_ms = (time.monotonic() - start) * 1000.0
        assert out.status == TIMEOUT
        assert abs(out.elapsed_ms - 60.0) <= 10.0
        assert wall_ms <= 60.0 + DEADLINE_GRACE_MS + 10.0
    finally:
        channel.close()
        server.stop(grace=None)


def test_grpc_dead_port_is_channel_down_with_backoff():
    channel = GrpcPlaymakerChannel("127.0.0.1:1", backoff_s=0.3)
    try:
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101), deadline_ms=200
        )
        assert out.status == CHANNEL_DOWN
        start = time.monotonic()
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101), deadline_ms=200
        )
        assert out.status == CHANNEL_DOWN
        assert out.detail == "backoff"
        assert (time.monotonic() - start) < 0.05
        assert channel.stats.fast_failed == 1
        time.sleep(0.35)
        out = channel.call_with_deadline(
            "GetPlayerActions", make_state(101), deadline_ms=200
        )
        assert out.status == CHANNEL_DOWN
        assert out.detail != "backoff"
    finally:
        channel.close()


def test_grpc_supports_23_concurrent_inflight_requests():
    service = EchoService(delay_s=0.1)
    server, port = serve_playmaker(SequencedService(service), port=0)
    channel = GrpcPlaymakerChannel(f"127.0.0.1:{port}")
    try:
        ids = [100 + u for u in range(1, 12)]
        ids += [200 + u for u in range(1, 12)]
        ids.append(112)
        assert len(ids) == 23
        for rid in ids:
            register_agent(channel, rid)
        outcomes = {}

        def query(rid):
            outcomes[rid] = channel.call_with_deadline(
                "GetPlayerActions", make_state(rid), deadline_ms=2000
            )

        threads = [threading.Thread(target=query, args=(rid,)) for rid in ids]
        start = time.monotonic()
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        wall = time.monotonic() - start
        assert all(outcomes[rid].ok for rid in ids)
        # Serial handling would need 2.3s; concurrent handling stays near
        # the single-call latency.
        assert wall < 1.0
    finally:
        channel.close()
        server.stop(grace=None)


def test_channel_stats_accumulate():
    channel = InProcessPlaymakerChannel(SequencedService(EchoService()))
    try:
        register_agent(channel, 101)
        channel.call_with_deadline("GetPlayerActions", make_state(101), 1000)
        channel.call_with_deadline("GetPlayerActions", make_state(102), 1000)
        assert channel.stats.ok == 5  # 4 handshake acks + 1 action query
        assert channel.stats.missing_prerequisite == 1
        assert channel.stats.calls == 6
    finally:
        channel.close()
