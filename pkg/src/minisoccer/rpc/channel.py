"""Deadline-bounded client channels to a playmaker service.

Two interchangeable transports:

* ``GrpcPlaymakerChannel`` talks standard gRPC over TCP.
* ``InProcessPlaymakerChannel`` drives a service object on a worker thread,
  still passing every request and reply through serialized bytes so the
  data path matches the wire exactly.

Every call goes through ``call_with_deadline`` which never blocks past the
deadline plus a small grace. Outcomes are explicit: ``ok``, ``timeout``
(reply did not arrive in time; a late reply is discarded by sequence
stamp), ``channel_down`` (transport failure; subsequent calls fail fast
for a backoff window), or ``missing_prerequisite`` (service refused the
query because registration is incomplete).
"""

from __future__ import annotations

import queue
import threading
import time
from dataclasses import dataclass, field
from typing import Optional

import grpc

from .registration import MissingPrerequisiteError
from .schema import METHOD_TYPES, Schema, get_schema

OK = "ok"
TIMEOUT = "timeout"
CHANNEL_DOWN = "channel_down"
MISSING_PREREQUISITE = "missing_prerequisite"

DEFAULT_DEADLINE_MS = 70.0
DEADLINE_GRACE_MS = 15.0
CHANNEL_BACKOFF_S = 0.5


@dataclass
class CallOutcome:
    status: str
    reply: Optional[object] = None
    elapsed_ms: float = 0.0
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == OK


@dataclass
class ChannelStats:
    calls: int = 0
    ok: int = 0
    timeouts: int = 0
    channel_down: int = 0
    missing_prerequisite: int = 0
    fast_failed: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def record(self, outcome: CallOutcome, fast_failed: bool = False) -> None:
        with self._lock:
            self.calls += 1
            if fast_failed:
                self.fast_failed += 1
            if outcome.status == OK:
                self.ok += 1
            elif outcome.status == TIMEOUT:
                self.timeouts += 1
            elif outcome.status == CHANNEL_DOWN:
                self.channel_down += 1
            elif outcome.status == MISSING_PREREQUISITE:
                self.missing_prerequisite += 1


class GrpcPlaymakerChannel:
    """gRPC transport with per-call deadlines and fail-fast backoff."""

    def __init__(
        self,
        address: str = "127.0.0.1:50051",
        *,
        deadline_ms: float = DEFAULT_DEADLINE_MS,
        backoff_s: float = CHANNEL_BACKOFF_S,
        schema: Optional[Schema] = None,
    ) -> None:
        self.address = address
        self.deadline_ms = deadline_ms
        self.backoff_s = backoff_s
        self.schema = schema or get_schema()
        self.stats = ChannelStats()
        self._channel = grpc.insecure_channel(address)
        self._methods = {}
        for name, (req_name, reply_name) in METHOD_TYPES.items():
            reply_cls = self.schema.messages[reply_name]
            self._methods[name] = self._channel.unary_unary(
                self.schema.method_path(name),
                request_serializer=lambda m: m.SerializeToString(),
                response_deserializer=reply_cls.FromString,
            )
        self._down_until = 0.0

    def call_with_deadline(
        self, method: str, request, deadline_ms: Optional[float] = None
    ) -> CallOutcome:
        deadline_ms = self.deadline_ms if deadline_ms is None else deadline_ms
        now = time.monotonic()
        if now < self._down_until:
            outcome = CallOutcome(CHANNEL_DOWN, detail="backoff")
            self.stats.record(outcome, fast_failed=True)
            return outcome
        deadline_s = deadline_ms / 1000.0
        start = time.monotonic()
        future = self._methods[method].future(request, timeout=deadline_s)
        try:
            reply = future.result(timeout=deadline_s + DEADLINE_GRACE_MS / 1000.0)
            outcome = CallOutcome(OK, reply, (time.monotonic() - start) * 1000.0)
        except grpc.FutureTimeoutError:
            future.cancel()
            outcome = CallOutcome(
                TIMEOUT, None, (time.monotonic() - start) * 1000.0, "wall clamp"
            )
        except grpc.RpcError as err:
            elapsed = (time.monotonic() - start) * 1000.0
            code = err.code()
            if code == grpc.StatusCode.DEADLINE_EXCEEDED:
                outcome = CallOutcome(TIMEOUT, None, elapsed, "deadline exceeded")
            elif code == grpc.StatusCode.FAILED_PRECONDITION:
                outcome = CallOutcome(
                    MISSING_PREREQUISITE, None, elapsed, err.details() or ""
                )
            else:
                self._down_until = time.monotonic() + self.backoff_s
                outcome = CallOutcome(
                    CHANNEL_DOWN, None, elapsed, f"{code.name}: {err.details() or ''}"
                )
        self.stats.record(outcome)
        return outcome

    def close(self) -> None:
        self._channel.close()


@dataclass
class _Job:
    seq: int
    method: str
    data: bytes
    box: "queue.Queue" = field(default_factory=lambda: queue.Queue(maxsize=1))


class InProcessPlaymakerChannel:
    """Runs a service object on a worker thread, bytes in, bytes out.

    The service object exposes one method per RPC name taking the parsed
    request message and returning the reply message, the same contract the
    gRPC host adapter uses.

    With ``synchronous=True`` the service runs inline on the caller's
    thread instead. That trades hard deadline enforcement for scheduling
    determinism: a trusted local service cannot be preempted into a
    spurious timeout, which would make otherwise-deterministic runs
    diverge. Calls are still timed, so slow replies remain observable.
    """

    def __init__(
        self,
        service,
        *,
        deadline_ms: float = DEFAULT_DEADLINE_MS,
        synchronous: bool = False,
        schema: Optional[Schema] = None,
    ) -> None:
        self.service = service
        self.deadline_ms = deadline_ms
        self.synchronous = synchronous
        self.schema = schema or get_schema()
        self.stats = ChannelStats()
        self._jobs: "queue.Queue[Optional[_Job]]" = queue.Queue()
        self._seq = 0
        self._worker: Optional[threading.Thread] = None
        if not synchronous:
            self._worker = threading.Thread(target=self._run, daemon=True)
            self._worker.start()

    def _run(self) -> None:
        while True:
            job = self._jobs.get()
            if job is None:
                return
            req_name, reply_name = METHOD_TYPES[job.method]
            try:
                request = self.schema.messages[req_name].FromString(job.data)
                reply = getattr(self.service, job.method)(request)
                expected = self.schema.messages[reply_name]
                if not isinstance(reply, expected):
                    raise TypeError(
                        f"{job.method} returned {type(reply).__name__}, "
                        f"expected {reply_name}"
                    )
                job.box.put(("ok", reply.SerializeToString()))
            except MissingPrerequisiteError as err:
                job.box.put(("missing_prerequisite", str(err)))
            except Exception as err:  # service failure = transport-level error
                job.box.put(("error", repr(err)))

    def _call_inline(self, method: str, data: bytes) -> CallOutcome:
        req_name, reply_name = METHOD_TYPES[method]
        start = time.monotonic()
        try:
            request = self.schema.messages[req_name].FromString(data)
            reply = getattr(self.service, method)(request)
            payload = reply.SerializeToString()
        except MissingPrerequisiteError as err:
            elapsed = (time.monotonic() - start) * 1000.0
            return CallOutcome(MISSING_PREREQUISITE, None, elapsed, str(err))
        except Exception as err:
            elapsed = (time.monotonic() - start) * 1000.0
            return CallOutcome(CHANNEL_DOWN, None, elapsed, repr(err))
        elapsed = (time.monotonic() - start) * 1000.0
        parsed = self.schema.messages[reply_name].FromString(payload)
        return CallOutcome(OK, parsed, elapsed)

    def call_with_deadline(
        self, method: str, request, deadline_ms: Optional[float] = None
    ) -> CallOutcome:
        deadline_ms = self.deadline_ms if deadline_ms is None else deadline_ms
        if self.synchronous:
            outcome = self._call_inline(method, request.SerializeToString())
            self.stats.record(outcome)
            return outcome
        self._seq += 1
        job = _Job(self._seq, method, request.SerializeToString())
        start = time.monotonic()
        self._jobs.put(job)
        try:
            kind, payload = job.box.get(timeout=deadline_ms / 1000.0)
        except queue.Empty:
            # The worker may still answer later; that reply lands in an
            # abandoned box and is dropped, which is the stamp discard.
            outcome = CallOutcome(
                TIMEOUT, None, (time.monotonic() - start) * 1000.0
            )
            self.stats.record(outcome)
            return outcome
        elapsed = (time.monotonic() - start) * 1000.0
        if kind == "ok":
            reply_name = METHOD_TYPES[method][1]
            reply = self.schema.messages[reply_name].FromString(payload)
            outcome = CallOutcome(OK, reply, elapsed)
        elif kind == "missing_prerequisite":
            outcome = CallOutcome(MISSING_PREREQUISITE, None, elapsed, payload)
        else:
            outcome = CallOutcome(CHANNEL_DOWN, None, elapsed, payload)
        self.stats.record(outcome)
        return outcome

    def close(self) -> None:
        if self._worker is not None:
            self._jobs.put(None)
            self._worker.join(timeout=1.0)
            self._worker = None
