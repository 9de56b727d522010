"""Hosting helpers for playmaker services.

A playmaker service is any object with one method per RPC name, each
taking the parsed request message and returning the reply message:

    GetPlayerActions(state) -> PlayerActionsReply
    GetCoachActions(state) -> CoachActionsReply
    GetTrainerActions(state) -> TrainerActionsReply
    SendInitMessage(init) -> Ack
    SendServerParams(msg) -> Ack
    SendPlayerParams(msg) -> Ack
    SendPlayerType(msg) -> Ack

``SequencedService`` wraps such an object with handshake enforcement, and
``serve_playmaker`` exposes it over real gRPC with enough worker threads
for a full lineup of concurrent per-cycle queries.
"""

from __future__ import annotations

from concurrent import futures
from typing import Optional, Tuple

import grpc

from .registration import MissingPrerequisiteError, RegistrationLedger
from .schema import METHOD_TYPES, SERVICE_NAME, Schema, get_schema

# 22 players + 2 coaches + trainer can all be in flight at once.
MIN_CONCURRENT_REQUESTS = 25


class SequencedService:
    """Enforces init/params ordering before any action query."""

    _SEND_STAGE = {
        "SendInitMessage": "init",
        "SendServerParams": "server_params",
        "SendPlayerParams": "player_params",
        "SendPlayerType": "player_type",
    }

    def __init__(
        self,
        inner,
        schema: Optional[Schema] = None,
        log_calls: bool = False,
    ) -> None:
        self.inner = inner
        self.schema = schema or get_schema()
        self.ledger = RegistrationLedger()
        # Chronological (method, register_id) pairs, appended before
        # dispatch. Per register_id the order is exact because each agent
        # calls from a single thread.
        self.call_log: list = []
        self._log_calls = log_calls

    def _ack(self):
        msg = self.schema.new("Ack")
        msg.ok = True
        return msg

    def _send(self, method: str, request):
        if self._log_calls:
            self.call_log.append((method, request.register_id))
        self.ledger.mark(request.register_id, self._SEND_STAGE[method])
        handler = getattr(self.inner, method, None)
        if handler is not None:
            reply = handler(request)
            if reply is not None:
                return reply
        return self._ack()

    def _get(self, method: str, request):
        if self._log_calls:
            self.call_log.append((method, request.register_id))
        if not self.ledger.ready(request.register_id):
            missing = ",".join(sorted(self.ledger.missing(request.register_id)))
            raise MissingPrerequisiteError(
                f"register_id {request.register_id} missing: {missing}"
            )
        return getattr(self.inner, method)(request)

    def SendInitMessage(self, request):
        return self._send("SendInitMessage", request)

    def SendServerParams(self, request):
        return self._send("SendServerParams", request)

    def SendPlayerParams(self, request):
        return self._send("SendPlayerParams", request)

    def SendPlayerType(self, request):
        return self._send("SendPlayerType", request)

    def GetPlayerActions(self, request):
        return self._get("GetPlayerActions", request)

    def GetCoachActions(self, request):
        return self._get("GetCoachActions", request)

    def GetTrainerActions(self, request):
        return self._get("GetTrainerActions", request)


def _make_handler(service, method: str, schema: Schema):
    req_name, _reply_name = METHOD_TYPES[method]
    req_cls = schema.messages[req_name]

    def handle(request, context):
        try:
            return getattr(service, method)(request)
        except MissingPrerequisiteError as err:
            context.abort(grpc.StatusCode.FAILED_PRECONDITION, str(err))

    return grpc.unary_unary_rpc_method_handler(
        handle,
        request_deserializer=req_cls.FromString,
        response_serializer=lambda m: m.SerializeToString(),
    )


def serve_playmaker(
    service,
    *,
    host: str = "127.0.0.1",
    port: int = 50051,
    max_workers: int = 32,
    schema: Optional[Schema] = None,
) -> Tuple[grpc.Server, int]:
    """Starts a gRPC server for `service`; returns (server, bound port)."""
    schema = schema or get_schema()
    if max_workers < MIN_CONCURRENT_REQUESTS:
        max_workers = MIN_CONCURRENT_REQUESTS
    server = grpc.server(futures.ThreadPoolExecutor(max_workers=max_workers))
    handlers = {
        method: _make_handler(service, method, schema) for method in METHOD_TYPES
    }
    server.add_generic_rpc_handlers(
        (grpc.method_handlers_generic_handler(SERVICE_NAME, handlers),)
    )
    bound = server.add_insecure_port(f"{host}:{port}")
    if bound == 0:
        raise RuntimeError(f"could not bind gRPC port {port}")
    server.start()
    return server, bound
