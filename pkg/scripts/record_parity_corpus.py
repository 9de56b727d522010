#!/usr/bin/env python3
"""Records the playmaker parity corpus from a live builtin-vs-builtin match.

Captures the (State, PlayerActionsReply) protobuf byte pairs flowing through
both teams' decision services during a short match and writes 500 of them,
length-prefixed, to playmaker-ts/test/fixtures/parity_corpus.bin. The
TypeScript playmaker's tests replay the states and must produce bit-identical
reply bytes; tests/test_acceptance.py holds the same corpus against the
Python policy.

Usage: python3 scripts/record_parity_corpus.py [output_path]
"""

import sys
import threading
from pathlib import Path

from minisoccer.agent import TeamConfig, start_team
from minisoccer.match.builtin import BuiltinPlaymaker
from minisoccer.rpc import SequencedService
from minisoccer.rpc.schema import get_schema
from minisoccer.sim import SimConfig, SimServer

TARGET_ENTRIES = 500
MAGIC = b"MSPC1\n"


class RecordingService:
    """Passes calls through while capturing player decision byte pairs."""

    def __init__(self, inner, entries):
        self._inner = inner
        self._entries = entries

    def GetPlayerActions(self, request):
        reply = self._inner.GetPlayerActions(request)
        self._entries.append((request.SerializeToString(), reply.SerializeToString()))
        return reply

    def __getattr__(self, name):
        return getattr(self._inner, name)


def record(out_path: Path) -> int:
    schema = get_schema()
    entries = []  # appends are atomic, shared across both teams
    cfg = SimConfig(
        player_port=0,
        trainer_port=0,
        half_cycles=60,
        observation_mode="fullstate",
        seed=7,
    )
    server = SimServer(cfg, lockstep=True, expected_players=22)
    thread = threading.Thread(target=server.serve, daemon=True)
    thread.start()
    handles = []
    for name in ("home", "away"):
        service = RecordingService(
            SequencedService(BuiltinPlaymaker(schema), schema), entries
        )
        handles.append(
            start_team(
                TeamConfig(
                    name=name,
                    playmaker=service,
                    n_players=11,
                    coach=False,
                    player_port=server.player_port,
                    trainer_port=server.trainer_port,
                )
            )
        )
    thread.join(120.0)
    if thread.is_alive():
        raise RuntimeError("recording match did not finish")
    for handle in handles:
        handle.join(10.0)

    if len(entries) < TARGET_ENTRIES:
        raise RuntimeError(f"only {len(entries)} decision pairs captured")
    stride = len(entries) // TARGET_ENTRIES
    sampled = entries[::stride][:TARGET_ENTRIES]

    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "wb") as fh:
        fh.write(MAGIC)
        for state, reply in sampled:
            fh.write(len(state).to_bytes(4, "big"))
            fh.write(state)
            fh.write(len(reply).to_bytes(4, "big"))
            fh.write(reply)
    return len(sampled)


def main() -> int:
    default = Path(__file__).resolve().parents[1] / "playmaker-ts" / "test" / "fixtures" / "parity_corpus.bin"
    out_path = Path(sys.argv[1]) if len(sys.argv) > 1 else default
    count = record(out_path)
    print(f"wrote {count} decision pairs to {out_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
