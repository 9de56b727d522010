"""Replay log: line-delimited JSON, one record per simulated cycle.

The first line is a header carrying the schema version and a config
snapshot; each further line is one cycle record with the full world
snapshot and that cycle's events. Keys are sorted and separators minimal,
so two logs of the same match are byte-identical and determinism can be
checked with a plain file comparison.
"""

from __future__ import annotations

import json
from typing import List, Optional, Tuple

SCHEMA_VERSION = 1
FORMAT_NAME = "minisoccer-replay"
FLUSH_EVERY = 100


class OutOfOrderCycle(Exception):
    """Raised when an appended record does not follow the previous cycle."""


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


class ReplayWriter:
    """Appends cycle records to a log file, enforcing cycle continuity.

    The first record may carry any cycle number; every later one must be
    exactly one higher. Data reaches the disk at least every
    `flush_every` records and again on close.
    """

    def __init__(self, path: str, config: dict, flush_every: int = FLUSH_EVERY):
        self.path = path
        self.flush_every = max(1, flush_every)
        self.records = 0
        self._last_cycle: Optional[int] = None
        self._since_flush = 0
        self._fh = open(path, "w", encoding="utf-8")
        header = {
            "format": FORMAT_NAME,
            "schema_version": SCHEMA_VERSION,
            "config": config,
        }
        self._fh.write(canonical_json(header) + "\n")

    def append(self, record: dict) -> None:
        cycle = record["cycle"]
        if self._last_cycle is not None and cycle != self._last_cycle + 1:
            raise OutOfOrderCycle(
                f"cycle {cycle} appended after cycle {self._last_cycle}"
            )
        self._fh.write(canonical_json(record) + "\n")
        self._last_cycle = cycle
        self.records += 1
        self._since_flush += 1
        if self._since_flush >= self.flush_every:
            self.flush()

    def flush(self) -> None:
        if self._fh is not None:
            self._fh.flush()
        self._since_flush = 0

    def close(self) -> None:
        if self._fh is not None:
            self._fh.flush()
            self._fh.close()
            self._fh = None

    def __enter__(self) -> "ReplayWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def read_replay(path: str) -> Tuple[dict, List[dict]]:
    """Parses a log back into (header, records). Raises on malformed JSON."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError(f"{path}: empty replay file")
    header = json.loads(lines[0])
    records = [json.loads(line) for line in lines[1:] if line]
    return header, records


def validate_replay(path: str, expect_time_over: bool = True) -> List[str]:
    """Checks structural soundness; returns a list of problems, empty if valid.

    Verified: header shape and schema version, JSON per line, strictly
    consecutive cycles, snapshot cycle agreeing with the record cycle,
    monotone scores, goal events matching the final score, and (unless
    disabled) a final record in time_over.
    """
    problems: List[str] = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as err:
        return [f"unreadable: {err}"]
    if not lines:
        return ["empty file"]

    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as err:
        return [f"header: invalid JSON ({err})"]
    if not isinstance(header, dict) or header.get("format") != FORMAT_NAME:
        problems.append("header: missing or wrong format marker")
    if header.get("schema_version") != SCHEMA_VERSION:
        problems.append(
            f"header: schema_version {header.get('schema_version')!r},"
            f" expected {SCHEMA_VERSION}"
        )
    if not isinstance(header.get("config"), dict):
        problems.append("header: missing config snapshot")

    records: List[dict] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            problems.append(f"line {lineno}: blank line")
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as err:
            problems.append(f"line {lineno}: invalid JSON ({err})")
            continue
        if not isinstance(rec, dict) or "cycle" not in rec or "world" not in rec:
            problems.append(f"line {lineno}: not a cycle record")
            continue
        records.append(rec)

    if not records:
        problems.append("no cycle records")
        return problems

    goals = {"l": 0, "r": 0}
    prev_scores = None
    for i, rec in enumerate(records):
        cycle = rec["cycle"]
        world = rec["world"]
        if i > 0 and cycle != records[i - 1]["cycle"] + 1:
            problems.append(
                f"cycle {cycle}: follows {records[i - 1]['cycle']}, not consecutive"
            )
        if world.get("cycle") != cycle:
            problems.append(
                f"cycle {cycle}: snapshot says cycle {world.get('cycle')}"
            )
        scores = (world.get("score_l", 0), world.get("score_r", 0))
        if prev_scores is not None and (
            scores[0] < prev_scores[0] or scores[1] < prev_scores[1]
        ):
            problems.append(f"cycle {cycle}: score went down {prev_scores}->{scores}")
        prev_scores = scores
        for ev in rec.get("events", ()):
            if ev.get("kind") == "goal":
                side = str(ev.get("detail", "")).split(" ", 1)[0]
                if side in goals:
                    goals[side] += 1
                else:
                    problems.append(f"cycle {cycle}: goal event with side {side!r}")

    final = records[-1]["world"]
    if expect_time_over and final.get("play_mode") != "time_over":
        problems.append(f"final record play_mode {final.get('play_mode')!r}")
    if goals["l"] != final.get("score_l") or goals["r"] != final.get("score_r"):
        problems.append(
            f"goal events {goals['l']}-{goals['r']} vs final score"
            f" {final.get('score_l')}-{final.get('score_r')}"
        )
    return problems
