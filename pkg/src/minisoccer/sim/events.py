"""Per-cycle event records emitted by the step and referee functions."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class SimEvent:
    kind: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"kind": self.kind, "detail": self.detail}


def illegal_command(agent, head: str, why: str) -> SimEvent:
    return SimEvent("illegal_command", f"{agent[0]}{agent[1]} {head}: {why}")


def multiple_body_commands(agent, head: str) -> SimEvent:
    return SimEvent("multiple_body_commands", f"{agent[0]}{agent[1]} {head}")


def duplicate_command(agent, head: str) -> SimEvent:
    return SimEvent("duplicate_command", f"{agent[0]}{agent[1]} {head}")


def mode_change(mode_wire: str, why: str) -> SimEvent:
    return SimEvent("mode_change", f"{mode_wire} ({why})")


def goal(side: str, score_l: int, score_r: int) -> SimEvent:
    return SimEvent("goal", f"{side} {score_l}-{score_r}")


def say_event(sender: str, text: str) -> SimEvent:
    return SimEvent("say", f"{sender}: {text}")
