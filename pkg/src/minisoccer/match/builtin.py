"""In-process decision services: the reference playmaker and a script
trainer.

The playmaker policy is intentionally small and fixed:

  - ball within kicking range: drive it at the opponent goal center;
  - this player is its team's quickest to the ball: go collect it;
  - otherwise hold a 4-3-3 formation spot, shifted toward the ball.

Decisions read only the request message and use plain float arithmetic in
a fixed order, so an independent implementation of the same rules in
another language can reproduce them exactly, byte for byte.
"""

from __future__ import annotations

import json
import math
from typing import Dict, List, Optional

from ..formation import BALL_SHIFT, FORMATION_433
from ..modes import PlayMode
from ..rpc import actions as act
from ..rpc.marshal import marshal_trainer_actions
from ..rpc.schema import Schema, get_schema
from ..geometry import Vec2

# Policy constants. Pinned to the default simulation parameters rather
# than read from the handshake, so that every implementation of this
# policy agrees without sharing code.
KICKABLE_AREA = 1.085
GOAL_X = 52.5
KICK_FIRST_SPEED = 2.5
KICK_SPEED_THR = 1.0
KICK_MAX_STEPS = 1
GO_DIST_THR = 1.0
GO_MAX_POWER = 80.0


def decide_player(world, schema: Schema):
    """The reference policy over one WorldModel; returns PlayerActionsReply."""
    reply = schema.new("PlayerActionsReply")
    me = getattr(world, "self")
    ball = world.ball
    if me.unum not in FORMATION_433:
        return reply

    if ball.confidence > 0.0:
        dx = ball.pos.x - me.pos.x
        dy = ball.pos.y - me.pos.y
        if math.sqrt(dx * dx + dy * dy) <= KICKABLE_AREA:
            a = reply.actions.add()
            a.body_smart_kick.target.x = GOAL_X
            a.body_smart_kick.target.y = 0.0
            a.body_smart_kick.first_speed = KICK_FIRST_SPEED
            a.body_smart_kick.speed_thr = KICK_SPEED_THR
            a.body_smart_kick.max_steps = KICK_MAX_STEPS
            return reply
        if world.intercept.fastest_our_unum == me.unum:
            reply.actions.add().body_intercept_ball.SetInParent()
            reply.actions.add().neck_turn_to_ball.SetInParent()
            return reply

    spot = FORMATION_433[me.unum]
    tx, ty = spot.x, spot.y
    if ball.confidence > 0.0:
        tx = spot.x + BALL_SHIFT * ball.pos.x
        ty = spot.y + BALL_SHIFT * ball.pos.y
    a = reply.actions.add()
    a.body_go_to_point.target.x = tx
    a.body_go_to_point.target.y = ty
    a.body_go_to_point.dist_thr = GO_DIST_THR
    a.body_go_to_point.max_power = GO_MAX_POWER
    reply.actions.add().neck_turn_to_ball.SetInParent()
    return reply


class BuiltinPlaymaker:
    """The 'Game' service with the reference policy behind it.

    Coaches are told to do nothing; trainers get an empty reply. Handshake
    messages are acknowledged by the SequencedService wrapper when one is
    used, or can simply go unanswered in bare in-process use.
    """

    def __init__(self, schema: Optional[Schema] = None) -> None:
        self.schema = schema or get_schema()

    def GetPlayerActions(self, request):
        return decide_player(request.world, self.schema)

    def GetCoachActions(self, request):
        reply = self.schema.new("CoachActionsReply")
        reply.actions.add().do_nothing.SetInParent()
        return reply

    def GetTrainerActions(self, request):
        return self.schema.new("TrainerActionsReply")


class ScriptTrainer:
    """Feeds scripted match directives to a trainer agent.

    The script maps a cycle number to trainer actions.  Each entry is
    served exactly once, at the first trainer observation whose cycle is
    at or after the entry's key, so a delayed start or a missed snapshot
    cannot silently drop directives.  The simulation applies served
    actions on the following step.  Cycles with nothing pending get an
    empty reply.
    """

    def __init__(
        self,
        script: Dict[int, List[act.TrainerActionT]],
        schema: Optional[Schema] = None,
    ) -> None:
        self.schema = schema or get_schema()
        self.script = dict(script)
        self.served: List[int] = []

    def GetTrainerActions(self, request):
        cycle = request.world.cycle
        due = sorted(key for key in self.script if key <= cycle)
        actions: List[act.TrainerActionT] = []
        for key in due:
            actions.extend(self.script.pop(key))
        if not actions:
            return self.schema.new("TrainerActionsReply")
        self.served.extend(due)
        return marshal_trainer_actions(actions, schema=self.schema)

    def GetPlayerActions(self, request):
        return self.schema.new("PlayerActionsReply")

    def GetCoachActions(self, request):
        return self.schema.new("CoachActionsReply")


def parse_episode_script(entries) -> Dict[int, List[act.TrainerActionT]]:
    """Turns the JSON script form into per-cycle trainer actions.

    Expected shape: a list of {"cycle": int, "actions": [directive, ...]}
    where each directive is a one-key object:

      {"change_mode": "play_on"}
      {"move_ball": {"x": 0, "y": 0, "vx": 0, "vy": 0}}
      {"move_player": {"side": "l", "unum": 3, "x": -10, "y": 0, "dir": 0}}
      {"recover": {}}

    Coordinates are absolute field coordinates (left team attacks +x).
    """
    if not isinstance(entries, list):
        raise ValueError("episode script must be a list of cycle entries")
    script: Dict[int, List[act.TrainerActionT]] = {}
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or "cycle" not in entry:
            raise ValueError(f"entry {i}: needs a cycle number")
        cycle = int(entry["cycle"])
        actions = script.setdefault(cycle, [])
        for directive in entry.get("actions", []):
            if not isinstance(directive, dict) or len(directive) != 1:
                raise ValueError(f"entry {i}: directives are one-key objects")
            key, value = next(iter(directive.items()))
            if key == "change_mode":
                actions.append(act.ChangeModeAction(PlayMode.from_wire(str(value))))
            elif key == "move_ball":
                actions.append(
                    act.MoveBallAction(
                        Vec2(float(value["x"]), float(value["y"])),
                        Vec2(float(value.get("vx", 0.0)), float(value.get("vy", 0.0))),
                    )
                )
            elif key == "move_player":
                actions.append(
                    act.MovePlayerAction(
                        str(value["side"]),
                        int(value["unum"]),
                        Vec2(float(value["x"]), float(value["y"])),
                        float(value.get("dir", 0.0)),
                    )
                )
            elif key == "recover":
                actions.append(act.RecoverAction())
            else:
                raise ValueError(f"entry {i}: unknown directive {key!r}")
    return script


def load_episode_script(path: str) -> Dict[int, List[act.TrainerActionT]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_episode_script(json.load(fh))
