"""Tunables the world model needs, fed from the server handshake."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping


@dataclass
class WmParams:
    ball_decay: float = 0.94
    player_decay: float = 0.4
    player_speed_max: float = 1.05
    dash_power_rate: float = 0.006
    kick_power_rate: float = 0.027
    kickable_area: float = 1.085
    quantize_step: float = 0.1
    confidence_decay: float = 0.95
    pose_validity_horizon: int = 5
    intercept_horizon: int = 200
    turn_penalty_deg: float = 15.0
    localize_valid_residual: float = 5.0
    effort_default: float = 1.0

    @property
    def dash_accel_gain(self) -> float:
        return 100.0 * self.dash_power_rate * self.effort_default

    @staticmethod
    def from_server_params(params: Mapping[str, float]) -> "WmParams":
        wp = WmParams()
        for name in (
            "ball_decay",
            "player_decay",
            "player_speed_max",
            "dash_power_rate",
            "kick_power_rate",
            "kickable_area",
            "quantize_step",
        ):
            if name in params:
                setattr(wp, name, float(params[name]))
        return wp
