"""Simulation parameters.

Defaults follow the long-standing 2D server conventions (ball decay 0.94,
dash power rate 0.006, and so on) so agent-side models transfer unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass
class SimConfig:
    field_length: float = 105.0
    field_width: float = 68.0
    cycle_ms: int = 100
    half_cycles: int = 3000
    ball_decay: float = 0.94
    player_decay: float = 0.4
    dash_power_rate: float = 0.006
    kick_power_rate: float = 0.027
    player_speed_max: float = 1.05
    ball_speed_max: float = 3.0
    player_size: float = 0.3
    ball_size: float = 0.085
    kickable_margin: float = 0.7
    visible_angle: float = 90.0
    quantize_step: float = 0.1
    stamina_max: float = 8000.0
    stamina_recovery: float = 45.0
    goal_half_width: float = 7.01
    # Dead-ball bookkeeping: entitled side must restart within this many
    # cycles or play resumes on its own.
    dead_ball_limit: int = 100
    corner_margin: float = 1.0
    goal_kick_x: float = 47.0
    pitch_margin: float = 5.0
    observation_mode: str = "see"  # "see" | "fullstate"
    player_port: int = 6000
    trainer_port: int = 6001
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("ball_decay", "player_decay"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {v}")
        for name in ("player_speed_max", "ball_speed_max", "stamina_max",
                     "field_length", "field_width", "cycle_ms", "half_cycles"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.observation_mode not in ("see", "fullstate"):
            raise ValueError(f"unknown observation_mode {self.observation_mode!r}")

    @property
    def kickable_area(self) -> float:
        return self.player_size + self.ball_size + self.kickable_margin

    @property
    def x_max(self) -> float:
        return self.field_length / 2.0

    @property
    def y_max(self) -> float:
        return self.field_width / 2.0

    @property
    def total_cycles(self) -> int:
        return 2 * self.half_cycles

    def numeric_params(self) -> tuple:
        """(name, value) pairs for the server_param handshake message."""
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, (int, float)) and f.name != "seed":
                out.append((f.name, float(v)))
        out.append(("kickable_area", self.kickable_area))
        return tuple(out)

    def replace(self, **kw) -> "SimConfig":
        from dataclasses import replace

        return replace(self, **kw)


@dataclass
class PlayerTypeInfo:
    """Single homogeneous player type replicated over all slots."""

    type_id: int = 0
    player_types: int = 1

    def param_pairs(self, cfg: SimConfig) -> tuple:
        return (
            ("player_speed_max", cfg.player_speed_max),
            ("stamina_max", cfg.stamina_max),
            ("dash_power_rate", cfg.dash_power_rate),
            ("kick_power_rate", cfg.kick_power_rate),
            ("kickable_area", cfg.kickable_area),
            ("effort_max", 1.0),
        )
