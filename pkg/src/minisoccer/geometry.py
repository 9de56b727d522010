"""2D geometry helpers shared by the simulator and the world model.

Coordinates: x grows toward the right goal, y toward the bottom touchline.
Angles are degrees in [-180, 180), 0 pointing along +x, positive toward +y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def norm_deg(a: float) -> float:
    """Normalize an angle in degrees to [-180, 180)."""
    a = math.fmod(a, 360.0)
    if a < -180.0:
        a += 360.0
    elif a >= 180.0:
        a -= 360.0
    # fmod can return -0.0; keep the canonical zero
    return a + 0.0


@dataclass(frozen=True, slots=True)
class Vec2:
    x: float = 0.0
    y: float = 0.0

    def __add__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x - o.x, self.y - o.y)

    def scaled(self, k: float) -> "Vec2":
        return Vec2(self.x * k, self.y * k)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y)

    def dist(self, o: "Vec2") -> float:
        dx = self.x - o.x
        dy = self.y - o.y
        return math.sqrt(dx * dx + dy * dy)

    def bearing_to(self, o: "Vec2") -> float:
        """Global direction, in degrees, of the ray from self to o."""
        return norm_deg(math.degrees(math.atan2(o.y - self.y, o.x - self.x)))

    def mirrored(self) -> "Vec2":
        return Vec2(-self.x, -self.y)


def from_polar(r: float, deg: float) -> Vec2:
    rad = math.radians(deg)
    return Vec2(r * math.cos(rad), r * math.sin(rad))


def rotate(v: Vec2, deg: float) -> Vec2:
    rad = math.radians(deg)
    c, s = math.cos(rad), math.sin(rad)
    return Vec2(v.x * c - v.y * s, v.x * s + v.y * c)


def mirror_deg(a: float) -> float:
    """Rotate an angle by a half turn, staying in [-180, 180).

    Used by the team-normalized frame: right-side agents see the pitch
    rotated 180 degrees. Exact (and involutive) for angles whose sum with
    180 is representable, which covers every wire value we produce.
    """
    return a - 180.0 if a >= 0.0 else a + 180.0


def clamp(v: float, lo: float, hi: float) -> float:
    return lo if v < lo else hi if v > hi else v
