"""Self-localization from landmark sightings.

Position comes from nonlinear least squares over distance-circle residuals
(hand-rolled Gauss-Newton, two unknowns). Orientation comes from bearings:
each flag votes with (global bearing - observed relative direction), and the
circular mean of the nearest three votes gives the facing direction.

With two flags the distance circles intersect twice; both intersections are
used as seeds next to the prior, and the bearing-vote spread breaks the tie.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..geometry import Vec2, norm_deg
from .params import WmParams
from .state import PoseEstimate

FlagSighting = Tuple[Vec2, float, float]  # (flag position, distance, relative dir)


@dataclass(frozen=True)
class LocalizeDebug:
    iterations: int
    seeds_tried: int
    residual: float


def _solve_2x2(a11, a12, a22, b1, b2) -> Optional[Tuple[float, float]]:
    det = a11 * a22 - a12 * a12
    if abs(det) < 1e-12:
        return None
    return ((a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det)


def _gauss_newton(flags: Sequence[FlagSighting], seed: Vec2, iters: int = 25) -> Tuple[Vec2, float, int]:
    x, y = seed.x, seed.y
    used = 0
    for it in range(iters):
        used = it + 1
        a11 = a12 = a22 = b1 = b2 = 0.0
        for fpos, dist, _ in flags:
            dx, dy = x - fpos.x, y - fpos.y
            r = math.sqrt(dx * dx + dy * dy)
            if r < 1e-9:
                ux, uy = 1.0, 0.0
                r = 1e-9
            else:
                ux, uy = dx / r, dy / r
            res = r - dist
            a11 += ux * ux
            a12 += ux * uy
            a22 += uy * uy
            b1 += ux * res
            b2 += uy * res
        # light Levenberg damping keeps collinear flag sets solvable
        step = _solve_2x2(a11 + 1e-9, a12, a22 + 1e-9, b1, b2)
        if step is None:
            break
        x -= step[0]
        y -= step[1]
        if step[0] * step[0] + step[1] * step[1] < 1e-24:
            break
    rms = _rms_residual(flags, Vec2(x, y))
    return Vec2(x, y), rms, used


def _rms_residual(flags: Sequence[FlagSighting], pos: Vec2) -> float:
    acc = 0.0
    for fpos, dist, _ in flags:
        acc += (pos.dist(fpos) - dist) ** 2
    return math.sqrt(acc / len(flags))


def _circle_intersections(f1: FlagSighting, f2: FlagSighting) -> List[Vec2]:
    (p1, r1, _), (p2, r2, _) = f1, f2
    d = p1.dist(p2)
    if d < 1e-9:
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    h2 = r1 * r1 - a * a
    ex = (p2.x - p1.x) / d
    ey = (p2.y - p1.y) / d
    mx = p1.x + a * ex
    my = p1.y + a * ey
    if h2 < 0:
        # circles do not quite touch (quantization): closest approach point
        return [Vec2(mx, my)]
    h = math.sqrt(h2)
    if h < 1e-9:
        return [Vec2(mx, my)]
    return [Vec2(mx - h * ey, my + h * ex), Vec2(mx + h * ey, my - h * ex)]


def _face_votes(flags: Sequence[FlagSighting], pos: Vec2, limit: int = 3) -> List[float]:
    nearest = sorted(flags, key=lambda f: f[1])[:limit]
    return [norm_deg(pos.bearing_to(fpos) - rel_dir) for fpos, _, rel_dir in nearest]


def _circular_mean(angles: Sequence[float]) -> float:
    sx = sum(math.cos(math.radians(a)) for a in angles)
    sy = sum(math.sin(math.radians(a)) for a in angles)
    return norm_deg(math.degrees(math.atan2(sy, sx)))


def _vote_spread(votes: Sequence[float]) -> float:
    if len(votes) < 2:
        return 0.0
    mean = _circular_mean(votes)
    return max(abs(norm_deg(v - mean)) for v in votes)


def localize(
    flags: Sequence[FlagSighting],
    prior: PoseEstimate,
    params: WmParams,
    *,
    last_vel: Vec2 = Vec2(0.0, 0.0),
    neck_dir: float = 0.0,
    prior_age: int = 0,
) -> PoseEstimate:
    """One See's worth of flags -> new pose. `prior_age` is cycles since the
    last fresh fix; with fewer than two flags the result is dead-reckoned."""
    if len(flags) < 2:
        pos = prior.pos + last_vel
        return PoseEstimate(
            pos=pos,
            body_dir=prior.body_dir,
            neck_dir=neck_dir,
            pos_error=prior.pos_error + last_vel.norm(),
            valid=prior.valid and prior_age < params.pose_validity_horizon,
        )

    by_dist = sorted(flags, key=lambda f: f[1])
    seeds: List[Vec2] = []
    if prior.valid:
        seeds.append(prior.pos + last_vel)
    seeds.extend(_circle_intersections(by_dist[0], by_dist[1]))
    if not seeds:
        seeds.append(Vec2(0.0, 0.0))

    best: Optional[Tuple[Tuple[float, float], Vec2, float]] = None
    for seed in seeds:
        pos, rms, _ = _gauss_newton(flags, seed)
        spread = _vote_spread(_face_votes(flags, pos))
        score = (round(rms, 6), spread)
        if best is None or score < best[0]:
            best = (score, pos, rms)
    assert best is not None
    _, pos, rms = best

    face = _circular_mean(_face_votes(flags, pos))
    bounds_ok = abs(pos.x) <= 62.5 and abs(pos.y) <= 44.0
    return PoseEstimate(
        pos=pos,
        body_dir=norm_deg(face - neck_dir),
        neck_dir=neck_dir,
        pos_error=rms,
        valid=rms < params.localize_valid_residual and bounds_ok,
    )
