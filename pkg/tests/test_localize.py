import math
import random
import statistics

import numpy as np
import pytest
from scipy.optimize import least_squares

from minisoccer.codec import FlagObj, GoalObj, decode_server_message, encode_server_message, parse_sexpr
from minisoccer.codec.landmarks import LANDMARKS
from minisoccer.geometry import Vec2, norm_deg
from minisoccer.sim import SimConfig, add_player, new_world, see_message
from minisoccer.wm import PoseEstimate, WmParams, localize

PARAMS = WmParams()

# Monte-Carlo reference quality, measured once with this module's reference
# run (seed 12345, 1000 poses, quantize_step 0.1, 2-decimal wire) and frozen
# at twice the observed medians.
FROZEN_POS_MEDIAN_BOUND = 2 * 0.00198
FROZEN_BODY_MEDIAN_BOUND = 2 * 0.126


def flags_for(truth: Vec2, ids, jitter=None):
    out = []
    for fid in ids:
        fpos = LANDMARKS[fid]
        d = truth.dist(fpos)
        rel = norm_deg(truth.bearing_to(fpos))  # facing 0, neck 0
        out.append((fpos, d, rel))
    return out


def scipy_position(flags, seed):
    """Independent least-squares route over the same distance residuals."""

    def residuals(p):
        return [math.hypot(p[0] - f.x, p[1] - f.y) - d for (f, d, _) in flags]

    sol = least_squares(residuals, [seed.x, seed.y], method="lm", xtol=1e-15, ftol=1e-15)
    return Vec2(float(sol.x[0]), float(sol.x[1]))


def test_noise_free_two_flags_exact():
    truth = Vec2(-20.0, 10.0)
    flags = flags_for(truth, ["g l", "f c"])
    est = localize(flags, PoseEstimate(), PARAMS, neck_dir=0.0)
    assert est.valid
    assert est.pos.dist(truth) < 1e-6
    assert abs(norm_deg(est.body_dir - 0.0)) < 1e-6
    assert est.pos_error < 1e-6


def test_noise_free_many_flags_many_poses():
    rng = random.Random(99)
    ids = list(LANDMARKS)
    for _ in range(50):
        truth = Vec2(rng.uniform(-50, 50), rng.uniform(-32, 32))
        body = rng.uniform(-180, 179)
        chosen = rng.sample(ids, 5)
        flags = []
        for fid in chosen:
            fpos = LANDMARKS[fid]
            flags.append((fpos, truth.dist(fpos), norm_deg(truth.bearing_to(fpos) - body)))
        est = localize(flags, PoseEstimate(), PARAMS, neck_dir=0.0)
        assert est.valid
        assert est.pos.dist(truth) < 1e-6
        assert abs(norm_deg(est.body_dir - body)) < 1e-6


def test_mirror_ambiguity_resolved_by_bearings():
    # Two flags on the x axis: candidates (-20, 10) and (-20, -10). Bearings
    # pick the right one even without a prior.
    truth = Vec2(-20.0, 10.0)
    flags = flags_for(truth, ["g l", "f c"])
    est = localize(flags, PoseEstimate(), PARAMS, neck_dir=0.0)
    assert est.pos.dist(truth) < 1e-6
    mirror = Vec2(-20.0, -10.0)
    assert est.pos.dist(mirror) > 1.0


def test_neck_offset_recovered():
    truth = Vec2(5.0, 5.0)
    body, neck = 30.0, 40.0
    flags = []
    for fid in ("f c", "g r", "f r t"):
        fpos = LANDMARKS[fid]
        flags.append((fpos, truth.dist(fpos), norm_deg(truth.bearing_to(fpos) - (body + neck))))
    est = localize(flags, PoseEstimate(), PARAMS, neck_dir=neck)
    assert abs(norm_deg(est.body_dir - body)) < 1e-6
    assert est.neck_dir == neck


def test_dead_reckon_single_flag():
    prior = PoseEstimate(pos=Vec2(1.0, 2.0), body_dir=10.0, neck_dir=0.0, pos_error=0.1, valid=True)
    est = localize(
        [(LANDMARKS["f c"], 5.0, 0.0)],
        prior,
        PARAMS,
        last_vel=Vec2(0.5, -0.25),
        prior_age=1,
    )
    assert est.pos == Vec2(1.5, 1.75)
    assert est.body_dir == 10.0
    assert est.valid


def test_dead_reckon_expires_after_horizon():
    prior = PoseEstimate(pos=Vec2(0, 0), body_dir=0, neck_dir=0, pos_error=0.1, valid=True)
    est = localize([], prior, PARAMS, prior_age=PARAMS.pose_validity_horizon)
    assert not est.valid
    est = localize([], prior, PARAMS, prior_age=PARAMS.pose_validity_horizon - 1)
    assert est.valid


def test_gauss_newton_agrees_with_scipy_route():
    rng = random.Random(4242)
    ids = list(LANDMARKS)
    for _ in range(200):
        truth = Vec2(rng.uniform(-50, 50), rng.uniform(-32, 32))
        chosen = rng.sample(ids, rng.randint(3, 8))
        flags = []
        for fid in chosen:
            fpos = LANDMARKS[fid]
            # quantized measurement: the shared input for both routes
            d = truth.dist(fpos)
            dq = round(d / 0.1) * 0.1
            flags.append((fpos, dq, norm_deg(truth.bearing_to(fpos))))
        est = localize(flags, PoseEstimate(), PARAMS, neck_dir=0.0)
        ref = scipy_position(flags, est.pos)
        assert est.pos.dist(ref) < 1e-6


def test_monte_carlo_median_below_frozen_bound():
    cfg = SimConfig()
    rng = random.Random(12345)
    pos_errors = []
    body_errors = []
    for _ in range(1000):
        w = new_world(cfg)
        me = add_player(cfg, w, "l", 1)
        truth = Vec2(rng.uniform(-52, 52), rng.uniform(-33.5, 33.5))
        body = rng.uniform(-180.0, 179.0)
        me.pos = truth
        me.body_dir = body
        msg = decode_server_message(
            parse_sexpr(encode_server_message(see_message(cfg, w, ("l", 1))))
        )
        flags = []
        for o in msg.objects:
            if isinstance(o.name, FlagObj):
                flags.append((LANDMARKS[o.name.flag_id], o.distance, o.direction))
            elif isinstance(o.name, GoalObj):
                flags.append((LANDMARKS[f"g {o.name.side}"], o.distance, o.direction))
        if len(flags) < 2:
            continue
        est = localize(flags, PoseEstimate(), PARAMS, neck_dir=0.0)
        if not est.valid:
            continue
        pos_errors.append(est.pos.dist(truth))
        body_errors.append(abs(norm_deg(est.body_dir - body)))
    assert len(pos_errors) > 900
    assert statistics.median(pos_errors) < FROZEN_POS_MEDIAN_BOUND
    assert statistics.median(body_errors) < FROZEN_BODY_MEDIAN_BOUND


def test_collinear_flags_do_not_crash():
    truth = Vec2(0.0, -20.0)
    ids = ["f t 0", "f t l 10", "f t r 10"]  # all on the top flag row
    flags = []
    for fid in ids:
        fpos = LANDMARKS[fid]
        flags.append((fpos, truth.dist(fpos), norm_deg(truth.bearing_to(fpos))))
    est = localize(flags, PoseEstimate(), PARAMS, neck_dir=0.0)
    assert est.pos.dist(truth) < 1e-3
