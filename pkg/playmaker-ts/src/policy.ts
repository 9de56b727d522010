/**
 * Reference decision policy.
 *
 * This mirrors the Python builtin playmaker rule for rule, constant for
 * constant, and must stay bit-compatible with it: given the same State
 * message, both implementations produce byte-identical reply messages.
 * That is why reply objects omit zero-valued scalars (proto3 encoders on
 * the Python side never write defaults, and protobufjs writes whatever
 * properties exist) and why all arithmetic sticks to plain double math in
 * the same evaluation order.
 */

/** Field-relative types as decoded with keepCase (snake_case) naming. */
export interface VectorLike {
  x?: number;
  y?: number;
}

export interface BallLike {
  pos?: VectorLike | null;
  vel?: VectorLike | null;
  confidence?: number;
}

export interface SelfLike {
  unum?: number;
  pos?: VectorLike | null;
}

export interface InterceptLike {
  self_cycles?: number;
  fastest_our_unum?: number;
  fastest_our_cycles?: number;
  fastest_opp_unum?: number;
  fastest_opp_cycles?: number;
}

export interface WorldLike {
  self?: SelfLike | null;
  ball?: BallLike | null;
  intercept?: InterceptLike | null;
}

export interface PlayerActionObject {
  body_smart_kick?: {
    target: VectorLike;
    first_speed: number;
    speed_thr: number;
    max_steps: number;
  };
  body_intercept_ball?: Record<string, never>;
  neck_turn_to_ball?: Record<string, never>;
  body_go_to_point?: {
    target: VectorLike;
    dist_thr: number;
    max_power: number;
  };
}

export interface PlayerActionsReplyObject {
  actions?: PlayerActionObject[];
}

/**
 * Policy constants, pinned to the default simulation parameters rather
 * than read from the handshake, so every implementation agrees without
 * sharing code.
 */
export const KICKABLE_AREA = 1.085;
export const GOAL_X = 52.5;
export const KICK_FIRST_SPEED = 2.5;
export const KICK_SPEED_THR = 1.0;
export const KICK_MAX_STEPS = 1;
export const GO_DIST_THR = 1.0;
export const GO_MAX_POWER = 80.0;
export const BALL_SHIFT = 0.3;

/** Keeper, back four, middle three, front three; attacking toward +x. */
export const FORMATION_433: Record<number, { x: number; y: number }> = {
  1: { x: -50.0, y: 0.0 },
  2: { x: -35.0, y: -15.0 },
  3: { x: -35.0, y: -5.0 },
  4: { x: -35.0, y: 5.0 },
  5: { x: -35.0, y: 15.0 },
  6: { x: -15.0, y: -10.0 },
  7: { x: -15.0, y: 0.0 },
  8: { x: -15.0, y: 10.0 },
  9: { x: 5.0, y: -20.0 },
  10: { x: 5.0, y: 0.0 },
  11: { x: 5.0, y: 20.0 },
};

/**
 * A vector object that omits zero components, matching the proto3 rule
 * of never encoding default-valued scalars.
 */
const vec = (x: number, y: number): VectorLike => {
  const v: VectorLike = {};
  if (x !== 0) v.x = x;
  if (y !== 0) v.y = y;
  return v;
};

/**
 * Decides the player actions for one world model.
 *
 *  - ball within kicking range: drive it at the opponent goal center;
 *  - this player is its team's quickest to the ball: go collect it;
 *  - otherwise hold the 4-3-3 formation spot, shifted toward the ball.
 */
export function decide(world: WorldLike): PlayerActionsReplyObject {
  const me = world.self ?? {};
  const unum = me.unum ?? 0;
  const spot = FORMATION_433[unum];
  if (!spot) return {};

  const ball = world.ball ?? {};
  const confidence = ball.confidence ?? 0;
  const ballPos = ball.pos ?? {};
  const bx = ballPos.x ?? 0;
  const by = ballPos.y ?? 0;

  if (confidence > 0) {
    const mePos = me.pos ?? {};
    const dx = bx - (mePos.x ?? 0);
    const dy = by - (mePos.y ?? 0);
    if (Math.sqrt(dx * dx + dy * dy) <= KICKABLE_AREA) {
      return {
        actions: [
          {
            body_smart_kick: {
              target: vec(GOAL_X, 0),
              first_speed: KICK_FIRST_SPEED,
              speed_thr: KICK_SPEED_THR,
              max_steps: KICK_MAX_STEPS,
            },
          },
        ],
      };
    }
    if ((world.intercept?.fastest_our_unum ?? 0) === unum) {
      return {
        actions: [{ body_intercept_ball: {} }, { neck_turn_to_ball: {} }],
      };
    }
  }

  let tx = spot.x;
  let ty = spot.y;
  if (confidence > 0) {
    tx = spot.x + BALL_SHIFT * bx;
    ty = spot.y + BALL_SHIFT * by;
  }
  return {
    actions: [
      {
        body_go_to_point: {
          target: vec(tx, ty),
          dist_thr: GO_DIST_THR,
          max_power: GO_MAX_POWER,
        },
      },
      { neck_turn_to_ball: {} },
    ],
  };
}
