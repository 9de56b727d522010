/**
 * Trainer-side episodic control, served through GetTrainerActions.
 *
 * Given an episode spec (initial ball state, optional player placements,
 * terminal predicate), the controller answers each trainer query with
 * either no actions (mid-episode) or a reset burst (ball move, player
 * moves, play_on) when the previous episode has ended. The first query
 * stages the first episode.
 */

import * as fs from "fs";

export interface EpisodeSpecConfig {
  ball: { x: number; y: number; vx?: number; vy?: number };
  players?: Array<{
    side: string;
    unum: number;
    x: number;
    y: number;
    dir?: number;
  }>;
  terminal: { kind: "GoalScored" | "BallOut" | "MaxCycles"; n?: number };
  reward?: string;
}

/** Trainer world as decoded by the service (enums as names, int64 as string). */
export interface TrainerWorldLike {
  cycle?: number | string | { toNumber(): number };
  play_mode?: string | number;
}

export interface TrainerActionsReplyObject {
  actions?: Array<Record<string, unknown>>;
}

const FIELD_X = 52.5;
const FIELD_Y = 34.0;

const PM_NAMES = [
  "PM_BEFORE_KICK_OFF",
  "PM_PLAY_ON",
  "PM_TIME_OVER",
  "PM_KICK_OFF_OURS",
  "PM_KICK_OFF_THEIRS",
  "PM_KICK_IN_OURS",
  "PM_KICK_IN_THEIRS",
  "PM_GOAL_KICK_OURS",
  "PM_GOAL_KICK_THEIRS",
  "PM_CORNER_KICK_OURS",
  "PM_CORNER_KICK_THEIRS",
  "PM_GOAL_OURS",
  "PM_GOAL_THEIRS",
];

const BALL_OUT_PM = new Set([
  "PM_KICK_IN_OURS",
  "PM_KICK_IN_THEIRS",
  "PM_GOAL_KICK_OURS",
  "PM_GOAL_KICK_THEIRS",
  "PM_CORNER_KICK_OURS",
  "PM_CORNER_KICK_THEIRS",
]);

function modeName(mode: string | number | undefined): string {
  if (typeof mode === "number") return PM_NAMES[mode] ?? "";
  return mode ?? "";
}

function cycleNumber(cycle: TrainerWorldLike["cycle"]): number {
  if (cycle == null) return 0;
  if (typeof cycle === "object") return cycle.toNumber();
  return Number(cycle);
}

/**
 * Maps an absolute wire play mode ("goal_l", "kick_in_r", ...) to the
 * team-relative enum name a trainer's state message would carry.
 */
export function pmFromWire(mode: string, ourSide: "l" | "r"): string {
  const fixed: Record<string, string> = {
    before_kick_off: "PM_BEFORE_KICK_OFF",
    play_on: "PM_PLAY_ON",
    time_over: "PM_TIME_OVER",
  };
  if (mode in fixed) return fixed[mode];
  const side = mode.endsWith("_l") ? "l" : mode.endsWith("_r") ? "r" : null;
  if (!side) return "";
  const base = mode.slice(0, -2).toUpperCase();
  const relation = side === ourSide ? "OURS" : "THEIRS";
  return `PM_${base}_${relation}`;
}

export function validateEpisodeSpec(spec: EpisodeSpecConfig): void {
  if (!spec || typeof spec !== "object" || !spec.ball || !spec.terminal) {
    throw new Error("episode spec needs ball and terminal entries");
  }
  const kinds = ["GoalScored", "BallOut", "MaxCycles"];
  if (!kinds.includes(spec.terminal.kind)) {
    throw new Error(`unknown terminal kind ${spec.terminal.kind}`);
  }
  if (spec.terminal.kind === "MaxCycles" && (spec.terminal.n ?? 0) < 1) {
    throw new Error("MaxCycles needs n >= 1");
  }
  const placements = [
    { x: spec.ball.x, y: spec.ball.y, what: "ball" },
    ...(spec.players ?? []).map((p) => ({
      x: p.x,
      y: p.y,
      what: `player ${p.side}${p.unum}`,
    })),
  ];
  for (const p of placements) {
    if (Math.abs(p.x) > FIELD_X || Math.abs(p.y) > FIELD_Y) {
      throw new Error(`${p.what} placed outside the field at ${p.x},${p.y}`);
    }
  }
}

export function loadEpisodeSpec(path: string): EpisodeSpecConfig {
  const spec = JSON.parse(fs.readFileSync(path, "utf8")) as EpisodeSpecConfig;
  validateEpisodeSpec(spec);
  return spec;
}

export class EpisodeController {
  /** Cycle stamps of every reset burst, in emission order. */
  readonly resetCycles: number[] = [];
  private episodeStart: number | null = null;
  private awaitingResume = false;

  constructor(private readonly spec: EpisodeSpecConfig) {
    validateEpisodeSpec(spec);
  }

  decide(world: TrainerWorldLike): TrainerActionsReplyObject {
    const cycle = cycleNumber(world.cycle);
    const mode = modeName(world.play_mode);
    if (this.episodeStart === null) {
      return this.stage(cycle);
    }
    if (this.awaitingResume) {
      // The reset burst lands one tick later; do not re-trigger on the
      // terminal state it is about to replace.
      if (mode === "PM_PLAY_ON") {
        this.awaitingResume = false;
        this.episodeStart = cycle;
      }
      return {};
    }
    if (this.terminal(mode, cycle)) {
      return this.stage(cycle);
    }
    return {};
  }

  private terminal(mode: string, cycle: number): boolean {
    switch (this.spec.terminal.kind) {
      case "GoalScored":
        return mode === "PM_GOAL_OURS" || mode === "PM_GOAL_THEIRS";
      case "BallOut":
        return BALL_OUT_PM.has(mode);
      case "MaxCycles":
        return cycle - (this.episodeStart ?? cycle) >= (this.spec.terminal.n ?? 1);
    }
  }

  private stage(cycle: number): TrainerActionsReplyObject {
    this.resetCycles.push(cycle);
    this.episodeStart = cycle;
    this.awaitingResume = true;
    const ball = this.spec.ball;
    const actions: Array<Record<string, unknown>> = [
      {
        move_ball: {
          pos: { x: ball.x, y: ball.y },
          vel: { x: ball.vx ?? 0, y: ball.vy ?? 0 },
        },
      },
    ];
    for (const p of this.spec.players ?? []) {
      actions.push({
        move_player: {
          side: p.side,
          unum: p.unum,
          pos: { x: p.x, y: p.y },
          body_dir: p.dir ?? 0,
        },
      });
    }
    actions.push({ change_play_mode: { mode: "SPM_PLAY_ON" } });
    return { actions };
  }
}

/** Renders one reply action as the trainer wire command it stands for. */
export function directiveToWire(action: Record<string, any>): string {
  if (action.move_ball) {
    const a = action.move_ball;
    const pos = a.pos ?? {};
    const vel = a.vel ?? {};
    return `(move (ball) ${pos.x ?? 0} ${pos.y ?? 0} ${vel.x ?? 0} ${vel.y ?? 0})`;
  }
  if (action.move_player) {
    const a = action.move_player;
    const pos = a.pos ?? {};
    return `(move (player ${a.side} ${a.unum}) ${pos.x ?? 0} ${pos.y ?? 0} ${a.body_dir ?? 0})`;
  }
  if (action.change_play_mode) {
    const name = String(action.change_play_mode.mode ?? "");
    const wire = name.replace(/^SPM_/, "").toLowerCase();
    return `(change_mode ${wire})`;
  }
  if (action.recover) {
    return "(recover)";
  }
  throw new Error(`unknown trainer action ${Object.keys(action)}`);
}
