/**
 * TrainerEnv - episodic gym-style environment over the trainer UDP port.
 *
 * The trainer is a privileged client: it can reposition the ball and the
 * players and change the play mode, and it receives a noise-free full
 * state snapshot every simulation cycle. reset() uses those powers to
 * stage an episode; step() consumes the next snapshot and scores it.
 */

import * as dgram from "dgram";
import { head, parseSexpr, SExpr } from "./sexpr";

export interface PlayerSnapshot {
  side: string;
  unum: number;
  x: number;
  y: number;
  vx: number;
  vy: number;
  bodyDir: number;
  neckDir: number;
  stamina: number;
  effort: number;
}

export interface FullStateSnapshot {
  cycle: number;
  playMode: string;
  scoreL: number;
  scoreR: number;
  ball: { x: number; y: number; vx: number; vy: number };
  players: PlayerSnapshot[];
}

export interface PlayerPlacement {
  side: string;
  unum: number;
  x: number;
  y: number;
  dir?: number;
}

export interface EpisodeSpec {
  ball: { x: number; y: number; vx?: number; vy?: number };
  players?: PlayerPlacement[];
  maxCycles?: number;
}

export type TerminalReason = "GoalScored" | "BallOut" | "MaxCycles";

export interface StepResult {
  state: FullStateSnapshot;
  reward: number;
  done: boolean;
  reason?: TerminalReason;
}

export interface TrainerEnvOptions {
  host?: string;
  /** Side whose goals count +1; the other side's goals count -1. */
  rewardSide?: "l" | "r";
  /** Per-await timeout for server traffic, milliseconds. */
  timeoutMs?: number;
}

const BALL_OUT_MODES = ["kick_in_", "corner_kick_", "goal_kick_"];

function num(expr: SExpr): number {
  if (typeof expr !== "string") throw new Error(`expected atom, got list`);
  const value = Number(expr);
  if (Number.isNaN(value)) throw new Error(`not a number: ${expr}`);
  return value;
}

function parseFullState(expr: SExpr): FullStateSnapshot {
  if (!Array.isArray(expr)) throw new Error("fullstate must be a list");
  const state: FullStateSnapshot = {
    cycle: num(expr[1]),
    playMode: "",
    scoreL: 0,
    scoreR: 0,
    ball: { x: 0, y: 0, vx: 0, vy: 0 },
    players: [],
  };
  for (const part of expr.slice(2)) {
    if (!Array.isArray(part) || part.length === 0) continue;
    const first = part[0];
    if (first === "pmode") {
      state.playMode = String(part[1]);
    } else if (first === "score") {
      state.scoreL = num(part[1]);
      state.scoreR = num(part[2]);
    } else if (first === "ball") {
      state.ball = {
        x: num(part[1]),
        y: num(part[2]),
        vx: num(part[3]),
        vy: num(part[4]),
      };
    } else if (Array.isArray(first) && first[0] === "p") {
      state.players.push({
        side: String(first[1]),
        unum: num(first[2]),
        x: num(part[1]),
        y: num(part[2]),
        vx: num(part[3]),
        vy: num(part[4]),
        bodyDir: num(part[5]),
        neckDir: num(part[6]),
        stamina: num(part[7]),
        effort: num(part[8]),
      });
    }
  }
  return state;
}

export class TrainerEnv {
  private readonly host: string;
  private readonly rewardSide: "l" | "r";
  private readonly timeoutMs: number;
  private socket: dgram.Socket | null = null;
  private port = 0;
  private readonly states: FullStateSnapshot[] = [];
  private waiter: ((state: FullStateSnapshot) => void) | null = null;
  private handshake = { init: false, server: false, player: false, type: false };
  private handshakeWaiter: (() => void) | null = null;
  private lastCycle = -1;
  private stepsSinceReset = 0;
  private maxCycles = 100;
  private closed = false;

  constructor(options: TrainerEnvOptions = {}) {
    this.host = options.host ?? "127.0.0.1";
    this.rewardSide = options.rewardSide ?? "l";
    this.timeoutMs = options.timeoutMs ?? 5000;
  }

  /** Connects to the trainer port and completes the registration burst. */
  async connect(trainerPort: number): Promise<void> {
    this.port = trainerPort;
    this.socket = dgram.createSocket("udp4");
    this.socket.on("message", (data) => this.onMessage(data));
    this.send("(init (version 18))");
    await this.withTimeout(
      new Promise<void>((resolve) => {
        this.handshakeWaiter = resolve;
        this.checkHandshake();
      }),
      "registration reply"
    );
  }

  /**
   * Stages an episode: forces play_on, then places the ball and any listed
   * players. Resolves with the first snapshot showing the staged world.
   */
  async reset(spec: EpisodeSpec): Promise<FullStateSnapshot> {
    this.requireSocket();
    const sentAfter = this.lastCycle;
    this.stepsSinceReset = 0;
    this.maxCycles = spec.maxCycles ?? 100;
    const vx = spec.ball.vx ?? 0;
    const vy = spec.ball.vy ?? 0;
    this.send("(change_mode play_on)");
    this.send(`(move (ball) ${spec.ball.x} ${spec.ball.y} ${vx} ${vy})`);
    for (const p of spec.players ?? []) {
      this.send(
        `(move (player ${p.side} ${p.unum}) ${p.x} ${p.y} ${p.dir ?? 0})`
      );
    }
    this.send("(recover)");

    // The directives land on the next tick; a moving ball then advances
    // every cycle, so acceptance widens with its speed.
    const tolerance = Math.max(1e-6, 3 * (Math.abs(vx) + Math.abs(vy)));
    const deadline = Date.now() + this.timeoutMs;
    for (;;) {
      if (Date.now() > deadline) {
        throw new Error("reset not observed before timeout");
      }
      const state = await this.nextState();
      if (
        state.cycle > sentAfter &&
        state.playMode === "play_on" &&
        Math.abs(state.ball.x - spec.ball.x) <= tolerance &&
        Math.abs(state.ball.y - spec.ball.y) <= tolerance
      ) {
        return state;
      }
    }
  }

  /** Consumes the next snapshot and scores it. */
  async step(): Promise<StepResult> {
    this.requireSocket();
    const state = await this.nextState();
    this.stepsSinceReset += 1;
    if (state.playMode === "goal_l" || state.playMode === "goal_r") {
      const scorer = state.playMode === "goal_l" ? "l" : "r";
      return {
        state,
        reward: scorer === this.rewardSide ? 1 : -1,
        done: true,
        reason: "GoalScored",
      };
    }
    if (BALL_OUT_MODES.some((prefix) => state.playMode.startsWith(prefix))) {
      return { state, reward: 0, done: true, reason: "BallOut" };
    }
    if (this.stepsSinceReset >= this.maxCycles) {
      return { state, reward: 0, done: true, reason: "MaxCycles" };
    }
    return { state, reward: 0, done: false };
  }

  close(): void {
    this.closed = true;
    if (this.socket) {
      this.socket.close();
      this.socket = null;
    }
  }

  /** Raw access: the next snapshot, without any episodic bookkeeping. */
  next(): Promise<FullStateSnapshot> {
    this.requireSocket();
    return this.nextState();
  }

  /** Raw access: sends one trainer wire command as-is. */
  command(wire: string): void {
    this.send(wire);
  }

  private onMessage(data: Buffer): void {
    let text = data.toString("ascii");
    while (text.endsWith("\u0000")) text = text.slice(0, -1);
    let expr: SExpr;
    try {
      expr = parseSexpr(text);
    } catch {
      return; // not ours to understand; the server also sends hear noise
    }
    const kind = head(expr);
    if (kind === "fullstate") {
      const state = parseFullState(expr);
      this.lastCycle = state.cycle;
      if (this.waiter) {
        const resolve = this.waiter;
        this.waiter = null;
        resolve(state);
      } else {
        this.states.push(state);
        if (this.states.length > 20000) this.states.shift();
      }
      return;
    }
    if (kind === "ok") {
      this.handshake.init = true;
    } else if (kind === "init") {
      this.handshake.init = true;
    } else if (kind === "server_param") {
      this.handshake.server = true;
    } else if (kind === "player_param") {
      this.handshake.player = true;
    } else if (kind === "player_type") {
      this.handshake.type = true;
    }
    this.checkHandshake();
  }

  private checkHandshake(): void {
    const h = this.handshake;
    if (h.init && h.server && h.player && h.type && this.handshakeWaiter) {
      const resolve = this.handshakeWaiter;
      this.handshakeWaiter = null;
      resolve();
    }
  }

  private nextState(): Promise<FullStateSnapshot> {
    const queued = this.states.shift();
    if (queued) return Promise.resolve(queued);
    return this.withTimeout(
      new Promise<FullStateSnapshot>((resolve) => {
        this.waiter = resolve;
      }),
      "full state snapshot"
    );
  }

  private send(command: string): void {
    this.requireSocket();
    this.socket!.send(Buffer.from(command + "\u0000", "ascii"), this.port, this.host);
  }

  private requireSocket(): void {
    if (this.closed || !this.socket) {
      throw new Error("environment is closed");
    }
  }

  private withTimeout<T>(promise: Promise<T>, what: string): Promise<T> {
    return new Promise<T>((resolve, reject) => {
      const timer = setTimeout(
        () => reject(new Error(`timed out waiting for ${what}`)),
        this.timeoutMs
      );
      promise.then(
        (value) => {
          clearTimeout(timer);
          resolve(value);
        },
        (error) => {
          clearTimeout(timer);
          reject(error);
        }
      );
    });
  }
}
