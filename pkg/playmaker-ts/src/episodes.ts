/**
 * Scripted episode runner: boots a simulation server, drives ten episodes
 * through the trainer port, and prints a one-line JSON report.
 *
 * Episode kinds exercised:
 *   - static placements that run out the cycle budget (exact-reset checks)
 *   - a shot into the right goal (reward +1 for the left side)
 *   - an own goal into the left goal (reward -1)
 *   - balls crossing the touchline and the goal line wide of the posts
 */

import { spawn, ChildProcess } from "child_process";
import { EpisodeSpec, StepResult, TrainerEnv } from "./env";

interface Scripted {
  name: string;
  spec: EpisodeSpec;
  expectReason: string;
  expectReward: number;
  /** Static episodes must come back byte-exact from the reset. */
  exact: boolean;
}

// Dyadic coordinates survive the text round trip without rounding, which
// keeps the exactness checks honest.
const SCRIPT: Scripted[] = [
  { name: "center-idle", spec: { ball: { x: 0, y: 0 }, maxCycles: 30 }, expectReason: "MaxCycles", expectReward: 0, exact: true },
  { name: "offset-idle", spec: { ball: { x: 10.5, y: -7.25 }, maxCycles: 25 }, expectReason: "MaxCycles", expectReward: 0, exact: true },
  { name: "far-idle", spec: { ball: { x: -30.25, y: 20.125 }, maxCycles: 20 }, expectReason: "MaxCycles", expectReward: 0, exact: true },
  { name: "goal", spec: { ball: { x: 48, y: 0, vx: 3 }, maxCycles: 60 }, expectReason: "GoalScored", expectReward: 1, exact: false },
  { name: "own-goal", spec: { ball: { x: -48, y: 0, vx: -3 }, maxCycles: 60 }, expectReason: "GoalScored", expectReward: -1, exact: false },
  { name: "touchline-out", spec: { ball: { x: 0, y: 30, vy: 3 }, maxCycles: 60 }, expectReason: "BallOut", expectReward: 0, exact: false },
  { name: "wide-of-goal", spec: { ball: { x: 48, y: 20, vx: 3 }, maxCycles: 60 }, expectReason: "BallOut", expectReward: 0, exact: false },
  { name: "near-idle", spec: { ball: { x: 5.5, y: 5.5 }, maxCycles: 15 }, expectReason: "MaxCycles", expectReward: 0, exact: true },
  { name: "left-idle", spec: { ball: { x: -12.75, y: -3.5 }, maxCycles: 15 }, expectReason: "MaxCycles", expectReward: 0, exact: true },
  { name: "second-goal", spec: { ball: { x: 48, y: 3, vx: 3 }, maxCycles: 60 }, expectReason: "GoalScored", expectReward: 1, exact: false },
];

const GOAL_EPISODE_INDEX = SCRIPT.findIndex((s) => s.name === "goal");

const SERVER_ARGS = [
  "-m",
  "minisoccer",
  "run-server",
  "--player-port",
  "0",
  "--trainer-port",
  "0",
  "--pacing",
  "timed",
  "--tick-scale",
  "0.05",
  "--seed",
  "5",
  "--sim",
  "half_cycles=100000",
];

export function startServer(): Promise<{
  child: ChildProcess;
  trainerPort: number;
}> {
  return new Promise((resolve, reject) => {
    const child = spawn("python3", SERVER_ARGS, {
      stdio: ["ignore", "pipe", "inherit"],
    });
    let buffer = "";
    const onData = (chunk: Buffer) => {
      buffer += chunk.toString("utf8");
      const match = buffer.match(/serving on \S+ player=(\d+) trainer=(\d+)/);
      if (match) {
        child.stdout!.off("data", onData);
        resolve({ child, trainerPort: Number(match[2]) });
      }
    };
    child.stdout!.on("data", onData);
    child.on("error", reject);
    child.on("exit", (code) =>
      reject(new Error(`server exited early with code ${code}`))
    );
    const bannerTimer = setTimeout(
      () => reject(new Error("server banner not seen")),
      15000
    );
    bannerTimer.unref();
  });
}

async function runEpisode(
  env: TrainerEnv,
  scripted: Scripted
): Promise<{ reward: number; reason: string; resetExact: boolean }> {
  const first = await env.reset(scripted.spec);
  let resetExact = true;
  if (scripted.exact) {
    const b = scripted.spec.ball;
    resetExact =
      Math.abs(first.ball.x - b.x) <= 1e-9 &&
      Math.abs(first.ball.y - b.y) <= 1e-9 &&
      first.ball.vx === 0 &&
      first.ball.vy === 0 &&
      first.playMode === "play_on";
  }
  let result: StepResult;
  do {
    result = await env.step();
  } while (!result.done);
  return { reward: result.reward, reason: result.reason ?? "", resetExact };
}

async function main(): Promise<number> {
  const { child, trainerPort } = await startServer();
  const env = new TrainerEnv({ rewardSide: "l", timeoutMs: 10000 });
  let failures = 0;
  const rewards: number[] = [];
  const reasons: string[] = [];
  let resetsOk = true;
  try {
    await env.connect(trainerPort);
    for (const scripted of SCRIPT) {
      const outcome = await runEpisode(env, scripted);
      rewards.push(outcome.reward);
      reasons.push(outcome.reason);
      if (!outcome.resetExact) {
        resetsOk = false;
        console.error(`episode ${scripted.name}: reset drifted`);
      }
      if (
        outcome.reason !== scripted.expectReason ||
        outcome.reward !== scripted.expectReward
      ) {
        failures += 1;
        console.error(
          `episode ${scripted.name}: got ${outcome.reason}/${outcome.reward},` +
            ` wanted ${scripted.expectReason}/${scripted.expectReward}`
        );
      }
    }
  } finally {
    env.close();
    child.kill("SIGTERM");
  }
  const report = {
    episodes: rewards.length,
    rewards,
    reasons,
    resets_ok: resetsOk,
    goal_episode_reward: rewards[GOAL_EPISODE_INDEX] ?? 0,
  };
  console.log(JSON.stringify(report));
  return failures === 0 && resetsOk && rewards.length === SCRIPT.length ? 0 : 1;
}

if (require.main === module) {
  main().then(
    (code) => process.exit(code),
    (err) => {
      console.error(String(err && err.stack ? err.stack : err));
      process.exit(1);
    }
  );
}
