import * as fs from "fs";
import * as path from "path";
import * as protobuf from "protobufjs";
import { describe, expect, it } from "vitest";

import { decide, FORMATION_433, GOAL_X, WorldLike } from "../src/policy";

const PROTO_PATH = path.resolve(__dirname, "../../proto/game.proto");
const CORPUS_PATH = path.resolve(__dirname, "fixtures/parity_corpus.bin");
const MAGIC = "MSPC1\n";

function loadTypes() {
  const root = new protobuf.Root();
  root.loadSync(PROTO_PATH, { keepCase: true });
  return {
    State: root.lookupType("game.State"),
    Reply: root.lookupType("game.PlayerActionsReply"),
  };
}

function readCorpus(): Array<{ state: Buffer; reply: Buffer }> {
  const data = fs.readFileSync(CORPUS_PATH);
  expect(data.subarray(0, MAGIC.length).toString("ascii")).toBe(MAGIC);
  const entries: Array<{ state: Buffer; reply: Buffer }> = [];
  let off = MAGIC.length;
  while (off < data.length) {
    const stateLen = data.readUInt32BE(off);
    off += 4;
    const state = data.subarray(off, off + stateLen);
    off += stateLen;
    const replyLen = data.readUInt32BE(off);
    off += 4;
    const reply = data.subarray(off, off + replyLen);
    off += replyLen;
    entries.push({ state, reply });
  }
  return entries;
}

describe("decide", () => {
  it("returns an empty reply for unknown uniform numbers", () => {
    expect(decide({ self: { unum: 0 } })).toEqual({});
    expect(decide({ self: { unum: 12 } })).toEqual({});
    expect(decide({})).toEqual({});
  });

  it("shoots at the goal center when the ball is kickable", () => {
    const world: WorldLike = {
      self: { unum: 9, pos: { x: 30, y: 5 } },
      ball: { pos: { x: 30.5, y: 5.2 }, confidence: 1 },
    };
    const reply = decide(world);
    expect(reply.actions).toHaveLength(1);
    const kick = reply.actions![0].body_smart_kick!;
    // y is exactly zero and must be left off the wire object.
    expect(kick.target).toEqual({ x: GOAL_X });
    expect(kick.first_speed).toBe(2.5);
    expect(kick.max_steps).toBe(1);
  });

  it("chases the ball when this player is the fastest teammate", () => {
    const world: WorldLike = {
      self: { unum: 6, pos: { x: 0, y: 0 } },
      ball: { pos: { x: 10, y: 10 }, confidence: 0.9 },
      intercept: { fastest_our_unum: 6 },
    };
    const reply = decide(world);
    expect(reply.actions).toHaveLength(2);
    expect(reply.actions![0]).toEqual({ body_intercept_ball: {} });
    expect(reply.actions![1]).toEqual({ neck_turn_to_ball: {} });
  });

  it("holds the formation spot shifted toward a seen ball", () => {
    const world: WorldLike = {
      self: { unum: 7, pos: { x: -20, y: 0 } },
      ball: { pos: { x: 10, y: -20 }, confidence: 1 },
      intercept: { fastest_our_unum: 3 },
    };
    const reply = decide(world);
    const go = reply.actions![0].body_go_to_point!;
    expect(go.target).toEqual({ x: -15 + 0.3 * 10, y: 0.3 * -20 });
    expect(go.dist_thr).toBe(1);
    expect(go.max_power).toBe(80);
    expect(reply.actions![1]).toEqual({ neck_turn_to_ball: {} });
  });

  it("falls back to the bare formation spot with no ball information", () => {
    const reply = decide({ self: { unum: 1 } });
    const go = reply.actions![0].body_go_to_point!;
    // Spot y is zero for the keeper, so only x appears.
    expect(go.target).toEqual({ x: FORMATION_433[1].x });
  });

  it("does not chase when the intercept summary names someone else", () => {
    const world: WorldLike = {
      self: { unum: 6, pos: { x: 0, y: 0 } },
      ball: { pos: { x: 10, y: 10 }, confidence: 0.9 },
      intercept: { fastest_our_unum: 5 },
    };
    const reply = decide(world);
    expect(reply.actions![0].body_go_to_point).toBeDefined();
  });
});

describe("recorded corpus parity", () => {
  it("reproduces every recorded reply byte for byte", () => {
    const { State, Reply } = loadTypes();
    const entries = readCorpus();
    expect(entries.length).toBe(500);

    const kinds = new Map<string, number>();
    let mismatches = 0;
    for (const entry of entries) {
      const request = State.decode(entry.state) as unknown as {
        world?: WorldLike;
      };
      const reply = decide(request.world ?? {});
      const encoded = Buffer.from(
        Reply.encode(Reply.fromObject(reply)).finish()
      );
      if (!encoded.equals(entry.reply)) mismatches += 1;
      const first = reply.actions?.[0] ?? {};
      const kind = Object.keys(first)[0] ?? "empty";
      kinds.set(kind, (kinds.get(kind) ?? 0) + 1);
    }
    expect(mismatches).toBe(0);
    // The corpus must exercise all three policy branches, or the parity
    // statement would be hollow.
    expect(kinds.get("body_smart_kick") ?? 0).toBeGreaterThan(0);
    expect(kinds.get("body_intercept_ball") ?? 0).toBeGreaterThan(0);
    expect(kinds.get("body_go_to_point") ?? 0).toBeGreaterThan(0);
  });
});
