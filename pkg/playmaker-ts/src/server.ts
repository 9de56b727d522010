/**
 * gRPC server exposing the reference policy behind the Game service.
 *
 * Registration bookkeeping matches the Python service wrapper: every
 * register_id must complete the init / server-params / player-params /
 * player-type sequence before any Get* query, otherwise the call fails
 * with FAILED_PRECONDITION.
 */

import * as grpc from "@grpc/grpc-js";
import * as protoLoader from "@grpc/proto-loader";
import * as path from "path";
import { decide, WorldLike } from "./policy";
import {
  EpisodeController,
  EpisodeSpecConfig,
  loadEpisodeSpec,
  TrainerWorldLike,
} from "./trainer";

const PROTO_PATH = path.resolve(__dirname, "../../proto/game.proto");

/** Known decision policies, selectable with --policy. */
export const POLICY_IDS = ["formation433"];

interface Registration {
  init: boolean;
  serverParams: boolean;
  playerParams: boolean;
  playerTypes: number;
}

interface RequestLike {
  register_id?: number;
  world?: WorldLike | null;
}

type UnaryCall = grpc.ServerUnaryCall<RequestLike, unknown>;
type UnaryCallback = grpc.sendUnaryData<unknown>;

export class GameService {
  private readonly registrations = new Map<number, Registration>();
  readonly episodes: EpisodeController | null;
  /** Optional hook receiving per-call decision latency in milliseconds. */
  onPlayerLatency: ((ms: number) => void) | null = null;

  constructor(episodeSpec?: EpisodeSpecConfig) {
    this.episodes = episodeSpec ? new EpisodeController(episodeSpec) : null;
  }

  private entry(id: number): Registration {
    let reg = this.registrations.get(id);
    if (!reg) {
      reg = { init: false, serverParams: false, playerParams: false, playerTypes: 0 };
      this.registrations.set(id, reg);
    }
    return reg;
  }

  private ready(id: number): boolean {
    const reg = this.registrations.get(id);
    return (
      !!reg && reg.init && reg.serverParams && reg.playerParams && reg.playerTypes > 0
    );
  }

  private guard(call: UnaryCall, callback: UnaryCallback): boolean {
    const id = call.request.register_id ?? 0;
    if (!this.ready(id)) {
      callback({
        code: grpc.status.FAILED_PRECONDITION,
        message: `register_id ${id} has not completed registration`,
      });
      return false;
    }
    return true;
  }

  readonly handlers: grpc.UntypedServiceImplementation = {
    SendInitMessage: (call: UnaryCall, callback: UnaryCallback) => {
      this.entry(call.request.register_id ?? 0).init = true;
      callback(null, { ok: true });
    },
    SendServerParams: (call: UnaryCall, callback: UnaryCallback) => {
      this.entry(call.request.register_id ?? 0).serverParams = true;
      callback(null, { ok: true });
    },
    SendPlayerParams: (call: UnaryCall, callback: UnaryCallback) => {
      this.entry(call.request.register_id ?? 0).playerParams = true;
      callback(null, { ok: true });
    },
    SendPlayerType: (call: UnaryCall, callback: UnaryCallback) => {
      this.entry(call.request.register_id ?? 0).playerTypes += 1;
      callback(null, { ok: true });
    },
    GetPlayerActions: (call: UnaryCall, callback: UnaryCallback) => {
      const start = process.hrtime.bigint();
      if (!this.guard(call, callback)) return;
      const reply = decide(call.request.world ?? {});
      if (this.onPlayerLatency) {
        this.onPlayerLatency(Number(process.hrtime.bigint() - start) / 1e6);
      }
      callback(null, reply);
    },
    GetCoachActions: (call: UnaryCall, callback: UnaryCallback) => {
      if (!this.guard(call, callback)) return;
      callback(null, { actions: [{ do_nothing: {} }] });
    },
    GetTrainerActions: (call: UnaryCall, callback: UnaryCallback) => {
      if (!this.guard(call, callback)) return;
      if (!this.episodes) {
        callback(null, {});
        return;
      }
      const world = (call.request.world ?? {}) as TrainerWorldLike;
      callback(null, this.episodes.decide(world));
    },
  };
}

export function loadGameDefinition(): grpc.ServiceDefinition {
  const packageDefinition = protoLoader.loadSync(PROTO_PATH, {
    keepCase: true,
    longs: String,
    enums: String,
    defaults: true,
    oneofs: true,
  });
  const proto = grpc.loadPackageDefinition(packageDefinition) as unknown as {
    game: { Game: { service: grpc.ServiceDefinition } };
  };
  return proto.game.Game.service;
}

export interface RunningServer {
  server: grpc.Server;
  port: number;
}

export function startServer(
  host: string,
  port: number,
  episodeSpec?: EpisodeSpecConfig,
  service?: GameService
): Promise<RunningServer> {
  const server = new grpc.Server();
  const game = service ?? new GameService(episodeSpec);
  server.addService(loadGameDefinition(), game.handlers);
  return new Promise((resolve, reject) => {
    server.bindAsync(
      `${host}:${port}`,
      grpc.ServerCredentials.createInsecure(),
      (error, boundPort) => {
        if (error) {
          reject(error);
          return;
        }
        resolve({ server, port: boundPort });
      }
    );
  });
}

function flagValue(name: string): string | undefined {
  const idx = process.argv.indexOf(name);
  return idx >= 0 ? process.argv[idx + 1] : undefined;
}

function main(): void {
  const port = Number(flagValue("--port") ?? 50051);
  const policy = flagValue("--policy") ?? POLICY_IDS[0];
  if (!POLICY_IDS.includes(policy)) {
    console.error(`unknown policy ${policy}; known: ${POLICY_IDS.join(", ")}`);
    process.exit(1);
  }
  const specPath = flagValue("--episodes");
  let episodeSpec: EpisodeSpecConfig | undefined;
  if (specPath) {
    try {
      episodeSpec = loadEpisodeSpec(specPath);
    } catch (error) {
      console.error(`bad episode spec: ${error}`);
      process.exit(1);
    }
  }
  startServer("127.0.0.1", port, episodeSpec)
    .then(({ port: boundPort }) => {
      console.log(`listening ${boundPort}`);
    })
    .catch((error) => {
      console.error(`failed to bind: ${error}`);
      process.exit(1);
    });
}

if (require.main === module) {
  main();
}
