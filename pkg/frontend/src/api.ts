// Typed client for the session endpoint. Exactly one request is in
// flight per client; every user action maps to exactly one endpoint
// call, and all calls are recorded so a session can be replayed
// verbatim against a fresh server.

import type {
  GraphPayload,
  ResetPayload,
  SkeinPayload,
  StatePayload,
  VariablesPayload,
} from "./types.js";

export interface RecordedAction {
  method: "GET" | "POST";
  path: string;
  body?: unknown;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class PendingRequestError extends Error {
  constructor() {
    super("a request is already in flight");
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  readonly log: RecordedAction[] = [];
  private inFlight = false;

  constructor(
    readonly baseUrl: string,
    readonly session: string = "default",
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  get pending(): boolean {
    return this.inFlight;
  }

  private url(path: string): string {
    const sep = path.includes("?") ? "&" : "?";
    return `${this.baseUrl}${path}${sep}session=${encodeURIComponent(this.session)}`;
  }

  private async call<T>(action: RecordedAction, record = true): Promise<T> {
    const raw = await this.callRaw(action, record);
    return JSON.parse(raw) as T;
  }

  async callRaw(action: RecordedAction, record = true): Promise<string> {
    if (this.inFlight) {
      throw new PendingRequestError();
    }
    this.inFlight = true;
    try {
      const init: RequestInit = { method: action.method };
      if (action.body !== undefined) {
        init.body = JSON.stringify(action.body);
        init.headers = { "Content-Type": "application/json" };
      }
      const response = await this.fetchImpl(this.url(action.path), init);
      const text = await response.text();
      if (!response.ok) {
        let message = text;
        try {
          message = (JSON.parse(text) as { error?: string }).error ?? text;
        } catch {
          // keep raw body
        }
        throw new ApiError(response.status, message);
      }
      if (record) {
        this.log.push(action);
      }
      return text;
    } finally {
      this.inFlight = false;
    }
  }

  state(): Promise<StatePayload> {
    return this.call({ method: "GET", path: "/state" });
  }

  /** Raw bytes of GET /state, for byte-for-byte comparisons; not recorded. */
  stateRaw(): Promise<string> {
    return this.callRaw({ method: "GET", path: "/state" }, false);
  }

  reset(body: ResetPayload): Promise<StatePayload> {
    return this.call({ method: "POST", path: "/reset", body });
  }

  mutate(vertex: number): Promise<StatePayload> {
    return this.call({ method: "POST", path: "/mutate", body: { vertex } });
  }

  flip(arc: number): Promise<StatePayload> {
    return this.call({ method: "POST", path: "/flip", body: { arc } });
  }

  undo(): Promise<StatePayload> {
    return this.call({ method: "POST", path: "/undo", body: {} });
  }

  redo(): Promise<StatePayload> {
    return this.call({ method: "POST", path: "/redo", body: {} });
  }

  variables(): Promise<VariablesPayload> {
    return this.call({ method: "GET", path: "/variables" });
  }

  exchangeGraph(radius: number): Promise<GraphPayload> {
    return this.call({ method: "GET", path: `/exchange-graph?radius=${radius}` });
  }

  skein(arc1: string, arc2: string): Promise<SkeinPayload> {
    const a = encodeURIComponent(arc1);
    const b = encodeURIComponent(arc2);
    return this.call({ method: "GET", path: `/skein?arc1=${a}&arc2=${b}` });
  }
}

/** Replay a recorded action log against (a fresh session of) a server
 * and return the raw bytes of the final GET /state. */
export async function replayLog(
  baseUrl: string,
  session: string,
  log: readonly RecordedAction[],
  fetchImpl: FetchLike = fetch,
): Promise<string> {
  const client = new ApiClient(baseUrl, session, fetchImpl);
  for (const action of log) {
    await client.callRaw(action, false);
  }
  return client.stateRaw();
}

export function serializeLog(log: readonly RecordedAction[]): string {
  return JSON.stringify(log);
}

export function deserializeLog(text: string): RecordedAction[] {
  const parsed = JSON.parse(text) as RecordedAction[];
  if (!Array.isArray(parsed)) {
    throw new Error("action log must be an array");
  }
  return parsed;
}
