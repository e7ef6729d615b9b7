// Typed client for the session endpoint. Exactly one request is in
// flight per client; every user action maps to exactly one endpoint
// call, and all calls are recorded so a session can be replayed
// verbatim against a fresh server.
export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
export class PendingRequestError extends Error {
    constructor() {
        super("a request is already in flight");
    }
}
export class ApiClient {
    constructor(baseUrl, session = "default", fetchImpl = fetch) {
        this.baseUrl = baseUrl;
        this.session = session;
        this.fetchImpl = fetchImpl;
        this.log = [];
        this.inFlight = false;
    }
    get pending() {
        return this.inFlight;
    }
    url(path) {
        const sep = path.includes("?") ? "&" : "?";
        return `${this.baseUrl}${path}${sep}session=${encodeURIComponent(this.session)}`;
    }
    async call(action, record = true) {
        const raw = await this.callRaw(action, record);
        return JSON.parse(raw);
    }
    async callRaw(action, record = true) {
        if (this.inFlight) {
            throw new PendingRequestError();
        }
        this.inFlight = true;
        try {
            const init = { method: action.method };
            if (action.body !== undefined) {
                init.body = JSON.stringify(action.body);
                init.headers = { "Content-Type": "application/json" };
            }
            const response = await this.fetchImpl(this.url(action.path), init);
            const text = await response.text();
            if (!response.ok) {
                let message = text;
                try {
                    message = JSON.parse(text).error ?? text;
                }
                catch {
                    // keep raw body
                }
                throw new ApiError(response.status, message);
            }
            if (record) {
                this.log.push(action);
            }
            return text;
        }
        finally {
            this.inFlight = false;
        }
    }
    state() {
        return this.call({ method: "GET", path: "/state" });
    }
    /** Raw bytes of GET /state, for byte-for-byte comparisons; not recorded. */
    stateRaw() {
        return this.callRaw({ method: "GET", path: "/state" }, false);
    }
    reset(body) {
        return this.call({ method: "POST", path: "/reset", body });
    }
    mutate(vertex) {
        return this.call({ method: "POST", path: "/mutate", body: { vertex } });
    }
    flip(arc) {
        return this.call({ method: "POST", path: "/flip", body: { arc } });
    }
    undo() {
        return this.call({ method: "POST", path: "/undo", body: {} });
    }
    redo() {
        return this.call({ method: "POST", path: "/redo", body: {} });
    }
    variables() {
        return this.call({ method: "GET", path: "/variables" });
    }
    exchangeGraph(radius) {
        return this.call({ method: "GET", path: `/exchange-graph?radius=${radius}` });
    }
    skein(arc1, arc2) {
        const a = encodeURIComponent(arc1);
        const b = encodeURIComponent(arc2);
        return this.call({ method: "GET", path: `/skein?arc1=${a}&arc2=${b}` });
    }
}
/** Replay a recorded action log against (a fresh session of) a server
 * and return the raw bytes of the final GET /state. */
export async function replayLog(baseUrl, session, log, fetchImpl = fetch) {
    const client = new ApiClient(baseUrl, session, fetchImpl);
    for (const action of log) {
        await client.callRaw(action, false);
    }
    return client.stateRaw();
}
export function serializeLog(log) {
    return JSON.stringify(log);
}
export function deserializeLog(text) {
    const parsed = JSON.parse(text);
    if (!Array.isArray(parsed)) {
        throw new Error("action log must be an array");
    }
    return parsed;
}
