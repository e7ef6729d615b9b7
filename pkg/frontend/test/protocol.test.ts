// Protocol-fidelity tests against the real server: the recorded-session
// replay must reproduce the final state byte-for-byte on a fresh
// server, and a hexagon flip must update quiver and surface together.

import assert from "node:assert/strict";
import { spawn, type ChildProcess } from "node:child_process";
import { createServer } from "node:net";
import { after, before, test } from "node:test";

import { ApiClient, ApiError, PendingRequestError, replayLog } from "../src/api.js";
import { buildQuiverScene, buildSurfaceScene, circularLayout } from "../src/scene.js";

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.listen(0, "127.0.0.1", () => {
      const address = srv.address();
      if (address && typeof address === "object") {
        const port = address.port;
        srv.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

async function waitReady(base: string, tries = 100): Promise<void> {
  for (let i = 0; i < tries; i++) {
    try {
      const response = await fetch(`${base}/state`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error(`server at ${base} never became ready`);
}

function startServer(port: number): ChildProcess {
  return spawn(
    "python3",
    ["-m", "clusterlab.cli", "serve", "--port", String(port)],
    { stdio: "ignore" },
  );
}

let portA = 0;
let portB = 0;
let serverA: ChildProcess;
let serverB: ChildProcess;
let baseA = "";
let baseB = "";

before(async () => {
  portA = await freePort();
  portB = await freePort();
  serverA = startServer(portA);
  serverB = startServer(portB);
  baseA = `http://127.0.0.1:${portA}`;
  baseB = `http://127.0.0.1:${portB}`;
  await waitReady(baseA);
  await waitReady(baseB);
});

after(() => {
  serverA.kill();
  serverB.kill();
});

test("twenty-action session replays byte-for-byte on a fresh server", async () => {
  const client = new ApiClient(baseA, "recorded");
  await client.reset({ preset: "hexagon" });
  await client.flip(1);
  await client.mutate(2);
  await client.undo();
  await client.skein("1,3", "2,6");
  await client.flip(3);
  await client.flip(3);
  await client.mutate(1);
  await client.undo();
  await client.redo();
  await client.variables();
  await client.mutate(1);
  await client.reset({ preset: "a2" });
  await client.mutate(1);
  await client.mutate(2);
  await client.undo();
  await client.exchangeGraph(1);
  await client.mutate(2);
  await client.mutate(1);
  await client.mutate(2);
  assert.equal(client.log.length, 20);

  const finalState = await client.stateRaw();
  const replayedSameServer = await replayLog(baseA, "replayed", client.log);
  assert.equal(replayedSameServer, finalState);
  const replayedFreshServer = await replayLog(baseB, "recorded", client.log);
  assert.equal(replayedFreshServer, finalState);
});

test("hexagon flip updates surface and quiver views consistently", async () => {
  const client = new ApiClient(baseA, "hexflip");
  const start = await client.reset({ preset: "hexagon" });
  assert.deepEqual(start.surface?.arcs, [
    [1, 3],
    [1, 4],
    [1, 5],
  ]);
  assert.deepEqual(start.quiver, { n: 3, arrows: [[1, 2, 1], [2, 3, 1]] });

  const flipped = await client.flip(1);
  // the flip of (1,3) in the fan is (2,4); the quiver mutates at vertex 1
  assert.deepEqual(flipped.surface?.arcs, [
    [2, 4],
    [1, 4],
    [1, 5],
  ]);
  assert.deepEqual(flipped.quiver, { n: 3, arrows: [[2, 1, 1], [2, 3, 1]] });

  // both views render from the same payload: the surface scene shows
  // the new diagonal and the quiver scene marks the reversed arrow
  const surfaceScene = buildSurfaceScene(flipped.surface!);
  assert.equal(surfaceScene.arcs[0].spec, "2,4");
  const quiverScene = buildQuiverScene(
    flipped.quiver,
    circularLayout(3),
    start.quiver,
  );
  assert.deepEqual(
    quiverScene.arrows.filter((a) => a.reversed).map((a) => [a.from, a.to]),
    [[2, 1]],
  );

  // flip is an involution through the protocol
  const back = await client.flip(1);
  assert.deepEqual(back.surface?.arcs, start.surface?.arcs);
  assert.deepEqual(back.quiver, start.quiver);
});

test("mutation involution is visible to the client", async () => {
  const client = new ApiClient(baseA, "involution");
  const start = await client.reset({ preset: "a2" });
  const once = await client.mutate(1);
  assert.notDeepEqual(once.cluster, start.cluster);
  assert.equal(once.cluster[0], "x1^-1 + x1^-1*x2");
  const twice = await client.mutate(1);
  assert.deepEqual(twice.cluster, start.cluster);
});

test("kronecker growth: term counts strictly increase along 1,2,1,2,1", async () => {
  const client = new ApiClient(baseA, "kronecker");
  await client.reset({ preset: "kronecker" });
  const counts: number[] = [];
  for (const vertex of [1, 2, 1, 2, 1]) {
    const state = await client.mutate(vertex);
    const terms = state.cluster[vertex - 1].split(" + ").length;
    counts.push(terms);
  }
  for (let i = 1; i < counts.length; i++) {
    assert.ok(counts[i] > counts[i - 1], `${counts}`);
  }
});

test("skein preview returns both smoothings with server values", async () => {
  const client = new ApiClient(baseA, "skein");
  await client.reset({ preset: "hexagon" });
  const payload = await client.skein("1,3", "2,6");
  assert.equal(payload.crossings, 1);
  assert.ok(payload.holds);
  assert.ok(payload.m1 && payload.m2);
  assert.equal(payload.values?.product, "x1*x2^-1*x3^-1 + x1*x3^-1 + x2^-1 + 1");

  const compatible = await client.skein("1,3", "1,4");
  assert.equal(compatible.crossings, 0);
  assert.equal(compatible.hint, "arcs are compatible");

  const square = new ApiClient(baseA, "skein-square");
  await square.reset({ preset: "square" });
  const ptolemy = await square.skein("1,3", "2,4");
  assert.equal(ptolemy.values?.product, "2");
});

test("server errors surface as ApiError and leave state unchanged", async () => {
  const client = new ApiClient(baseA, "errors");
  await client.reset({ preset: "a2" });
  const before_ = await client.stateRaw();
  await assert.rejects(client.mutate(9), ApiError);
  const after_ = await client.stateRaw();
  assert.equal(after_, before_);
  await assert.rejects(client.reset({ preset: "nope" } as never), ApiError);
});

test("single in-flight request per client", async () => {
  const client = new ApiClient(baseA, "pending");
  const first = client.state();
  await assert.rejects(client.state(), PendingRequestError);
  await first;
  await client.state(); // free again after completion
});

test("every recorded action is one endpoint call", async () => {
  const client = new ApiClient(baseA, "one-to-one");
  await client.reset({ preset: "a3" });
  await client.mutate(2);
  await client.undo();
  assert.deepEqual(
    client.log.map((a) => `${a.method} ${a.path}`),
    ["POST /reset", "POST /mutate", "POST /undo"],
  );
});
