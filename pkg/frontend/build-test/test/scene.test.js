import assert from "node:assert/strict";
import { test } from "node:test";
import { deserializeLog, serializeLog } from "../src/api.js";
import { arcSpec, buildQuiverScene, buildSurfaceScene, changedVariables, circularLayout, polylinePath, } from "../src/scene.js";
const A3 = { n: 3, arrows: [[1, 2, 1], [2, 3, 1]] };
test("circular layout is deterministic and sized", () => {
    const pts = circularLayout(5);
    assert.equal(pts.length, 5);
    assert.deepEqual(pts, circularLayout(5));
    const distinct = new Set(pts.map((p) => `${p.x.toFixed(3)},${p.y.toFixed(3)}`));
    assert.equal(distinct.size, 5);
});
test("quiver scene carries multiplicities and reversal highlights", () => {
    const positions = circularLayout(3);
    const scene = buildQuiverScene(A3, positions);
    assert.equal(scene.vertices.length, 3);
    assert.deepEqual(scene.arrows.map((a) => [a.from, a.to, a.multiplicity, a.reversed]), [
        [1, 2, 1, false],
        [2, 3, 1, false],
    ]);
    const mutated = { n: 3, arrows: [[2, 1, 1], [2, 3, 1]] };
    const after = buildQuiverScene(mutated, positions, A3);
    const reversed = after.arrows.filter((a) => a.reversed);
    assert.deepEqual(reversed.map((a) => [a.from, a.to]), [[2, 1]]);
    const kronecker = { n: 2, arrows: [[1, 2, 2]] };
    const kr = buildQuiverScene(kronecker, circularLayout(2));
    assert.equal(kr.arrows[0].multiplicity, 2);
});
test("changed variables diff", () => {
    assert.deepEqual(changedVariables(["x1", "x2"], ["y", "x2"]), [0]);
    assert.deepEqual(changedVariables(["a", "b"], ["a", "b"]), []);
    assert.deepEqual(changedVariables(["a"], ["a", "b"]), [1]);
});
test("disk scene has straight chords and boundary marks", () => {
    const hexagon = {
        surface: { kind: "disk", m: 6 },
        arcs: [
            [1, 3],
            [1, 4],
            [1, 5],
        ],
    };
    const scene = buildSurfaceScene(hexagon);
    assert.equal(scene.kind, "disk");
    assert.equal(scene.arcs.length, 3);
    assert.equal(scene.marks.length, 6);
    for (const arc of scene.arcs) {
        assert.equal(arc.points.length, 2);
    }
    assert.deepEqual(scene.arcs.map((a) => a.spec), ["1,3", "1,4", "1,5"]);
    assert.match(polylinePath(scene.arcs[0].points), /^M [\d.]+ [\d.]+ L /);
});
test("annulus scene samples bridge and peripheral paths", () => {
    const annulus = {
        surface: { kind: "annulus", p: 2, q: 1 },
        arcs: [
            { outer: 1, inner: 1, winding: 0 },
            { outer: 2, inner: 1, winding: 1 },
            { boundary: "outer", from: 2, to: 2, winding: 1 },
        ],
    };
    const scene = buildSurfaceScene(annulus);
    assert.equal(scene.kind, "annulus");
    assert.equal(scene.arcs.length, 3);
    for (const arc of scene.arcs) {
        assert.ok(arc.points.length > 10);
    }
    assert.equal(scene.arcs[0].spec, "1,1,0");
    assert.equal(scene.arcs[2].spec, JSON.stringify({ boundary: "outer", from: 2, to: 2, winding: 1 }));
    assert.equal(scene.marks.length, 3);
});
test("arc specs for the skein endpoint", () => {
    assert.equal(arcSpec([2, 6]), "2,6");
    assert.equal(arcSpec({ outer: 1, inner: 1, winding: -2 }), "1,1,-2");
});
test("action log serialization round-trips", () => {
    const log = [
        { method: "POST", path: "/mutate", body: { vertex: 1 } },
        { method: "GET", path: "/variables" },
    ];
    assert.deepEqual(deserializeLog(serializeLog(log)), log);
});
