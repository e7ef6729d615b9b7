// Pure view-model builders: everything here is a function of the last
// server payload plus layout positions, so it can be unit-tested
// without a DOM. The DOM layer only materializes these scenes.
export const VIEW = 420;
const CENTER = VIEW / 2;
const R_OUTER = VIEW * 0.42;
const R_INNER = VIEW * 0.17;
export function circularLayout(n, radius = R_OUTER * 0.8) {
    const points = [];
    for (let i = 0; i < n; i++) {
        const angle = (2 * Math.PI * i) / Math.max(n, 1) - Math.PI / 2;
        points.push({
            x: CENTER + radius * Math.cos(angle),
            y: CENTER + radius * Math.sin(angle),
        });
    }
    return points;
}
function arrowMap(q) {
    const map = new Map();
    for (const [i, j, m] of q.arrows) {
        map.set(`${i}->${j}`, m);
    }
    return map;
}
export function buildQuiverScene(quiver, positions, previous) {
    if (positions.length < quiver.n) {
        throw new Error("not enough layout positions for the quiver");
    }
    const prev = previous ? arrowMap(previous) : new Map();
    const arrows = quiver.arrows.map(([from, to, mult]) => ({
        from,
        to,
        multiplicity: mult,
        reversed: prev.has(`${to}->${from}`),
    }));
    return {
        vertices: Array.from({ length: quiver.n }, (_, k) => ({
            id: k + 1,
            label: String(k + 1),
            x: positions[k].x,
            y: positions[k].y,
        })),
        arrows,
    };
}
/** Indices (0-based) of cluster variables that changed between payloads. */
export function changedVariables(prev, next) {
    const out = [];
    for (let i = 0; i < Math.max(prev.length, next.length); i++) {
        if (prev[i] !== next[i]) {
            out.push(i);
        }
    }
    return out;
}
function diskPoint(m, i, radius = R_OUTER) {
    const angle = (2 * Math.PI * (i - 1)) / m - Math.PI / 2;
    return {
        x: CENTER + radius * Math.cos(angle),
        y: CENTER + radius * Math.sin(angle),
    };
}
function annulusPoint(x, y) {
    const radius = R_INNER + (R_OUTER - R_INNER) * y;
    const angle = 2 * Math.PI * x - Math.PI / 2;
    return {
        x: CENTER + radius * Math.cos(angle),
        y: CENTER + radius * Math.sin(angle),
    };
}
function sampled(f, steps = 48) {
    const pts = [];
    for (let k = 0; k <= steps; k++) {
        pts.push(f(k / steps));
    }
    return pts;
}
export function arcSpec(curve) {
    if (Array.isArray(curve)) {
        return `${curve[0]},${curve[1]}`;
    }
    if ("outer" in curve) {
        return `${curve.outer},${curve.inner},${curve.winding}`;
    }
    return JSON.stringify(curve);
}
export function buildSurfaceScene(surface) {
    const spec = surface.surface;
    if (spec.kind === "disk") {
        const m = spec.m;
        const ring = Array.from({ length: m }, (_, k) => diskPoint(m, k + 1));
        const arcs = surface.arcs.map((curve, idx) => {
            if (!Array.isArray(curve)) {
                throw new Error("disk arcs must be endpoint pairs");
            }
            return {
                position: idx + 1,
                points: [diskPoint(m, curve[0]), diskPoint(m, curve[1])],
                spec: arcSpec(curve),
            };
        });
        return {
            kind: "disk",
            outline: { outer: ring },
            arcs,
            marks: ring.map((p, k) => ({
                x: p.x + (p.x - CENTER) * 0.09,
                y: p.y + (p.y - CENTER) * 0.09,
                label: String(k + 1),
            })),
        };
    }
    return buildAnnulusScene(spec, surface.arcs);
}
function buildAnnulusScene(spec, curves) {
    const outerPos = (i) => (i - 1) / spec.p;
    const eps = 1 / (4 * spec.p * spec.q);
    const innerPos = (j) => (j - 1) / spec.q + eps;
    const arcs = curves.map((curve, idx) => {
        if (Array.isArray(curve)) {
            throw new Error("annulus arcs are bridges or peripheral arcs");
        }
        if ("outer" in curve) {
            const x0 = outerPos(curve.outer);
            const x1 = innerPos(curve.inner) + curve.winding;
            return {
                position: idx + 1,
                points: sampled((t) => annulusPoint(x0 + (x1 - x0) * t, 1 - t)),
                spec: arcSpec(curve),
            };
        }
        if ("boundary" in curve && "from" in curve) {
            const pos = curve.boundary === "outer" ? outerPos : innerPos;
            const lo = pos(curve.from);
            const hi = pos(curve.to) + curve.winding;
            const [y0, yd] = curve.boundary === "outer" ? [1.0, 0.55] : [0.0, 0.45];
            return {
                position: idx + 1,
                points: sampled((t) => annulusPoint(lo + (hi - lo) * t, y0 + (yd - y0) * Math.sin(Math.PI * t))),
                spec: arcSpec(curve),
            };
        }
        throw new Error(`cannot draw curve ${JSON.stringify(curve)}`);
    });
    const marks = [];
    for (let i = 1; i <= spec.p; i++) {
        const p = annulusPoint(outerPos(i), 1);
        marks.push({ x: p.x, y: p.y, label: `o${i}` });
    }
    for (let j = 1; j <= spec.q; j++) {
        const p = annulusPoint(innerPos(j), 0);
        marks.push({ x: p.x, y: p.y, label: `i${j}` });
    }
    return {
        kind: "annulus",
        outline: { outer: R_OUTER, inner: R_INNER },
        arcs,
        marks,
    };
}
export function polylinePath(points) {
    return ("M " + points.map((p) => `${p.x.toFixed(2)} ${p.y.toFixed(2)}`).join(" L "));
}
