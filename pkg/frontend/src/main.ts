// DOM wiring for the explorer. All state shown is the last /state
// payload; this file only materializes scenes from scene.ts and maps
// clicks to single endpoint calls.

import { ApiClient, ApiError, PendingRequestError, serializeLog } from "./api.js";
import {
  VIEW,
  arcSpec,
  buildQuiverScene,
  buildSurfaceScene,
  changedVariables,
  circularLayout,
  polylinePath,
  type Point,
} from "./scene.js";
import type { SkeinPayload, StatePayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const PRESETS = [
  "a2",
  "a3",
  "a4",
  "kronecker",
  "markov",
  "square",
  "pentagon",
  "hexagon",
  "heptagon",
  "annulus11",
  "annulus21",
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function svgEl(tag: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

class PositionStore {
  constructor(private readonly key = "clusterlab-layout") {}

  load(n: number): Point[] | null {
    try {
      const raw = localStorage.getItem(`${this.key}-${n}`);
      if (!raw) return null;
      const parsed = JSON.parse(raw) as Point[];
      return parsed.length === n ? parsed : null;
    } catch {
      return null;
    }
  }

  save(positions: Point[]): void {
    try {
      localStorage.setItem(`${this.key}-${positions.length}`, JSON.stringify(positions));
    } catch {
      // private browsing etc.; dragging just will not persist
    }
  }
}

class App {
  private client = new ApiClient("");
  private state: StatePayload | null = null;
  private previous: StatePayload | null = null;
  private positions: Point[] = [];
  private store = new PositionStore();
  private skeinSelection: string[] = [];
  private skeinMode = false;

  private quiverSvg!: SVGSVGElement;
  private surfaceSvg!: SVGSVGElement;
  private variablePanel!: HTMLElement;
  private historyPanel!: HTMLElement;
  private skeinPanel!: HTMLElement;
  private toast!: HTMLElement;
  private controls: HTMLButtonElement[] = [];

  mount(root: HTMLElement): void {
    const bar = el("div", "toolbar");
    const select = el("select") as HTMLSelectElement;
    for (const name of PRESETS) {
      const option = el("option", undefined, name) as HTMLOptionElement;
      option.value = name;
      select.appendChild(option);
    }
    select.value = "a2";
    select.addEventListener("change", () => {
      void this.run(() => this.client.reset({ preset: select.value }));
    });
    bar.appendChild(select);
    for (const [label, fn] of [
      ["undo", () => this.client.undo()],
      ["redo", () => this.client.redo()],
    ] as const) {
      const button = el("button", undefined, label) as HTMLButtonElement;
      button.addEventListener("click", () => void this.run(fn));
      this.controls.push(button);
      bar.appendChild(button);
    }
    const skeinToggle = el("button", undefined, "skein preview") as HTMLButtonElement;
    skeinToggle.addEventListener("click", () => {
      this.skeinMode = !this.skeinMode;
      this.skeinSelection = [];
      skeinToggle.classList.toggle("active", this.skeinMode);
      this.showToast(
        this.skeinMode
          ? "skein mode: select two crossing arcs"
          : "skein mode off",
      );
    });
    bar.appendChild(skeinToggle);
    const save = el("button", undefined, "save log") as HTMLButtonElement;
    save.addEventListener("click", () => {
      const blob = new Blob([serializeLog(this.client.log)], {
        type: "application/json",
      });
      const a = el("a") as HTMLAnchorElement;
      a.href = URL.createObjectURL(blob);
      a.download = "session-log.json";
      a.click();
    });
    bar.appendChild(save);
    root.appendChild(bar);

    const panes = el("div", "panes");
    const left = el("div", "pane");
    left.appendChild(el("h3", undefined, "quiver"));
    this.quiverSvg = svgEl("svg", {
      viewBox: `0 0 ${VIEW} ${VIEW}`,
      width: VIEW,
      height: VIEW,
    }) as SVGSVGElement;
    left.appendChild(this.quiverSvg);
    const right = el("div", "pane");
    right.appendChild(el("h3", undefined, "surface"));
    this.surfaceSvg = svgEl("svg", {
      viewBox: `0 0 ${VIEW} ${VIEW}`,
      width: VIEW,
      height: VIEW,
    }) as SVGSVGElement;
    right.appendChild(this.surfaceSvg);
    panes.appendChild(left);
    panes.appendChild(right);
    root.appendChild(panes);

    this.variablePanel = el("div", "variables");
    root.appendChild(this.variablePanel);
    this.skeinPanel = el("div", "skein");
    root.appendChild(this.skeinPanel);
    this.historyPanel = el("div", "history");
    root.appendChild(this.historyPanel);
    this.toast = el("div", "toast");
    root.appendChild(this.toast);

    void this.run(() => this.client.state());
  }

  private setBusy(busy: boolean): void {
    for (const b of this.controls) {
      b.disabled = busy;
    }
    document.body.classList.toggle("busy", busy);
  }

  private async run(fn: () => Promise<StatePayload>): Promise<void> {
    if (this.client.pending) {
      return;
    }
    this.setBusy(true);
    try {
      const next = await fn();
      this.previous = this.state;
      this.state = next;
      this.render();
    } catch (err) {
      if (err instanceof PendingRequestError) {
        return;
      }
      const message = err instanceof ApiError ? err.message : String(err);
      this.showToast(message);
    } finally {
      this.setBusy(false);
    }
  }

  private showToast(message: string): void {
    this.toast.textContent = message;
    this.toast.classList.add("visible");
    setTimeout(() => this.toast.classList.remove("visible"), 2400);
  }

  private render(): void {
    const state = this.state;
    if (!state) return;
    if (this.positions.length !== state.rank) {
      this.positions = this.store.load(state.rank) ?? circularLayout(state.rank);
    }
    this.renderQuiver(state);
    this.renderSurface(state);
    this.renderVariables(state);
    this.renderHistory(state);
  }

  private renderQuiver(state: StatePayload): void {
    const scene = buildQuiverScene(
      state.quiver,
      this.positions,
      this.previous?.quiver,
    );
    this.quiverSvg.replaceChildren();
    for (const arrow of scene.arrows) {
      const a = this.positions[arrow.from - 1];
      const b = this.positions[arrow.to - 1];
      const lane = svgEl("line", {
        x1: a.x,
        y1: a.y,
        x2: b.x,
        y2: b.y,
        class: arrow.reversed ? "arrow reversed" : "arrow",
        "marker-end": "url(#head)",
      });
      this.quiverSvg.appendChild(lane);
      if (arrow.multiplicity > 1) {
        this.quiverSvg.appendChild(
          svgEl("text", {
            x: (a.x + b.x) / 2 + 8,
            y: (a.y + b.y) / 2 - 6,
            class: "mult",
          }),
        ).textContent = String(arrow.multiplicity);
      }
    }
    const defs = svgEl("defs", {});
    const marker = svgEl("marker", {
      id: "head",
      markerWidth: 8,
      markerHeight: 8,
      refX: 10,
      refY: 3,
      orient: "auto",
    });
    marker.appendChild(svgEl("path", { d: "M0,0 L7,3 L0,6 z", fill: "#444" }));
    defs.appendChild(marker);
    this.quiverSvg.appendChild(defs);
    for (const vertex of scene.vertices) {
      const g = svgEl("g", { class: "vertex", "data-id": vertex.id });
      g.appendChild(svgEl("circle", { cx: vertex.x, cy: vertex.y, r: 16 }));
      const label = svgEl("text", {
        x: vertex.x,
        y: vertex.y + 5,
        "text-anchor": "middle",
      });
      label.textContent = vertex.label;
      g.appendChild(label);
      g.addEventListener("click", () => {
        void this.run(() => this.client.mutate(vertex.id));
      });
      this.attachDrag(g, vertex.id - 1);
      this.quiverSvg.appendChild(g);
    }
  }

  private attachDrag(node: SVGElement, index: number): void {
    let dragging = false;
    node.addEventListener("pointerdown", (ev) => {
      dragging = false;
      const move = (mv: PointerEvent) => {
        dragging = true;
        const rect = this.quiverSvg.getBoundingClientRect();
        this.positions[index] = {
          x: ((mv.clientX - rect.left) / rect.width) * VIEW,
          y: ((mv.clientY - rect.top) / rect.height) * VIEW,
        };
        this.store.save(this.positions);
        this.render();
      };
      const up = () => {
        window.removeEventListener("pointermove", move);
        window.removeEventListener("pointerup", up);
      };
      window.addEventListener("pointermove", move);
      window.addEventListener("pointerup", up);
      ev.preventDefault();
    });
    node.addEventListener(
      "click",
      (ev) => {
        if (dragging) {
          ev.stopImmediatePropagation();
        }
      },
      { capture: true },
    );
  }

  private renderSurface(state: StatePayload): void {
    this.surfaceSvg.replaceChildren();
    if (!state.surface) {
      const note = svgEl("text", {
        x: VIEW / 2,
        y: VIEW / 2,
        "text-anchor": "middle",
        class: "note",
      });
      note.textContent = "no surface attached (quiver-only session)";
      this.surfaceSvg.appendChild(note);
      return;
    }
    const scene = buildSurfaceScene(state.surface);
    if (scene.kind === "disk") {
      const ring = scene.outline.outer as { x: number; y: number }[];
      const poly = svgEl("polygon", {
        points: ring.map((p) => `${p.x},${p.y}`).join(" "),
        class: "outline",
      });
      poly.addEventListener("click", () =>
        this.showToast("boundary segments are not flippable"),
      );
      this.surfaceSvg.appendChild(poly);
    } else {
      const outer = scene.outline.outer as number;
      const inner = scene.outline.inner as number;
      const ring = svgEl("circle", {
        cx: VIEW / 2,
        cy: VIEW / 2,
        r: outer,
        class: "outline",
      });
      ring.addEventListener("click", () =>
        this.showToast("boundary segments are not flippable"),
      );
      this.surfaceSvg.appendChild(ring);
      this.surfaceSvg.appendChild(
        svgEl("circle", { cx: VIEW / 2, cy: VIEW / 2, r: inner, class: "hole" }),
      );
    }
    for (const arc of scene.arcs) {
      const path = svgEl("path", {
        d: polylinePath(arc.points),
        class: "arc",
        "data-position": arc.position,
      });
      path.addEventListener("click", () => {
        if (this.skeinMode) {
          this.selectForSkein(arc.spec);
        } else {
          void this.run(() => this.client.flip(arc.position));
        }
      });
      this.surfaceSvg.appendChild(path);
      const mid = arc.points[Math.floor(arc.points.length / 2)];
      const tag = svgEl("text", { x: mid.x + 6, y: mid.y - 6, class: "arc-label" });
      tag.textContent = String(arc.position);
      this.surfaceSvg.appendChild(tag);
    }
    for (const mark of scene.marks) {
      this.surfaceSvg.appendChild(
        svgEl("circle", { cx: mark.x, cy: mark.y, r: 4, class: "mark" }),
      );
    }
  }

  private selectForSkein(spec: string): void {
    if (!this.skeinSelection.includes(spec)) {
      this.skeinSelection.push(spec);
    }
    if (this.skeinSelection.length < 2) {
      this.showToast(`selected ${spec}; pick a second arc`);
      return;
    }
    const [a, b] = this.skeinSelection;
    this.skeinSelection = [];
    void (async () => {
      try {
        const payload = await this.client.skein(a, b);
        this.renderSkein(payload);
      } catch (err) {
        this.showToast(err instanceof ApiError ? err.message : String(err));
      }
    })();
  }

  private renderSkein(payload: SkeinPayload): void {
    this.skeinPanel.replaceChildren();
    if (payload.crossings === 0) {
      this.showToast(payload.hint ?? "arcs are compatible");
      return;
    }
    this.skeinPanel.appendChild(el("h3", undefined, "skein smoothing"));
    this.skeinPanel.appendChild(el("div", "identity", payload.identity ?? ""));
    const row = el("div", "smoothings");
    for (const side of ["m1", "m2"] as const) {
      const data = payload[side];
      if (!data) continue;
      const box = el("div", "smoothing");
      box.appendChild(el("h4", undefined, side.toUpperCase()));
      box.appendChild(
        el("div", undefined, data.curves.map((c) => JSON.stringify(c)).join("  ")),
      );
      box.appendChild(el("div", "value", payload.values?.[side] ?? ""));
      row.appendChild(box);
    }
    this.skeinPanel.appendChild(row);
  }

  private renderVariables(state: StatePayload): void {
    const highlight = new Set(
      this.previous ? changedVariables(this.previous.cluster, state.cluster) : [],
    );
    this.variablePanel.replaceChildren(el("h3", undefined, "cluster variables"));
    state.cluster.forEach((text, idx) => {
      const row = el("div", highlight.has(idx) ? "variable changed" : "variable");
      row.textContent = `u${idx + 1} = ${text}`;
      this.variablePanel.appendChild(row);
    });
  }

  private renderHistory(state: StatePayload): void {
    this.historyPanel.replaceChildren(el("h3", undefined, "history"));
    const line = state.history.map(([op, arg]) => `${op} ${arg}`).join(" ; ");
    this.historyPanel.appendChild(el("div", undefined, line || "(initial seed)"));
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  new App().mount(document.getElementById("app") as HTMLElement);
}

export { App };
