// Payload shapes of the clusterlab session endpoint. The UI computes no
// algebra: every Laurent string is rendered verbatim from the server.

export type ArrowEntry = [number, number, number];

export interface QuiverJson {
  n: number;
  arrows: ArrowEntry[];
}

export interface DiskSpec {
  kind: "disk";
  m: number;
}

export interface AnnulusSpec {
  kind: "annulus";
  p: number;
  q: number;
}

export type BridgeJson = { outer: number; inner: number; winding: number };
export type PeripheralJson = {
  boundary: "outer" | "inner";
  from: number;
  to: number;
  winding: number;
};
export type CurveJson =
  | [number, number]
  | BridgeJson
  | PeripheralJson
  | { bracelet: number }
  | { boundary_segment: unknown[] };

export interface SurfaceJson {
  surface: DiskSpec | AnnulusSpec;
  arcs: CurveJson[];
}

export interface Limits {
  max_seeds: number;
  max_terms: number;
  max_depth: number;
}

export interface StatePayload {
  rank: number;
  cluster: string[];
  quiver: QuiverJson;
  surface: SurfaceJson | null;
  history: [string, number][];
  limits: Limits;
  undone?: boolean;
  redone?: boolean;
}

export interface SkeinSide {
  curves: CurveJson[];
  contractibles: number;
}

export interface SkeinPayload {
  arc1: CurveJson;
  arc2: CurveJson;
  crossings: number;
  hint?: string;
  m1?: SkeinSide;
  m2?: SkeinSide;
  values?: { product: string; m1: string; m2: string };
  identity?: string;
  holds?: boolean;
}

export interface VariablesPayload {
  variables: string[];
}

export interface GraphPayload {
  rank: number;
  truncated: boolean;
  nodes: { id: number; cluster: string[] }[];
  edges: { source: number; target: number; shared: string[] }[];
}

export type ResetPayload =
  | { preset: string }
  | { n: number; arrows: ArrowEntry[] }
  | SurfaceJson;
