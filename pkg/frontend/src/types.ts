// Wire types mirroring the hvd service: the viewer never recomputes
// geometry, every displayed number comes from one of these responses.

export interface SceneSite {
  x: number;
  y: number;
  label?: string;
}

export type SceneEdge =
  | { type: 'segment'; sites: [number, number]; p0: [number, number]; p1: [number, number] }
  | { type: 'arc'; sites: [number, number]; center: [number, number]; radius: number;
      theta0: number; theta1: number }
  | { type: 'line'; sites: [number, number]; point: [number, number];
      direction: [number, number]; t0: number | null; t1: number | null };

export interface SceneDoc {
  model: string;
  sites: SceneSite[];
  edges: SceneEdge[];
  cells: number[][];
  metadata: Record<string, unknown>;
}

export interface HealthResponse {
  status: string;
  snapshot: string;
  sites: number;
}

export interface NNResponse {
  snapshot: string;
  index: number;
  label: string | null;
  distance: number;
}

export interface SebOverlay {
  poincare_center: [number, number];
  poincare_radius: number;
  locus_klein: [number, number][];
  locus_poincare: [number, number][];
}

export interface SebResponse {
  snapshot: string;
  indices: number[];
  center_klein: [number, number];
  center_poincare: [number, number];
  radius: number;
  overlay: SebOverlay;
}

export interface RecenterResponse {
  snapshot: string;
  scene: SceneDoc;
}

export interface QueryPoint {
  x: number;
  y: number;
  model?: string;
  snapshot?: string;
}

export interface ServiceClient {
  health(): Promise<HealthResponse>;
  scene(model: string, snapshot?: string): Promise<SceneDoc>;
  nn(q: QueryPoint): Promise<NNResponse>;
  seb(indices: number[], snapshot?: string): Promise<SebResponse>;
  recenter(q: QueryPoint & { scene_model?: string }): Promise<RecenterResponse>;
}

export interface RecenterAnimation {
  // start scene and the disk-translation parameter interpolated as t*a
  fromScene: SceneDoc;
  ax: number;
  ay: number;
  progress: number;
}

export interface ViewerState {
  snapshot: string | null;
  scene: SceneDoc | null;
  selection: Set<number>;
  highlighted: number | null;
  lastNN: NNResponse | null;
  sebOverlay: SebResponse | null;
  animation: RecenterAnimation | null;
  statusMessage: string | null;
}
