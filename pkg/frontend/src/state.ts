import { ScreenMap } from './coords.js';
import type {
  SceneDoc,
  ServiceClient,
  ViewerState,
} from './types.js';

const ANIMATION_MS = 350;
const DRAG_MIN_INTERVAL_MS = 100; // at most 10 recenter requests per second
const MAX_FOCUS_NORM = 0.9;

function freshState(): ViewerState {
  return {
    snapshot: null,
    scene: null,
    selection: new Set(),
    highlighted: null,
    lastNN: null,
    sebOverlay: null,
    animation: null,
    statusMessage: null,
  };
}

export interface ViewerOptions {
  recenterOnClick?: boolean;
  dragSensitivity?: number; // UI tuning: disk units of focus per disk unit dragged
}

// State machine behind the disk browser.  All geometry shown to the user
// comes from service responses; the only local arithmetic is the transient
// recenter animation and the screen<->disk mapping.
export class Viewer {
  readonly state: ViewerState = freshState();
  recenterOnClick: boolean;
  dragSensitivity: number;

  private busy = { nn: false, seb: false, recenter: false };
  private issue = 0;
  private applied = 0;
  private pendingDrag = { dx: 0, dy: 0 };
  private lastRecenterAt = -Infinity;

  constructor(
    private readonly client: ServiceClient,
    public map: ScreenMap,
    opts: ViewerOptions = {},
  ) {
    this.recenterOnClick = opts.recenterOnClick ?? false;
    this.dragSensitivity = opts.dragSensitivity ?? 1.0;
  }

  async load(): Promise<void> {
    try {
      const scene = await this.client.scene('poincare');
      this.state.scene = scene;
      this.state.snapshot = String(scene.metadata['snapshot'] ?? '');
      this.state.statusMessage = null;
      this.applied = ++this.issue;
    } catch (err) {
      this.fail(err);
    }
  }

  // Click selection: highlight the nearest site reported by the service.
  async onClick(sx: number, sy: number): Promise<void> {
    if (!this.state.scene || this.busy.nn) return;
    const p = this.map.toDisk(sx, sy);
    if (p.x * p.x + p.y * p.y >= 1.0) return; // outside the rim: no-op
    this.busy.nn = true;
    try {
      const r = await this.client.nn({
        x: p.x, y: p.y, model: 'poincare',
        snapshot: this.state.snapshot ?? undefined,
      });
      if (r.snapshot === this.state.snapshot) {
        this.state.highlighted = r.index;
        this.state.lastNN = r;
        this.state.statusMessage = null;
      }
    } catch (err) {
      this.fail(err);
    } finally {
      this.busy.nn = false;
    }
    if (this.recenterOnClick && this.state.lastNN && this.state.scene) {
      const site = this.state.scene.sites[this.state.lastNN.index];
      if (site) await this.recenterAt(site.x, site.y);
    }
  }

  // Circular brush selection: site indices inside a screen-space circle.
  brushSelect(sx: number, sy: number, radiusPx: number): number[] {
    if (!this.state.scene) return [];
    const out: number[] = [];
    this.state.scene.sites.forEach((s, i) => {
      const q = this.map.toScreen(s.x, s.y);
      if (Math.hypot(q.x - sx, q.y - sy) <= radiusPx) out.push(i);
    });
    return out;
  }

  // Group selection: fetch the smallest enclosing ball of the selected
  // sites, show it, then recenter the viewpoint on its circumcenter.
  async onGroupSelect(indices: number[]): Promise<void> {
    if (indices.length === 0 || this.busy.seb || !this.state.scene) return;
    this.busy.seb = true;
    try {
      const r = await this.client.seb(indices, this.state.snapshot ?? undefined);
      this.state.selection = new Set(indices);
      this.state.sebOverlay = r;
      this.state.statusMessage = null;
      await this.recenterAt(r.center_poincare[0], r.center_poincare[1]);
    } catch (err) {
      this.fail(err); // selection retained on error
    } finally {
      this.busy.seb = false;
    }
  }

  // Drag panning: displacement accumulates and is flushed as a recenter
  // request, throttled to at most one in flight every DRAG_MIN_INTERVAL_MS.
  onDrag(dxPx: number, dyPx: number, now: number = Date.now()): Promise<void> {
    this.pendingDrag.dx += dxPx;
    this.pendingDrag.dy += dyPx;
    return this.maybeFlushDrag(now);
  }

  async maybeFlushDrag(now: number = Date.now()): Promise<void> {
    if (this.busy.recenter) return;
    if (now - this.lastRecenterAt < DRAG_MIN_INTERVAL_MS) return;
    const { dx, dy } = this.pendingDrag;
    if (dx === 0 && dy === 0) return; // zero-length drag: no request
    this.pendingDrag = { dx: 0, dy: 0 };
    const v = this.map.vecToDisk(dx, dy);
    let fx = -v.x * this.dragSensitivity;
    let fy = -v.y * this.dragSensitivity;
    const n = Math.hypot(fx, fy);
    if (n >= MAX_FOCUS_NORM) {
      fx *= MAX_FOCUS_NORM / n;
      fy *= MAX_FOCUS_NORM / n;
    }
    this.lastRecenterAt = now;
    await this.recenterAt(fx, fy, false);
  }

  async recenterAt(x: number, y: number, animate = true): Promise<void> {
    if (this.busy.recenter) return;
    this.busy.recenter = true;
    const ticket = ++this.issue;
    try {
      const r = await this.client.recenter({
        x, y, model: 'poincare', scene_model: 'poincare',
        snapshot: this.state.snapshot ?? undefined,
      });
      if (ticket > this.applied) {
        if (animate && this.state.scene) {
          this.state.animation = {
            fromScene: this.state.scene, ax: x, ay: y, progress: 0,
          };
        }
        this.applied = ticket;
        this.state.scene = r.scene;
        this.state.snapshot = r.snapshot;
        this.state.statusMessage = null;
      }
    } catch (err) {
      this.fail(err);
    } finally {
      this.busy.recenter = false;
    }
  }

  // Advance the recenter animation; rendering interpolates the transform
  // parameter as t*a and the final frame is always the fresh snapshot.
  tick(dtMs: number): void {
    const anim = this.state.animation;
    if (!anim) return;
    anim.progress += dtMs / ANIMATION_MS;
    if (anim.progress >= 1.0) this.state.animation = null;
  }

  private fail(err: unknown): void {
    this.state.statusMessage =
      err instanceof Error ? err.message : 'service unreachable';
  }
}

// Disk translation sending a to the origin, used only for transient
// animation frames (never for displayed numbers).
export function diskTranslate(
  ax: number, ay: number, x: number, y: number,
): { x: number; y: number } {
  // (z - a) / (1 - conj(a) z) in real coordinates
  const nx = x - ax;
  const ny = y - ay;
  const dx = 1.0 - (ax * x + ay * y);
  const dy = ay * x - ax * y;
  const d = dx * dx + dy * dy;
  return { x: (nx * dx + ny * dy) / d, y: (ny * dx - nx * dy) / d };
}

export function animatedSites(
  scene: SceneDoc, ax: number, ay: number, t: number,
): { x: number; y: number; label?: string }[] {
  const s = Math.min(Math.max(t, 0), 1);
  return scene.sites.map((site) => ({
    ...diskTranslate(ax * s, ay * s, site.x, site.y),
    label: site.label,
  }));
}
