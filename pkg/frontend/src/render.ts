import { ScreenMap } from './coords.js';
import { animatedSites } from './state.js';
import type { SceneDoc, ViewerState } from './types.js';

const RIM_COLOR = '#222222';
const EDGE_COLOR = '#1f5fbf';
const SITE_COLOR = '#c0392b';
const HIGHLIGHT_COLOR = '#e67e22';
const SELECT_COLOR = '#8e44ad';
const OVERLAY_COLOR = '#2e8b57';
const LABEL_FONT = '13px monospace';

// Minimal structural surface of CanvasRenderingContext2D that the renderer
// needs; tests can pass a recording stub.
export interface Canvas2D {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number,
      anticlockwise?: boolean): void;
  stroke(): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
}

function drawArc(
  ctx: Canvas2D, map: ScreenMap,
  center: [number, number], radius: number, th0: number, th1: number,
): void {
  const c = map.toScreen(center[0], center[1]);
  // disk y points up, canvas y points down: world angle t maps to -t and
  // a CCW world sweep becomes an anticlockwise canvas sweep
  ctx.beginPath();
  ctx.arc(c.x, c.y, radius * map.radius, -th0, -th1, true);
  ctx.stroke();
}

function drawEdges(ctx: Canvas2D, map: ScreenMap, scene: SceneDoc): void {
  ctx.strokeStyle = EDGE_COLOR;
  ctx.lineWidth = 1.5;
  for (const e of scene.edges) {
    if (e.type === 'segment') {
      const a = map.toScreen(e.p0[0], e.p0[1]);
      const b = map.toScreen(e.p1[0], e.p1[1]);
      ctx.beginPath();
      ctx.moveTo(a.x, a.y);
      ctx.lineTo(b.x, b.y);
      ctx.stroke();
    } else if (e.type === 'arc') {
      drawArc(ctx, map, e.center, e.radius, e.theta0, e.theta1);
    }
    // 'line' edges belong to the half-plane model, which this viewer does
    // not display; skip rather than fail (degraded render)
  }
}

function drawSites(
  ctx: Canvas2D, map: ScreenMap, state: ViewerState,
  sites: { x: number; y: number; label?: string }[],
): void {
  ctx.font = LABEL_FONT;
  sites.forEach((s, i) => {
    const p = map.toScreen(s.x, s.y);
    if (state.selection.has(i)) {
      ctx.strokeStyle = SELECT_COLOR;
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.arc(p.x, p.y, 9, 0, 2 * Math.PI);
      ctx.stroke();
    }
    if (state.highlighted === i) {
      ctx.strokeStyle = HIGHLIGHT_COLOR;
      ctx.lineWidth = 3;
      ctx.beginPath();
      ctx.arc(p.x, p.y, 7, 0, 2 * Math.PI);
      ctx.stroke();
    }
    ctx.fillStyle = SITE_COLOR;
    ctx.beginPath();
    ctx.arc(p.x, p.y, 4, 0, 2 * Math.PI);
    ctx.fill();
    if (s.label) {
      ctx.fillStyle = RIM_COLOR;
      ctx.fillText(s.label, p.x + 7, p.y - 7);
    }
  });
}

export function render(ctx: Canvas2D, map: ScreenMap, state: ViewerState): void {
  ctx.clearRect(0, 0, map.width, map.height);
  ctx.strokeStyle = RIM_COLOR;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.arc(map.cx, map.cy, map.radius, 0, 2 * Math.PI);
  ctx.stroke();

  const anim = state.animation;
  if (anim) {
    // transient interpolation frame: sites of the previous snapshot pushed
    // through the partial disk translation t*a
    drawSites(ctx, map, state,
              animatedSites(anim.fromScene, anim.ax, anim.ay, anim.progress));
    return;
  }
  if (!state.scene) return;
  drawEdges(ctx, map, state.scene);

  const overlay = state.sebOverlay;
  if (overlay) {
    ctx.strokeStyle = OVERLAY_COLOR;
    ctx.lineWidth = 2;
    ctx.beginPath();
    overlay.overlay.locus_poincare.forEach(([x, y], k) => {
      const p = map.toScreen(x, y);
      if (k === 0) ctx.moveTo(p.x, p.y);
      else ctx.lineTo(p.x, p.y);
    });
    const first = overlay.overlay.locus_poincare[0];
    if (first) {
      const p = map.toScreen(first[0], first[1]);
      ctx.lineTo(p.x, p.y);
    }
    ctx.stroke();
  }

  drawSites(ctx, map, state, state.scene.sites);

  if (state.statusMessage) {
    ctx.fillStyle = SITE_COLOR;
    ctx.font = LABEL_FONT;
    ctx.fillText(state.statusMessage, 12, 18);
  }
  if (state.lastNN) {
    ctx.fillStyle = RIM_COLOR;
    ctx.font = LABEL_FONT;
    const label = state.lastNN.label ?? `site ${state.lastNN.index}`;
    ctx.fillText(
      `nearest: ${label}  d=${state.lastNN.distance.toFixed(6)}`,
      12, map.height - 28);
  }
  if (state.sebOverlay) {
    ctx.fillStyle = RIM_COLOR;
    ctx.font = LABEL_FONT;
    ctx.fillText(
      `ball radius: ${state.sebOverlay.radius.toFixed(6)}`,
      12, map.height - 10);
  }
}
