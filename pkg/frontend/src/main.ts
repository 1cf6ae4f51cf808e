import { HvdClient } from './client.js';
import { ScreenMap } from './coords.js';
import { render } from './render.js';
import { Viewer } from './state.js';

const SERVICE_URL =
  new URLSearchParams(location.search).get('service') ?? 'http://127.0.0.1:8080';
const BRUSH_RADIUS_PX = 60;

const canvas = document.getElementById('disk') as HTMLCanvasElement;
const ctx = canvas.getContext('2d')!;
const map = new ScreenMap(canvas.width, canvas.height);
const viewer = new Viewer(new HvdClient(SERVICE_URL), map);

let dragging = false;
let brushing = false;
let moved = false;
let lastX = 0;
let lastY = 0;
let downX = 0;
let downY = 0;

canvas.addEventListener('mousedown', (ev) => {
  dragging = !ev.shiftKey;
  brushing = ev.shiftKey;
  moved = false;
  lastX = downX = ev.offsetX;
  lastY = downY = ev.offsetY;
});

canvas.addEventListener('mousemove', (ev) => {
  if (!dragging) return;
  const dx = ev.offsetX - lastX;
  const dy = ev.offsetY - lastY;
  if (dx !== 0 || dy !== 0) moved = true;
  lastX = ev.offsetX;
  lastY = ev.offsetY;
  void viewer.onDrag(dx, dy);
});

canvas.addEventListener('mouseup', (ev) => {
  if (brushing) {
    const r = Math.max(Math.hypot(ev.offsetX - downX, ev.offsetY - downY),
                       BRUSH_RADIUS_PX);
    const picked = viewer.brushSelect(downX, downY, r);
    if (picked.length > 0) void viewer.onGroupSelect(picked);
  } else if (!moved) {
    void viewer.onClick(ev.offsetX, ev.offsetY);
  }
  dragging = brushing = false;
});

let last = performance.now();
function frame(now: number) {
  viewer.tick(now - last);
  last = now;
  void viewer.maybeFlushDrag(now);
  render(ctx, map, viewer.state);
  requestAnimationFrame(frame);
}

void viewer.load().then(() => requestAnimationFrame(frame));
