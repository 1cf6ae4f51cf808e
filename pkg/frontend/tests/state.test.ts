import { describe, expect, it } from 'vitest';

import { ScreenMap } from '../src/coords.js';
import { Viewer, diskTranslate } from '../src/state.js';
import type {
  NNResponse,
  QueryPoint,
  RecenterResponse,
  SceneDoc,
  SebResponse,
  ServiceClient,
} from '../src/types.js';

function sceneDoc(snapshot: string, sites: [number, number][]): SceneDoc {
  return {
    model: 'poincare',
    sites: sites.map(([x, y], i) => ({ x, y, label: `s${i}` })),
    edges: [],
    cells: sites.map(() => []),
    metadata: { snapshot },
  };
}

// Recording stub: answers like the fixture service and logs every call.
class StubClient implements ServiceClient {
  calls: string[] = [];
  snapshotCounter = 0;
  failNext = false;
  sites: [number, number][] = [[0.26794919, 0], [-0.26794919, 0]];

  private bump(): string {
    return `s${this.snapshotCounter++}`;
  }

  async health() {
    return { status: 'ok', snapshot: `s${this.snapshotCounter}`, sites: 2 };
  }

  async scene(model: string): Promise<SceneDoc> {
    this.calls.push(`scene:${model}`);
    return sceneDoc(this.bump(), this.sites);
  }

  async nn(q: QueryPoint): Promise<NNResponse> {
    if (this.failNext) throw new Error('boom');
    this.calls.push(`nn:${q.x.toFixed(3)},${q.y.toFixed(3)}`);
    const index = q.x >= 0 ? 0 : 1;
    return {
      snapshot: `s${this.snapshotCounter - 1}`, index,
      label: `s${index}`, distance: 0.123,
    };
  }

  async seb(indices: number[]): Promise<SebResponse> {
    this.calls.push(`seb:${indices.join('+')}`);
    return {
      snapshot: `s${this.snapshotCounter - 1}`, indices,
      center_klein: [0, 0], center_poincare: [0, 0],
      radius: 0.5493061443,
      overlay: {
        poincare_center: [0, 0], poincare_radius: 0.2679,
        locus_klein: [], locus_poincare: [],
      },
    };
  }

  async recenter(q: QueryPoint): Promise<RecenterResponse> {
    if (this.failNext) throw new Error('boom');
    this.calls.push(`recenter:${q.x.toFixed(4)},${q.y.toFixed(4)}`);
    return { snapshot: this.bump(), scene: sceneDoc(`s${this.snapshotCounter - 1}`, this.sites) };
  }
}

function makeViewer() {
  const client = new StubClient();
  const viewer = new Viewer(client, new ScreenMap(720, 720));
  return { client, viewer };
}

describe('Viewer clicks', () => {
  it('highlights the service-reported nearest site', async () => {
    const { client, viewer } = makeViewer();
    await viewer.load();
    const p = viewer.map.toScreen(0.4, 0);
    await viewer.onClick(p.x, p.y);
    expect(viewer.state.highlighted).toBe(0);
    expect(viewer.state.lastNN?.label).toBe('s0');
    expect(client.calls.filter((c) => c.startsWith('nn:'))).toHaveLength(1);
  });

  it('ignores clicks outside the rim', async () => {
    const { client, viewer } = makeViewer();
    await viewer.load();
    await viewer.onClick(2, 2);
    expect(viewer.state.highlighted).toBeNull();
    expect(client.calls.filter((c) => c.startsWith('nn:'))).toHaveLength(0);
  });

  it('keeps state and shows a banner when the service fails', async () => {
    const { client, viewer } = makeViewer();
    await viewer.load();
    client.failNext = true;
    const p = viewer.map.toScreen(0.4, 0);
    await viewer.onClick(p.x, p.y);
    expect(viewer.state.highlighted).toBeNull();
    expect(viewer.state.statusMessage).toContain('boom');
  });
});

describe('Viewer group selection', () => {
  it('fetches the ball and recenters on its circumcenter', async () => {
    const { client, viewer } = makeViewer();
    await viewer.load();
    await viewer.onGroupSelect([0, 1]);
    expect(viewer.state.sebOverlay?.radius).toBeCloseTo(0.549306, 6);
    expect([...viewer.state.selection]).toEqual([0, 1]);
    expect(client.calls).toContain('seb:0+1');
    expect(client.calls.some((c) => c.startsWith('recenter:0.0000,0.0000'))).toBe(true);
  });

  it('selection survives the snapshot change (index identity)', async () => {
    const { viewer } = makeViewer();
    await viewer.load();
    const before = viewer.state.snapshot;
    await viewer.onGroupSelect([1]);
    expect(viewer.state.snapshot).not.toBe(before);
    expect([...viewer.state.selection]).toEqual([1]);
  });

  it('empty selection is a no-op', async () => {
    const { client, viewer } = makeViewer();
    await viewer.load();
    await viewer.onGroupSelect([]);
    expect(client.calls.filter((c) => c.startsWith('seb'))).toHaveLength(0);
  });

  it('brush select picks sites inside the screen circle', async () => {
    const { viewer } = makeViewer();
    await viewer.load();
    const right = viewer.map.toScreen(0.26794919, 0);
    expect(viewer.brushSelect(right.x, right.y, 20)).toEqual([0]);
    expect(viewer.brushSelect(360, 360, 720)).toEqual([0, 1]);
  });

  it('runs the recenter animation to completion via tick', async () => {
    const { viewer } = makeViewer();
    await viewer.load();
    await viewer.onGroupSelect([0, 1]);
    expect(viewer.state.animation).not.toBeNull();
    viewer.tick(10_000);
    expect(viewer.state.animation).toBeNull();
  });
});

describe('Viewer dragging', () => {
  it('zero-length drag sends nothing', async () => {
    const { client, viewer } = makeViewer();
    await viewer.load();
    await viewer.onDrag(0, 0, 1_000);
    await viewer.maybeFlushDrag(10_000);
    expect(client.calls.filter((c) => c.startsWith('recenter'))).toHaveLength(0);
  });

  it('throttles to at most one request per 100ms, coalescing the rest', async () => {
    const { client, viewer } = makeViewer();
    await viewer.load();
    await viewer.onDrag(10, 0, 1_000);
    await viewer.onDrag(10, 0, 1_010);
    await viewer.onDrag(10, 0, 1_020);
    const sent = client.calls.filter((c) => c.startsWith('recenter'));
    expect(sent).toHaveLength(1);
    await viewer.maybeFlushDrag(1_200);
    const sentAfter = client.calls.filter((c) => c.startsWith('recenter'));
    expect(sentAfter).toHaveLength(2);
  });

  it('maps rightward drags to a leftward focus', async () => {
    const { client, viewer } = makeViewer();
    await viewer.load();
    await viewer.onDrag(33.6, 0, 1_000); // radius 336px: 0.1 disk units
    const call = client.calls.find((c) => c.startsWith('recenter'))!;
    expect(call).toBe('recenter:-0.1000,0.0000');
  });
});

describe('diskTranslate', () => {
  it('sends the focus to the origin and is an involution with its negation', () => {
    const f = diskTranslate(0.3, -0.2, 0.3, -0.2);
    expect(Math.hypot(f.x, f.y)).toBeLessThan(1e-15);
    const z = { x: 0.4, y: 0.1 };
    const w = diskTranslate(0.3, -0.2, z.x, z.y);
    const back = diskTranslate(-0.3, 0.2, w.x, w.y);
    expect(back.x).toBeCloseTo(z.x, 12);
    expect(back.y).toBeCloseTo(z.y, 12);
  });
});
