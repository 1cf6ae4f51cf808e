import type {
  HealthResponse,
  NNResponse,
  QueryPoint,
  RecenterResponse,
  SceneDoc,
  SebResponse,
  ServiceClient,
} from './types.js';

export class ServiceError extends Error {
  constructor(readonly status: number, detail: string) {
    super(`service error ${status}: ${detail}`);
  }
}

async function toJson<T>(res: Response): Promise<T> {
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = await res.json();
      if (body && typeof body.detail === 'string') detail = body.detail;
    } catch {
      // keep the status text
    }
    throw new ServiceError(res.status, detail);
  }
  return (await res.json()) as T;
}

export class HvdClient implements ServiceClient {
  constructor(readonly baseUrl: string) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const res = await fetch(`${this.baseUrl}${path}`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
    return toJson<T>(res);
  }

  async health(): Promise<HealthResponse> {
    return toJson(await fetch(`${this.baseUrl}/health`));
  }

  async scene(model: string, snapshot?: string): Promise<SceneDoc> {
    const params = new URLSearchParams({ model });
    if (snapshot) params.set('snapshot', snapshot);
    return toJson(await fetch(`${this.baseUrl}/scene?${params}`));
  }

  async nn(q: QueryPoint): Promise<NNResponse> {
    return this.post('/nn', { model: 'poincare', ...q });
  }

  async seb(indices: number[], snapshot?: string): Promise<SebResponse> {
    return this.post('/seb', snapshot ? { indices, snapshot } : { indices });
  }

  async recenter(q: QueryPoint & { scene_model?: string }): Promise<RecenterResponse> {
    return this.post('/recenter', { model: 'poincare', scene_model: 'poincare', ...q });
  }
}
