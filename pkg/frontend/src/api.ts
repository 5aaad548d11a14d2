// The service is the single source of numbers: the client never
// recomputes an invariant, it only fetches and scales.

import {
  BarcodeJson,
  ContourJson,
  ContourLineJson,
  DatasetInfo,
  StepFunctionJson,
} from "./types.js";

export class ApiError extends Error {
  status: number;
  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(path, init);
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && typeof body.error === "string") detail = body.error;
    } catch {
      // non-JSON error body, keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

function post<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
  return request<T>(path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
    signal,
  });
}

export class Api {
  base: string;

  constructor(base = "") {
    this.base = base;
  }

  datasets(): Promise<DatasetInfo[]> {
    return request<DatasetInfo[]>(`${this.base}/datasets`);
  }

  barcode(id: string): Promise<BarcodeJson> {
    return request<BarcodeJson>(`${this.base}/barcodes/${id}`);
  }

  stableRanks(
    contour: ContourJson,
    ids: string[],
    signal?: AbortSignal,
  ): Promise<Record<string, StepFunctionJson>> {
    return post<{ results: Record<string, StepFunctionJson> }>(
      `${this.base}/stablerank`,
      { contour, ids },
      signal,
    ).then((r) => r.results);
  }

  contourLines(
    contour: ContourJson,
    ts: number[],
    sRange: [number, number],
    nSamples: number,
    signal?: AbortSignal,
  ): Promise<ContourLineJson[]> {
    return post<{ lines: ContourLineJson[] }>(
      `${this.base}/contour/lines`,
      { contour, ts, s_range: sRange, n_samples: nSamples },
      signal,
    ).then((r) => r.lines);
  }

  means(
    contour: ContourJson,
    labels?: string[],
    degree?: number,
    signal?: AbortSignal,
  ): Promise<Record<string, Record<string, StepFunctionJson>>> {
    const body: Record<string, unknown> = { contour };
    if (labels) body.labels = labels;
    if (degree !== undefined) body.degree = degree;
    return post<{ means: Record<string, Record<string, StepFunctionJson>> }>(
      `${this.base}/means`,
      body,
      signal,
    ).then((r) => r.means);
  }
}

/**
 * Debounced, self-superseding recomputation: at most one request in
 * flight per panel; a newer edit cancels the older request.
 */
export class Recomputer {
  private delayMs: number;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private generation = 0;

  constructor(delayMs = 150) {
    this.delayMs = delayMs;
  }

  schedule<T>(run: (signal: AbortSignal) => Promise<T>, apply: (result: T) => void): void {
    if (this.timer !== null) clearTimeout(this.timer);
    const generation = ++this.generation;
    this.timer = setTimeout(() => {
      this.timer = null;
      this.controller?.abort();
      const controller = new AbortController();
      this.controller = controller;
      run(controller.signal).then(
        (result) => {
          if (generation === this.generation) apply(result);
        },
        (err) => {
          if (err instanceof DOMException && err.name === "AbortError") return;
          if (generation === this.generation) console.error(err);
        },
      );
    }, this.delayMs);
  }
}
