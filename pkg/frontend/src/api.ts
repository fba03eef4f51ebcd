// Thin client for the advice service. All numbers shown in the UI come
// from these responses; nothing is computed in the browser.

import type {
  AdviceRequest,
  AdviceResponse,
  HealthResponse,
  ValidateResponse,
} from "./types";

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
    public readonly violations: string[] = [],
  ) {
    super(message);
  }
}

async function parseError(resp: Response): Promise<ApiError> {
  let violations: string[] = [];
  try {
    const body = await resp.json();
    if (Array.isArray(body.violations)) violations = body.violations;
  } catch {
    // non-JSON error body; keep the status only
  }
  return new ApiError(`request failed: ${resp.status}`, resp.status, violations);
}

export class AdviceClient {
  private inflight: AbortController | null = null;

  constructor(private readonly baseUrl: string = "") {}

  /** POST /api/advise with latest-wins semantics: a newer request aborts
   *  the one still in flight. */
  async advise(request: AdviceRequest): Promise<AdviceResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const resp = await fetch(`${this.baseUrl}/api/advise`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
      signal: controller.signal,
    });
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as AdviceResponse;
  }

  async validateState(params: Record<string, number>): Promise<ValidateResponse> {
    const query = new URLSearchParams(
      Object.entries(params).map(([k, v]) => [k, String(v)]),
    );
    const resp = await fetch(`${this.baseUrl}/api/state/validate?${query}`);
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as ValidateResponse;
  }

  async health(): Promise<HealthResponse> {
    const resp = await fetch(`${this.baseUrl}/api/health`);
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as HealthResponse;
  }
}
