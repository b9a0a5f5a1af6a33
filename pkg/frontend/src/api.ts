// Thin client for the explorer API; all algebra stays on the server.

import { PairJson, SessionState } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const body = await resp.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // keep the status text
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  async createSession(
    n: number,
    seed?: string,
  ): Promise<{ sessionId: string; state: SessionState }> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify(seed === undefined ? { n } : { n, seed }),
    });
  }

  async getState(sessionId: string): Promise<SessionState> {
    return this.request(`/sessions/${sessionId}`);
  }

  async flip(
    sessionId: string,
    pair: PairJson,
    version?: number,
  ): Promise<SessionState> {
    return this.request(`/sessions/${sessionId}/flip`, {
      method: "POST",
      body: JSON.stringify(version === undefined ? { pair } : { pair, version }),
    });
  }

  async undo(sessionId: string): Promise<SessionState> {
    return this.request(`/sessions/${sessionId}/undo`, { method: "POST" });
  }
}
