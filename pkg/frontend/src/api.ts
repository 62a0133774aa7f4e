/** Thin client over the covchain control API.
 *
 * All computation happens server-side; this module only shuttles JSON.
 * The fetch implementation is injectable so tests can run against a mock.
 */

import {
  ApiError,
  ApiRequestError,
  BlockSummary,
  PipelineRecord,
  Suspect,
  VerifyResult,
} from "./types.js";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl = "", fetchFn: FetchLike = fetch.bind(globalThis)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiRequestError(resp.status, body as ApiError);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  registerCase(caseId: string): Promise<PipelineRecord> {
    return this.post<PipelineRecord>("/cases", { case_id: caseId });
  }

  verifyCode(code: string): Promise<VerifyResult> {
    return this.post<VerifyResult>("/verify", { code });
  }

  chain(): Promise<BlockSummary[]> {
    return this.request<BlockSummary[]>("/chain");
  }

  /** Ranked suspect list; with threshold 0 this doubles as the full
   * risk table, since every notified client has risk >= 0. */
  suspects(opts: { threshold?: number; k?: number } = {}): Promise<Suspect[]> {
    const params = new URLSearchParams();
    if (opts.threshold !== undefined) {
      params.set("threshold", String(opts.threshold));
    }
    if (opts.k !== undefined) params.set("k", String(opts.k));
    const query = params.toString();
    return this.request<Suspect[]>(
      "/authority/suspects" + (query ? `?${query}` : ""),
    );
  }

  health(): Promise<{ status: string; blocks: number }> {
    return this.request("/health");
  }
}
