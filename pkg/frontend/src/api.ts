// Thin fetch client for the evaluation API. All numbers displayed by the UI
// come from these responses untouched; the client never derives energy
// values itself.

import type {
  ApiError,
  CompareResponse,
  DefaultsDocument,
  EnergyReport,
  EvaluateRequest,
} from "./types.js";

export class ApiRequestError extends Error {
  readonly field?: string;
  readonly status: number;

  constructor(status: number, message: string, field?: string) {
    super(message);
    this.status = status;
    this.field = field;
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = (await response.json()) as T | ApiError;
    if (!response.ok) {
      const err = body as ApiError;
      throw new ApiRequestError(
        response.status,
        err?.error?.message ?? `request failed (${response.status})`,
        err?.error?.field,
      );
    }
    return body as T;
  }

  getDefaults(): Promise<DefaultsDocument> {
    return this.request<DefaultsDocument>("/defaults");
  }

  health(): Promise<{ status: string }> {
    return this.request<{ status: string }>("/health");
  }

  evaluate(body: EvaluateRequest): Promise<EnergyReport> {
    return this.request<EnergyReport>("/evaluate", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  compare(a: EvaluateRequest, b: EvaluateRequest): Promise<CompareResponse> {
    return this.request<CompareResponse>("/compare", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ a, b }),
    });
  }
}
