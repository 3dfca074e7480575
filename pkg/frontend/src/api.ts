// Typed client for the JSON API; unwraps the {ok, result|error} envelope.

import {
  ApiError,
  DatasetStudy,
  EstimateResult,
  MetaResponse,
  StudyPayload,
  SummaryInput,
  TestResult,
} from "./types.js";

export class ApiRequestError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly field: string | null = null,
    public readonly status: number = 0,
  ) {
    super(message);
    this.name = "ApiRequestError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

interface Envelope<T> {
  ok: boolean;
  result?: T;
  error?: ApiError;
}

export class ApiClient {
  constructor(
    public baseUrl: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/+$/, "") + path;
  }

  private async unwrap<T>(response: Response): Promise<T> {
    let body: Envelope<T>;
    try {
      body = (await response.json()) as Envelope<T>;
    } catch {
      throw new ApiRequestError("bad_response", `non-JSON response (${response.status})`,
        null, response.status);
    }
    if (!body.ok || body.result === undefined) {
      const err = body.error ?? { code: "unknown", message: "unknown error", field: null };
      throw new ApiRequestError(err.code, err.message, err.field, response.status);
    }
    return body.result;
  }

  private async post<T>(path: string, payload: unknown): Promise<T> {
    const response = await this.fetchImpl(this.url(path), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
    return this.unwrap<T>(response);
  }

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.url(path));
    return this.unwrap<T>(response);
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.fetchImpl(this.url("/healthz"));
      return response.ok;
    } catch {
      return false;
    }
  }

  testSummary(summary: SummaryInput, alpha: number, source: string): Promise<TestResult> {
    return this.post<TestResult>("/api/test", { ...summary, alpha, source });
  }

  estimateSummary(summary: SummaryInput): Promise<EstimateResult> {
    return this.post<EstimateResult>("/api/estimate", summary);
  }

  metaAnalyze(
    studies: StudyPayload[],
    alpha: number,
    source: string,
    forceInclude: string[],
  ): Promise<MetaResponse> {
    return this.post<MetaResponse>("/api/meta", {
      studies,
      alpha,
      source,
      force_include: forceInclude,
    });
  }

  criticalValue(scenario: string, n: number, alpha: number, source: string): Promise<{
    scenario: string; n: number; alpha: number; source: string; value: number;
  }> {
    const params = new URLSearchParams({
      scenario, n: String(n), alpha: String(alpha), source,
    });
    return this.get(`/api/critical-value?${params}`);
  }

  vitaminDataset(): Promise<{ studies: DatasetStudy[] }> {
    return this.get("/api/dataset/vitamind");
  }
}
