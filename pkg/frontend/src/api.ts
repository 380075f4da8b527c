// Typed client for the scoring service HTTP API. The UI performs no score
// arithmetic of its own: every number and string rendered comes from these
// payloads.

export type MetricId = "cosine" | "sorensen" | "jaccard" | "embedding";

export const METRIC_IDS: MetricId[] = ["cosine", "sorensen", "jaccard", "embedding"];

export interface DualScore {
  vs_summary: number;
  vs_original: number;
  mean: number;
}

export interface MetricFailure {
  error: string;
  message: string;
}

export type MetricResult = DualScore | MetricFailure;

export function isFailure(result: MetricResult): result is MetricFailure {
  return "error" in result;
}

export interface AttemptPayload {
  attempt_id: string;
  document_id: string;
  summary_id: string;
  understanding_text: string;
  created_at: string;
  breakdown: Record<string, MetricResult>;
  headline_metric: MetricId;
  comprehension_percent: number;
  comprehension_display: string;
  band: string;
}

export interface DocumentRecord {
  document_id: string;
  title: string;
  text: string;
  created_at: string;
  source: string;
}

export interface SummaryResponse {
  summary_id: string;
  text: string;
}

export interface HealthStatus {
  store: { status: string; detail?: string };
  embedding: { status: string; detail?: string };
  llm: { status: string; detail?: string };
}

/** Error carrying the service's machine code; retryable for 5xx statuses. */
export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }

  get retryable(): boolean {
    return this.status >= 500;
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "internal";
  let message = `request failed with status ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body.code === "string") code = body.code;
    if (body && typeof body.message === "string") message = body.message;
  } catch {
    // non-JSON error body; keep the defaults
  }
  return new ApiError(code, message, response.status);
}

export class ApiClient {
  constructor(private readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError("provider_unavailable", `service unreachable: ${err}`, 503);
    }
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createDocument(title: string, text: string): Promise<{ document_id: string }> {
    return this.post("/api/documents", { title, text });
  }

  createDocumentFromPath(title: string, pdfPath: string): Promise<{ document_id: string }> {
    return this.post("/api/documents", { title, pdf_path: pdfPath });
  }

  getDocument(documentId: string): Promise<DocumentRecord> {
    return this.request(`/api/documents/${documentId}`);
  }

  listDocuments(): Promise<DocumentRecord[]> {
    return this.request("/api/documents");
  }

  createSummary(
    documentId: string,
    backend: "extractive" | "llm_chain",
    options: { target_sentences?: number; chunk_chars?: number } = {},
  ): Promise<SummaryResponse> {
    return this.post(`/api/documents/${documentId}/summaries`, { backend, ...options });
  }

  submitAttempt(
    documentId: string,
    summaryId: string,
    understandingText: string,
    headlineMetric?: MetricId,
  ): Promise<AttemptPayload> {
    return this.post(`/api/documents/${documentId}/attempts`, {
      summary_id: summaryId,
      understanding_text: understandingText,
      ...(headlineMetric ? { headline_metric: headlineMetric } : {}),
    });
  }

  listAttempts(documentId: string): Promise<AttemptPayload[]> {
    return this.request(`/api/documents/${documentId}/attempts`);
  }

  health(): Promise<HealthStatus> {
    return this.request("/api/health");
  }
}
