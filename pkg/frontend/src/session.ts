// In-memory session for the learner loop: pick a document, get a summary,
// draft an understanding, submit, read the breakdown, revise, resubmit.
// At most one submission is in flight; a failed submission preserves the
// draft and records the error for inline display.

import { ApiClient, ApiError, AttemptPayload, MetricId } from "./api.js";

export interface SessionError {
  code: string;
  message: string;
  retryable: boolean;
}

export interface SessionState {
  documentId: string | null;
  documentTitle: string;
  summaryId: string | null;
  summaryText: string;
  draft: string;
  pending: boolean;
  lastResult: AttemptPayload | null;
  history: AttemptPayload[];
  error: SessionError | null;
}

function freshState(): SessionState {
  return {
    documentId: null,
    documentTitle: "",
    summaryId: null,
    summaryText: "",
    draft: "",
    pending: false,
    lastResult: null,
    history: [],
    error: null,
  };
}

export class UiSession {
  state: SessionState = freshState();

  constructor(private readonly api: ApiClient) {}

  /** Submit is possible only with a document, a summary, a non-blank draft
   * and no submission already in flight. */
  canSubmit(): boolean {
    return (
      this.state.documentId !== null &&
      this.state.summaryId !== null &&
      this.state.draft.trim().length > 0 &&
      !this.state.pending
    );
  }

  setDraft(text: string): void {
    this.state.draft = text;
  }

  private recordError(err: unknown): void {
    if (err instanceof ApiError) {
      this.state.error = { code: err.code, message: err.message, retryable: err.retryable };
    } else {
      this.state.error = { code: "internal", message: String(err), retryable: false };
    }
  }

  clearError(): void {
    this.state.error = null;
  }

  /** Paste path of the document flow: create the document, reset summary,
   * history and result. */
  async createDocument(title: string, text: string): Promise<boolean> {
    try {
      const { document_id } = await this.api.createDocument(title, text);
      this.selectDocument(document_id, title);
      return true;
    } catch (err) {
      this.recordError(err);
      return false;
    }
  }

  /** Server-side path variant (PDF handed to the service's extractor). */
  async createDocumentFromPath(title: string, pdfPath: string): Promise<boolean> {
    try {
      const { document_id } = await this.api.createDocumentFromPath(title, pdfPath);
      this.selectDocument(document_id, title);
      return true;
    } catch (err) {
      this.recordError(err);
      return false;
    }
  }

  selectDocument(documentId: string, title: string): void {
    this.state.documentId = documentId;
    this.state.documentTitle = title;
    this.state.summaryId = null;
    this.state.summaryText = "";
    this.state.lastResult = null;
    this.state.history = [];
    this.state.error = null;
  }

  async requestSummary(
    backend: "extractive" | "llm_chain",
    options: { target_sentences?: number; chunk_chars?: number } = {},
  ): Promise<boolean> {
    if (this.state.documentId === null) {
      this.state.error = { code: "invalid_request", message: "no document selected", retryable: false };
      return false;
    }
    try {
      const summary = await this.api.createSummary(this.state.documentId, backend, options);
      this.state.summaryId = summary.summary_id;
      this.state.summaryText = summary.text;
      this.state.error = null;
      return true;
    } catch (err) {
      this.recordError(err);
      return false;
    }
  }

  /** Submit the draft. On success the attempt is prepended to the history;
   * on failure the draft is untouched and the error is recorded. */
  async submitAttempt(headlineMetric?: MetricId): Promise<AttemptPayload | null> {
    if (!this.canSubmit()) {
      return null;
    }
    this.state.pending = true;
    try {
      const attempt = await this.api.submitAttempt(
        this.state.documentId as string,
        this.state.summaryId as string,
        this.state.draft,
        headlineMetric,
      );
      this.state.lastResult = attempt;
      this.state.history = [attempt, ...this.state.history];
      this.state.error = null;
      return attempt;
    } catch (err) {
      this.recordError(err);
      return null;
    } finally {
      this.state.pending = false;
    }
  }

  /** Re-fetch the attempt history from the service (newest first). */
  async refreshHistory(): Promise<boolean> {
    if (this.state.documentId === null) {
      return false;
    }
    try {
      this.state.history = await this.api.listAttempts(this.state.documentId);
      return true;
    } catch (err) {
      this.recordError(err);
      return false;
    }
  }
}
