// Pure HTML renderers over API payloads. Every value shown comes verbatim
// from the service; nothing is recomputed here.

import { AttemptPayload, METRIC_IDS, MetricResult, isFailure } from "./api.js";
import { SessionError } from "./session.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

const METRIC_LABELS: Record<string, string> = {
  cosine: "Cosine Similarity Score",
  sorensen: "Sorensen Similarity",
  jaccard: "Jaccard Similarity",
  embedding: "Bert-Based Embeddings",
};

function formatScore(value: number): string {
  return value.toFixed(4);
}

function metricRow(metricId: string, result: MetricResult): string {
  const label = escapeHtml(METRIC_LABELS[metricId] ?? metricId);
  if (isFailure(result)) {
    return `<tr class="metric-error"><td>${label}</td><td colspan="3">error: ${escapeHtml(result.error)}</td></tr>`;
  }
  return (
    `<tr><td>${label}</td>` +
    `<td>${formatScore(result.vs_summary)}</td>` +
    `<td>${formatScore(result.vs_original)}</td>` +
    `<td>${formatScore(result.mean)}</td></tr>`
  );
}

/** Headline percent shown prominently, then the four-metric dual-score
 * table and the qualitative band. */
export function renderBreakdown(attempt: AttemptPayload): string {
  const rows = METRIC_IDS.map((metricId) =>
    metricRow(metricId, attempt.breakdown[metricId] as MetricResult),
  ).join("");
  return (
    `<section class="result">` +
    `<p class="headline"><strong class="percent">${escapeHtml(attempt.comprehension_display)}</strong>` +
    ` <span class="band">${escapeHtml(attempt.band)}</span>` +
    ` <span class="headline-metric">(headline: ${escapeHtml(attempt.headline_metric)})</span></p>` +
    `<table class="breakdown">` +
    `<thead><tr><th>metric</th><th>vs summary</th><th>vs original</th><th>mean</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>` +
    `</section>`
  );
}

export function renderHistory(history: AttemptPayload[]): string {
  if (history.length === 0) {
    return `<p class="history-empty">No attempts yet.</p>`;
  }
  const items = history
    .map(
      (attempt) =>
        `<li data-attempt-id="${escapeHtml(attempt.attempt_id)}">` +
        `<span class="percent">${escapeHtml(attempt.comprehension_display)}</span>` +
        ` <span class="band">${escapeHtml(attempt.band)}</span>` +
        ` <time>${escapeHtml(attempt.created_at)}</time></li>`,
    )
    .join("");
  return `<ol class="history">${items}</ol>`;
}

/** Inline error banner; retryable failures get a retry affordance. */
export function renderError(error: SessionError | null): string {
  if (error === null) {
    return "";
  }
  const retry = error.retryable
    ? `<button type="button" class="retry" data-action="retry">Retry</button>`
    : "";
  return (
    `<div class="error-banner" data-code="${escapeHtml(error.code)}">` +
    `<strong>${escapeHtml(error.code)}</strong>: ${escapeHtml(error.message)} ${retry}</div>`
  );
}

export function renderSummaryPane(summaryText: string): string {
  if (!summaryText) {
    return `<p class="summary-empty">No summary requested yet.</p>`;
  }
  return `<blockquote class="summary" readonly>${escapeHtml(summaryText)}</blockquote>`;
}
