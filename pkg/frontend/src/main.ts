// Browser bootstrap: wires the one-page learner loop onto the DOM. All state
// lives in UiSession; this file only reads inputs and paints render output.

import { ApiClient } from "./api.js";
import { renderBreakdown, renderError, renderHistory, renderSummaryPane } from "./render.js";
import { UiSession } from "./session.js";

const DEFAULT_BASE_URL = `${window.location.protocol}//${window.location.hostname}:8752`;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function boot(): void {
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get("api") ?? DEFAULT_BASE_URL);
  const session = new UiSession(api);

  const title = el<HTMLInputElement>("doc-title");
  const pasteText = el<HTMLTextAreaElement>("doc-text");
  const pdfPath = el<HTMLInputElement>("doc-pdf-path");
  const createButton = el<HTMLButtonElement>("doc-create");
  const docStatus = el<HTMLElement>("doc-status");
  const backend = el<HTMLSelectElement>("summary-backend");
  const summarizeButton = el<HTMLButtonElement>("summary-request");
  const summaryPane = el<HTMLElement>("summary-pane");
  const draft = el<HTMLTextAreaElement>("understanding");
  const submitButton = el<HTMLButtonElement>("submit-attempt");
  const resultPane = el<HTMLElement>("result-pane");
  const historyPane = el<HTMLElement>("history-pane");
  const errorPane = el<HTMLElement>("error-pane");

  function repaint(): void {
    docStatus.textContent = session.state.documentId
      ? `document ${session.state.documentId} (${session.state.documentTitle})`
      : "no document yet";
    summaryPane.innerHTML = renderSummaryPane(session.state.summaryText);
    resultPane.innerHTML = session.state.lastResult
      ? renderBreakdown(session.state.lastResult)
      : "";
    historyPane.innerHTML = renderHistory(session.state.history);
    errorPane.innerHTML = renderError(session.state.error);
    summarizeButton.disabled = session.state.documentId === null;
    submitButton.disabled = !session.canSubmit();
    const retry = errorPane.querySelector<HTMLButtonElement>("button.retry");
    if (retry) retry.onclick = () => void submit();
  }

  async function submit(): Promise<void> {
    session.clearError();
    repaint();
    await session.submitAttempt();
    repaint();
  }

  createButton.onclick = async () => {
    const text = pasteText.value;
    const path = pdfPath.value.trim();
    const ok = path
      ? await session.createDocumentFromPath(title.value || "untitled", path)
      : await session.createDocument(title.value || "untitled", text);
    if (ok) await session.refreshHistory();
    repaint();
  };

  summarizeButton.onclick = async () => {
    await session.requestSummary(backend.value === "llm_chain" ? "llm_chain" : "extractive");
    repaint();
  };

  draft.oninput = () => {
    session.setDraft(draft.value);
    submitButton.disabled = !session.canSubmit();
  };

  submitButton.onclick = () => void submit();

  repaint();
}

document.addEventListener("DOMContentLoaded", boot);
