/** Single-page wiring: hash routes, event handlers, and latest-wins
 * fetching for slider drags. All rendering goes through the pure view
 * functions so they stay testable without a DOM. */

import { ApiClient, ApiError } from "./api.js";
import { renderComparisonView } from "./views/comparison.js";
import { renderRecommendationsView } from "./views/recommendations.js";
import { detectFormat, renderUploadForm } from "./views/upload.js";

const api = new ApiClient("");
const app = document.getElementById("app") as HTMLElement;
const DEFAULT_K = 10;

let inFlight: AbortController | null = null;

function route(): string[] {
  return window.location.hash.replace(/^#\/?/, "").split("/").filter(Boolean);
}

function featureBar(): string {
  // feature channels mirror the recommender's similarity facets; only the
  // chemical-entity channel is active in this build
  const channels = ["citations", "mathematics", "keywords", "figures"]
    .map((name) => `<span class="channel off">${name}</span>`)
    .join("");
  return `<header class="feature-bar"><span class="channel on">chemical entities</span>${channels}</header>`;
}

async function showUpload(error?: string): Promise<void> {
  app.innerHTML = featureBar() + renderUploadForm(error);
  const form = document.getElementById("upload-form") as HTMLFormElement;
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const fileInput = document.getElementById("upload-file") as HTMLInputElement;
    const file = fileInput.files?.[0];
    if (!file) return;
    const formatSelect = document.getElementById("upload-format") as HTMLSelectElement;
    const title = (document.getElementById("upload-title") as HTMLInputElement).value;
    const format = formatSelect.value || detectFormat(file.name);
    try {
      const { id } = await api.uploadDocument(file, format, title || undefined);
      window.location.hash = `#/recommendations/${encodeURIComponent(id)}`;
    } catch (err) {
      const detail = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
      await showUpload(detail); // inline banner, no navigation
    }
  });
}

async function bookmarkedSet(inputId: string): Promise<Set<string>> {
  const payload = await api.bookmarks(inputId);
  return new Set(payload.bookmarks.map((b) => b.candidate));
}

async function showRecommendations(inputId: string): Promise<void> {
  await refreshRecommendations(inputId, 0.5, 0.5);
}

async function refreshRecommendations(
  inputId: string,
  wEntity: number,
  wText: number,
): Promise<void> {
  inFlight?.abort();
  const controller = new AbortController();
  inFlight = controller;
  let payload;
  try {
    payload = await api.recommendations(inputId, DEFAULT_K, wEntity, wText, controller.signal);
  } catch (err) {
    if ((err as DOMException).name === "AbortError") return; // superseded
    throw err;
  }
  if (controller !== inFlight) return; // latest wins
  const starred = await bookmarkedSet(inputId);
  app.innerHTML = featureBar() + renderRecommendationsView(payload, starred);

  for (const slider of ["w-entity", "w-text"]) {
    document.getElementById(slider)?.addEventListener("change", () => {
      const we = parseFloat((document.getElementById("w-entity") as HTMLInputElement).value);
      const wt = parseFloat((document.getElementById("w-text") as HTMLInputElement).value);
      void refreshRecommendations(inputId, we, wt);
    });
  }
  app.querySelectorAll("button.bookmark").forEach((button) => {
    button.addEventListener("click", async () => {
      const candidate = (button as HTMLButtonElement).dataset.candidate!;
      await api.addBookmark(inputId, candidate);
      void refreshRecommendations(inputId, payload.w_entity, payload.w_text);
    });
  });
}

async function showComparison(inputId: string, candidateId: string): Promise<void> {
  const [payload, bookmarks] = await Promise.all([
    api.compare(inputId, candidateId),
    api.bookmarks(inputId),
  ]);
  app.innerHTML = featureBar() + renderComparisonView(payload, bookmarks.bookmarks);
  app.querySelectorAll(".doc-tabs .tab").forEach((tab) => {
    tab.addEventListener("click", () => {
      const candidate = (tab as HTMLButtonElement).dataset.candidate!;
      // re-render in place; no page reload
      void showComparison(inputId, candidate);
    });
  });
}

async function dispatch(): Promise<void> {
  const segments = route();
  try {
    if (segments[0] === "recommendations" && segments[1]) {
      await showRecommendations(decodeURIComponent(segments[1]));
    } else if (segments[0] === "compare" && segments[1] && segments[2]) {
      await showComparison(decodeURIComponent(segments[1]), decodeURIComponent(segments[2]));
    } else {
      await showUpload();
    }
  } catch (err) {
    const detail = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    app.innerHTML = featureBar() + `<div class="error-banner" role="alert">${detail}</div>`;
  }
}

window.addEventListener("hashchange", () => void dispatch());
void dispatch();
