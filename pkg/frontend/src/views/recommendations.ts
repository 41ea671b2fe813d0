/** Ranked recommendation list with weight sliders and bookmark toggles. */

import { RecommendationsPayload } from "../api.js";
import { escapeHtml } from "../html.js";

export function renderWeightControls(wEntity: number, wText: number): string {
  return (
    `<fieldset class="weights"><legend>similarity weights</legend>` +
    `<label>chemical entity <input type="range" id="w-entity" min="0" max="1" step="0.05" value="${wEntity}" />` +
    `<output for="w-entity">${wEntity.toFixed(2)}</output></label>` +
    `<label>text <input type="range" id="w-text" min="0" max="1" step="0.05" value="${wText}" />` +
    `<output for="w-text">${wText.toFixed(2)}</output></label></fieldset>`
  );
}

export function renderRecommendationList(
  payload: RecommendationsPayload,
  bookmarked: Set<string>,
): string {
  if (payload.recommendations.length === 0) {
    return `<p class="empty">No candidates yet &#8212; upload more papers to build the corpus.</p>`;
  }
  const items = payload.recommendations
    .map((rec, index) => {
      const starred = bookmarked.has(rec.id);
      return (
        `<li class="rec" data-id="${escapeHtml(rec.id)}">` +
        `<span class="rank">${index + 1}</span>` +
        `<a class="doc-link" href="#/compare/${encodeURIComponent(payload.input)}/${encodeURIComponent(rec.id)}">${escapeHtml(rec.id)}</a>` +
        `<span class="score" title="entity ${rec.entity_component.toFixed(4)}, text ${rec.text_component.toFixed(4)}">${rec.score.toFixed(4)}</span>` +
        `<button class="bookmark${starred ? " on" : ""}" data-candidate="${escapeHtml(rec.id)}" aria-pressed="${starred}">${starred ? "&#9733;" : "&#9734;"}</button>` +
        `</li>`
      );
    })
    .join("");
  return `<ol class="recommendations">${items}</ol>`;
}

export function renderRecommendationsView(
  payload: RecommendationsPayload,
  bookmarked: Set<string>,
): string {
  return (
    renderWeightControls(payload.w_entity, payload.w_text) +
    renderRecommendationList(payload, bookmarked)
  );
}
