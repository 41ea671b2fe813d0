/** Side-by-side entity comparison. Each table lists its own paper's
 * entities; because the server orders matched rows first (identically on
 * both sides), matched compounds sit at the same row index and stay
 * vertically aligned. Green shading encodes match frequency; non-matching
 * rows sit on white. One shared scroll container browses both tables. */

import { AlignmentRowView, BookmarkView, ComparePayload } from "../api.js";
import { escapeHtml } from "../html.js";
import { shadeColor } from "../theme.js";

export const COLUMNS = ["CID", "Name", "Structure", "Molecular Formula", "Molecular Weight"] as const;

export interface ComparisonRow {
  key: string;
  matched: boolean;
  color: string;
  shade: number;
  cells: string[];
}

export interface ComparisonViewModel {
  input: string;
  candidate: string;
  inputRows: ComparisonRow[];
  candidateRows: ComparisonRow[];
}

function structureCell(row: AlignmentRowView): string {
  if (row.entity.structure_image) {
    return `<img class="structure" alt="structure of ${escapeHtml(row.entity.name)}" src="data:image/png;base64,${row.entity.structure_image}" />`;
  }
  return `<span class="structure-placeholder" title="no structure image">&#8212;</span>`;
}

function sideRow(row: AlignmentRowView): ComparisonRow {
  const shade = row.matched ? row.shade : 0;
  return {
    key: row.entity.key,
    matched: row.matched,
    color: shadeColor(shade),
    shade,
    cells: [
      row.entity.cid === null ? "&#8212;" : escapeHtml(row.entity.cid),
      escapeHtml(row.entity.name),
      structureCell(row),
      escapeHtml(row.entity.formula ?? ""),
      row.entity.weight === null ? "" : escapeHtml(row.entity.weight),
    ],
  };
}

export function buildComparisonViewModel(payload: ComparePayload): ComparisonViewModel {
  return {
    input: payload.input,
    candidate: payload.candidate,
    inputRows: payload.rows.filter((row) => row.freq_input >= 1).map(sideRow),
    candidateRows: payload.rows.filter((row) => row.freq_candidate >= 1).map(sideRow),
  };
}

export function renderTable(rows: ComparisonRow[], caption: string): string {
  const header = COLUMNS.map((column) => `<th>${column}</th>`).join("");
  const body = rows
    .map((row) => {
      const cells = row.cells.map((cell) => `<td>${cell}</td>`).join("");
      const cls = row.matched ? "matched" : "unmatched";
      return `<tr class="${cls}" data-shade="${row.shade}" style="background-color: ${row.color}">${cells}</tr>`;
    })
    .join("");
  return (
    `<table class="entity-table"><caption>${escapeHtml(caption)}</caption>` +
    `<thead><tr>${header}</tr></thead><tbody>${body}</tbody></table>`
  );
}

export function renderSelectionTabs(
  bookmarks: BookmarkView[],
  selectedCandidate: string,
): string {
  if (bookmarks.length === 0) {
    return `<nav class="doc-tabs" aria-label="document selection"><span class="empty">no bookmarked recommendations yet</span></nav>`;
  }
  const tabs = bookmarks
    .map((bookmark) => {
      const active = bookmark.candidate === selectedCandidate ? " active" : "";
      return `<button class="tab${active}" data-candidate="${escapeHtml(bookmark.candidate)}">${escapeHtml(
        bookmark.candidate.slice(0, 8),
      )}&#8230;</button>`;
    })
    .join("");
  return `<nav class="doc-tabs" aria-label="document selection">${tabs}</nav>`;
}

export function renderComparisonView(
  payload: ComparePayload,
  bookmarks: BookmarkView[],
): string {
  const model = buildComparisonViewModel(payload);
  return (
    renderSelectionTabs(bookmarks, payload.candidate) +
    `<div class="compare-scroll"><div class="compare-columns">` +
    `<section class="pane">${renderTable(model.inputRows, "Input paper")}</section>` +
    `<section class="pane">${renderTable(model.candidateRows, "Recommended paper")}</section>` +
    `</div></div>`
  );
}
