/** Upload view: file picker posting to the document endpoint. */

import { escapeHtml } from "../html.js";

export function renderUploadForm(error?: string): string {
  const banner = error
    ? `<div class="error-banner" role="alert">${escapeHtml(error)}</div>`
    : "";
  return (
    banner +
    `<form id="upload-form" class="upload">` +
    `<label>paper file <input type="file" id="upload-file" required /></label>` +
    `<label>format <select id="upload-format">` +
    `<option value="xml">xml</option><option value="plaintext">plaintext</option>` +
    `</select></label>` +
    `<label>title (optional) <input type="text" id="upload-title" /></label>` +
    `<button type="submit">upload</button>` +
    `</form>`
  );
}

export function detectFormat(filename: string): "xml" | "plaintext" {
  return filename.toLowerCase().endsWith(".xml") ? "xml" : "plaintext";
}
