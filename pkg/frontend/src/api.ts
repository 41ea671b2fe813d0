/** Typed client for the recommender service JSON API.
 *
 * Every view derives its data from these payloads; no chemistry logic
 * (weights, shading, matching) lives client-side.
 */

export interface EntityView {
  key: string;
  cid: number | null;
  name: string;
  iupac_name: string | null;
  formula: string | null;
  weight: number | null;
  structure_image: string | null;
  synonyms: string[];
  status: "resolved" | "unresolved";
  frequency?: number;
}

export interface EntitiesPayload {
  id: string;
  title: string;
  entities: EntityView[];
}

export interface RecommendationView {
  id: string;
  score: number;
  entity_component: number;
  text_component: number;
}

export interface RecommendationsPayload {
  input: string;
  k: number;
  w_entity: number;
  w_text: number;
  recommendations: RecommendationView[];
}

export interface AlignmentRowView {
  entity: EntityView;
  freq_input: number;
  freq_candidate: number;
  matched: boolean;
  shade: 0 | 1 | 2 | 3;
}

export interface ComparePayload {
  input: string;
  candidate: string;
  rows: AlignmentRowView[];
}

export interface BookmarkView {
  input: string;
  candidate: string;
  seq: number;
}

export interface BookmarksPayload {
  input: string | null;
  bookmarks: BookmarkView[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    detail: string,
  ) {
    super(detail);
  }
}

async function parseError(response: Response): Promise<never> {
  let code = "error";
  let detail = response.statusText;
  try {
    const body = await response.json();
    code = body.error ?? code;
    detail = body.detail ?? detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, code, detail);
}

export class ApiClient {
  constructor(private base: string = "") {}

  private async getJson<T>(path: string, signal?: AbortSignal): Promise<T> {
    const response = await fetch(this.base + path, { signal });
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  async uploadDocument(file: File, format: string, title?: string): Promise<{ id: string }> {
    const form = new FormData();
    form.append("file", file);
    form.append("format", format);
    if (title) form.append("title", title);
    const response = await fetch(this.base + "/api/documents", { method: "POST", body: form });
    if (!response.ok) await parseError(response);
    return (await response.json()) as { id: string };
  }

  entities(id: string): Promise<EntitiesPayload> {
    return this.getJson(`/api/documents/${encodeURIComponent(id)}/entities`);
  }

  recommendations(
    id: string,
    k: number,
    wEntity: number,
    wText: number,
    signal?: AbortSignal,
  ): Promise<RecommendationsPayload> {
    const query = new URLSearchParams({
      k: String(k),
      w_entity: String(wEntity),
      w_text: String(wText),
    });
    return this.getJson(`/api/documents/${encodeURIComponent(id)}/recommendations?${query}`, signal);
  }

  compare(input: string, candidate: string): Promise<ComparePayload> {
    const query = new URLSearchParams({ input, candidate });
    return this.getJson(`/api/compare?${query}`);
  }

  bookmarks(input: string): Promise<BookmarksPayload> {
    const query = new URLSearchParams({ input });
    return this.getJson(`/api/bookmarks?${query}`);
  }

  async addBookmark(input: string, candidate: string): Promise<BookmarksPayload> {
    const response = await fetch(this.base + "/api/bookmarks", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ input, candidate }),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as BookmarksPayload;
  }
}
