/** Typed client for the matkb HTTP API. */

export interface TopValue {
  value: string;
  count: number;
}

export interface SlotInfo {
  name: string;
  aliases: string[];
  count: number;
  unique_values: number;
  top_values: TopValue[];
}

export interface Highlight {
  start: number;
  end: number;
  category: string;
}

export interface SearchResult {
  paragraph_id: string;
  article_id: string;
  score: number;
  snippet: string;
  highlights: Highlight[];
}

export interface SearchResponse {
  total: number;
  limit: number;
  offset: number;
  clamped: boolean;
  results: SearchResult[];
}

export interface Mention {
  start: number;
  end: number;
  category: string;
  surface: string;
  normalized: string;
}

export interface ParagraphDetail {
  paragraph: { paragraph_id: string; article_id: string; text: string; char_count: number };
  article: { article_id: string; title: string; venue: string; year: number | null };
  mentions: Mention[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  column?: number;
  valid_slots?: string[];
}

/** Server-reported failure (4xx/5xx with a structured error payload). */
export class ApiError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.body = body;
  }
}

async function request<T>(url: string, signal?: AbortSignal): Promise<T> {
  const resp = await fetch(url, { signal });
  if (!resp.ok) {
    let body: ApiErrorBody = { code: 'http_error', message: `HTTP ${resp.status}` };
    try {
      const payload = await resp.json();
      if (payload && payload.error) body = payload.error as ApiErrorBody;
    } catch {
      /* non-JSON error body; keep the generic message */
    }
    throw new ApiError(resp.status, body);
  }
  return (await resp.json()) as T;
}

export class MatkbClient {
  constructor(private readonly baseUrl: string = '') {}

  getSlots(signal?: AbortSignal): Promise<SlotInfo[]> {
    return request(`${this.baseUrl}/api/slots`, signal);
  }

  search(q: string, limit: number, offset: number, signal?: AbortSignal): Promise<SearchResponse> {
    const params = new URLSearchParams({ q, limit: String(limit), offset: String(offset) });
    return request(`${this.baseUrl}/api/search?${params}`, signal);
  }

  getParagraph(paragraphId: string, signal?: AbortSignal): Promise<ParagraphDetail> {
    // paragraph ids contain '#', which must not become a URL fragment
    return request(`${this.baseUrl}/api/paragraphs/${encodeURIComponent(paragraphId)}`, signal);
  }
}
