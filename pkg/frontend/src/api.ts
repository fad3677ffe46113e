/** Typed client for the semgraph HTTP API; the service is the single
 * source of truth for every count shown in the UI. */

export interface CorpusInfo {
  id: string;
  format: string;
  language: string | null;
  graphs: number;
}

export interface SearchBody {
  request: string;
  cluster?: string | null;
  limit: number;
  offset: number;
}

export interface Bindings {
  nodes: Record<string, string>;
  edges: Record<string, string>;
}

export interface SearchItem {
  sent_id: string;
  text: string | null;
  bindings: Bindings;
  dot: string;
}

export interface SearchResponse {
  total: number;
  items: SearchItem[];
  clusters?: Record<string, number>;
}

export interface SyntaxDetail {
  error: string;
  line: number;
  col: number;
  message: string;
  expected?: string[];
}

/** Query rejected by the service with an editor-anchorable position. */
export class QuerySyntaxFailure extends Error {
  constructor(public detail: SyntaxDetail) {
    super(`${detail.line}:${detail.col}: ${detail.message}`);
  }
}

/** Any other non-2xx answer (404 corpus, 400 pagination, 503 budget). */
export class ServiceFailure extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

/** The service could not be reached at all. */
export class ServiceUnreachable extends Error {}

async function parseError(response: Response): Promise<never> {
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    /* non-JSON error body */
  }
  const detail = (body as { detail?: unknown })?.detail;
  if (
    response.status === 422 &&
    typeof detail === "object" &&
    detail !== null &&
    "line" in detail
  ) {
    throw new QuerySyntaxFailure(detail as SyntaxDetail);
  }
  const message =
    typeof detail === "string" ? detail : `service answered ${response.status}`;
  throw new ServiceFailure(response.status, message);
}

export class ApiClient {
  constructor(private baseUrl: string) {}

  private async fetchOrUnreachable(
    path: string,
    init?: RequestInit,
  ): Promise<Response> {
    try {
      return await fetch(this.baseUrl + path, init);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new ServiceUnreachable(String(err));
    }
  }

  async listCorpora(): Promise<CorpusInfo[]> {
    const response = await this.fetchOrUnreachable("/corpora");
    if (!response.ok) await parseError(response);
    return (await response.json()) as CorpusInfo[];
  }

  async search(
    corpusId: string,
    body: SearchBody,
    signal?: AbortSignal,
  ): Promise<SearchResponse> {
    const response = await this.fetchOrUnreachable(
      `/corpora/${encodeURIComponent(corpusId)}/search`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
        signal,
      },
    );
    if (!response.ok) await parseError(response);
    return (await response.json()) as SearchResponse;
  }

  /** Raw graph document; `format` "interchange" (JSON text) or "dot". */
  async fetchGraph(
    corpusId: string,
    sentId: string,
    format: "interchange" | "dot" = "interchange",
  ): Promise<string> {
    const response = await this.fetchOrUnreachable(
      `/corpora/${encodeURIComponent(corpusId)}/graphs/${sentId}` +
        `?format=${format}`,
    );
    if (!response.ok) await parseError(response);
    return await response.text();
  }
}
