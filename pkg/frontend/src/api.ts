// Thin client for the feedback service; fetch is injectable for tests.

import type {
  FeedbackBundle,
  FeedbackOptions,
  LayoutDocument,
} from "./types.js";

export type FetchFn = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, public code: string, message: string) {
    super(message);
  }
}

async function parseError(res: Response): Promise<ApiError> {
  try {
    const body = (await res.json()) as { error?: { code?: string; message?: string } };
    return new ApiError(res.status, body.error?.code ?? "unknown",
      body.error?.message ?? res.statusText);
  } catch {
    return new ApiError(res.status, "unknown", res.statusText);
  }
}

export class ApiClient {
  constructor(
    public baseUrl: string,
    private fetchFn: FetchFn = (url, init) => fetch(url, init),
  ) {}

  async feedback(doc: LayoutDocument, options: FeedbackOptions = {},
                 signal?: AbortSignal): Promise<FeedbackBundle> {
    const res = await this.fetchFn(`${this.baseUrl}/v1/feedback`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ layout: doc, options }),
      signal,
    });
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as FeedbackBundle;
  }

  /** Template scaled server-side onto the studio canvas. */
  async fetchTemplate(entryId: string, canvasW: number, canvasH: number): Promise<LayoutDocument> {
    const res = await this.fetchFn(
      `${this.baseUrl}/v1/corpus/${encodeURIComponent(entryId)}/layout` +
        `?canvas_w=${canvasW}&canvas_h=${canvasH}`,
    );
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as LayoutDocument;
  }

  thumbnailUrl(entryId: string): string {
    return `${this.baseUrl}/v1/corpus/${encodeURIComponent(entryId)}/thumbnail.png`;
  }

  async health(): Promise<{ status: string; corpus_size: number; embedding_mode: string }> {
    const res = await this.fetchFn(`${this.baseUrl}/v1/health`);
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as { status: string; corpus_size: number; embedding_mode: string };
  }
}
