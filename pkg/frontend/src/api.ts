import type {
  ArticleDetail,
  ArticlePage,
  Backend,
  RecommendationResponse,
  SessionInfo,
} from './types';

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin client over the backend; all recommendation logic stays server-side. */
export class ApiClient {
  constructor(
    private base: string = '',
    private fetchFn: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.base + path, init);
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string; corpus_size: number }> {
    return this.request('/health');
  }

  listArticles(opts: { category?: string; offset?: number; limit?: number } = {}): Promise<ArticlePage> {
    const params = new URLSearchParams();
    if (opts.category) params.set('category', opts.category);
    if (opts.offset !== undefined) params.set('offset', String(opts.offset));
    if (opts.limit !== undefined) params.set('limit', String(opts.limit));
    const query = params.toString();
    return this.request(`/articles${query ? `?${query}` : ''}`);
  }

  getArticle(id: number): Promise<ArticleDetail> {
    return this.request(`/articles/${id}`);
  }

  createSession(): Promise<SessionInfo> {
    return this.request('/sessions', { method: 'POST' });
  }

  markRead(sessionId: string, articleId: number): Promise<SessionInfo> {
    return this.request(`/sessions/${sessionId}/read`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ article_id: articleId }),
    });
  }

  recommendations(
    sessionId: string,
    opts: { backend?: Backend; threshold?: number; k?: number } = {},
  ): Promise<RecommendationResponse> {
    const params = new URLSearchParams();
    if (opts.backend) params.set('backend', opts.backend);
    if (opts.threshold !== undefined) params.set('threshold', String(opts.threshold));
    if (opts.k !== undefined) params.set('k', String(opts.k));
    const query = params.toString();
    return this.request(`/sessions/${sessionId}/recommendations${query ? `?${query}` : ''}`);
  }
}
