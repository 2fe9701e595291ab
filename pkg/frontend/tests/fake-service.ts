// In-memory stand-in for the backend, honoring the same endpoint contract:
// strict score > threshold, read articles excluded, score-descending order
// with ascending-id tie break, k-truncated. Scores are cosine over raw
// token counts, so an exact duplicate body scores 1.0.

import type { FetchLike } from '../src/api';

export interface FixtureArticle {
  id: number;
  headline: string;
  body: string;
  category: string;
}

interface FakeSession {
  session_id: string;
  read_ids: number[];
}

function tokenCounts(body: string): Map<string, number> {
  const counts = new Map<string, number>();
  for (const token of body.split(/\s+/).filter(Boolean)) {
    counts.set(token, (counts.get(token) ?? 0) + 1);
  }
  return counts;
}

function cosine(a: Map<string, number>, b: Map<string, number>): number {
  let dot = 0;
  for (const [token, count] of a) dot += count * (b.get(token) ?? 0);
  const norm = (m: Map<string, number>) =>
    Math.sqrt([...m.values()].reduce((sum, c) => sum + c * c, 0));
  const na = norm(a);
  const nb = norm(b);
  if (na === 0 || nb === 0) return 0;
  return dot / (na * nb);
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

export class FakeService {
  sessions = new Map<string, FakeSession>();
  private counter = 1;
  down = false;
  requestLog: string[] = [];

  constructor(public articles: FixtureArticle[]) {}

  fetch: FetchLike = async (input, init) => {
    if (this.down) throw new TypeError('connection refused');
    const url = new URL(input, 'http://fixture');
    const method = (init?.method ?? 'GET').toUpperCase();
    this.requestLog.push(`${method} ${url.pathname}${url.search}`);
    return this.route(method, url, init);
  };

  private route(method: string, url: URL, init?: RequestInit): Response {
    const { pathname } = url;
    if (method === 'GET' && pathname === '/health') {
      return json(200, { status: 'ok', corpus_size: this.articles.length });
    }
    if (method === 'GET' && pathname === '/articles') {
      return this.listArticles(url);
    }
    const articleMatch = pathname.match(/^\/articles\/(\d+)$/);
    if (method === 'GET' && articleMatch) {
      const article = this.articles.find((a) => a.id === Number(articleMatch[1]));
      if (!article) return json(404, { detail: 'unknown article id' });
      return json(200, { ...article, news_length: article.body.length });
    }
    if (method === 'POST' && pathname === '/sessions') {
      const session = { session_id: `s${this.counter++}`, read_ids: [] };
      this.sessions.set(session.session_id, session);
      return json(200, session);
    }
    const readMatch = pathname.match(/^\/sessions\/([^/]+)\/read$/);
    if (method === 'POST' && readMatch) {
      return this.markRead(readMatch[1], init);
    }
    const recMatch = pathname.match(/^\/sessions\/([^/]+)\/recommendations$/);
    if (method === 'GET' && recMatch) {
      return this.recommendations(recMatch[1], url);
    }
    return json(404, { detail: `no route for ${method} ${pathname}` });
  }

  private listArticles(url: URL): Response {
    const category = url.searchParams.get('category');
    const offset = Number(url.searchParams.get('offset') ?? '0');
    const limit = Number(url.searchParams.get('limit') ?? '20');
    const filtered = category
      ? this.articles.filter((a) => a.category === category)
      : this.articles;
    return json(200, {
      total: filtered.length,
      offset,
      limit,
      articles: filtered
        .slice(offset, offset + limit)
        .map(({ id, headline, category: cat }) => ({ id, headline, category: cat })),
    });
  }

  private markRead(sessionId: string, init?: RequestInit): Response {
    const session = this.sessions.get(sessionId);
    if (!session) return json(404, { detail: 'unknown session' });
    const body = JSON.parse(String(init?.body ?? '{}')) as { article_id?: number };
    if (typeof body.article_id !== 'number') return json(400, { detail: 'malformed request' });
    if (!this.articles.some((a) => a.id === body.article_id)) {
      return json(404, { detail: 'unknown article id' });
    }
    if (!session.read_ids.includes(body.article_id)) {
      session.read_ids.push(body.article_id);
    }
    return json(200, { session_id: session.session_id, read_ids: [...session.read_ids] });
  }

  private recommendations(sessionId: string, url: URL): Response {
    const session = this.sessions.get(sessionId);
    if (!session) return json(404, { detail: 'unknown session' });
    const threshold = Number(url.searchParams.get('threshold') ?? '0.6');
    const k = Number(url.searchParams.get('k') ?? '10');
    const backend = url.searchParams.get('backend') ?? 'tfidf';
    if (session.read_ids.length === 0) {
      return json(200, { session_id: sessionId, backend, threshold, k, recommendations: [] });
    }
    const lastRead = session.read_ids[session.read_ids.length - 1];
    const readArticle = this.articles.find((a) => a.id === lastRead)!;
    const readVector = tokenCounts(readArticle.body);
    const scored = this.articles
      .filter((a) => !session.read_ids.includes(a.id))
      .map((a) => ({
        article_id: a.id,
        headline: a.headline,
        score: cosine(readVector, tokenCounts(a.body)),
        backend,
        against_read_id: lastRead,
      }))
      .filter((r) => r.score > threshold)
      .sort((x, y) => y.score - x.score || x.article_id - y.article_id)
      .slice(0, k);
    return json(200, {
      session_id: sessionId,
      backend,
      threshold,
      k,
      recommendations: scored,
    });
  }
}

export const FIXTURE_ARTICLES: FixtureArticle[] = [
  { id: 0, headline: 'فتح کی خبر', body: 'پاکستان کرکٹ ٹیم فتح', category: 'Sports' },
  { id: 1, headline: 'فتح کی دوسری خبر', body: 'پاکستان کرکٹ ٹیم فتح', category: 'Sports' },
  { id: 2, headline: 'میچ کی خبر', body: 'پاکستان کرکٹ میچ شکست', category: 'Sports' },
  { id: 3, headline: 'بجٹ کی خبر', body: 'معیشت ڈالر مہنگائی بجٹ', category: 'BusinessEconomics' },
];
