// JSON shapes of the backend endpoints.

export interface ArticleSummary {
  id: number;
  headline: string;
  category: string;
}

export interface ArticlePage {
  total: number;
  offset: number;
  limit: number;
  articles: ArticleSummary[];
}

export interface ArticleDetail extends ArticleSummary {
  body: string;
  news_length: number;
}

export interface SessionInfo {
  session_id: string;
  read_ids: number[];
}

export interface Recommendation {
  article_id: number;
  headline: string;
  score: number;
  backend: string;
  against_read_id: number;
}

export interface RecommendationResponse {
  session_id: string;
  backend: string;
  threshold: number;
  k: number;
  recommendations: Recommendation[];
}

export type Backend = 'tfidf' | 'embedding';

export const CATEGORIES = [
  'BusinessEconomics',
  'ScienceTechnology',
  'Entertainment',
  'Sports',
] as const;
