"""HTTP facade over the corpus, recommender, and evaluation metrics.

Sessions are persisted as line-delimited JSON snapshots (last write per
session id wins), appended and fsynced before a mutating response is sent,
so a crash or restart never loses an acknowledged read. Session ids are
deterministic counters and responses carry no timestamps: an identical
request sequence against a fresh store yields byte-identical responses.
"""

from __future__ import annotations

import json
import os
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .corpus import Category, Corpus, CorpusFormatError, get_article, load_corpus
from .embed import (
    EmbeddingProviderConfig,
    EmbeddingServiceError,
    EmbeddingStore,
    fetch_embeddings,
)
from .metrics import compute_metrics, confusion_from_labels
from .recommend import (
    RecommenderConfig,
    Session,
    mark_read,
    recommend,
)
from .textnorm import NormalizerConfig, normalize_pipeline
from .tfidf import TfIdfIndex, build_index
from .tokenize import default_stopwords, load_stopwords, remove_stopwords, tokenize

_SESSION_ID_RE = re.compile(r"^s(\d+)$")


class SessionStoreError(ValueError):
    """The session store file is corrupt or unwritable."""


@dataclass
class ServiceConfig:
    corpus_path: str | Path
    session_store_path: str | Path
    stopword_path: str | Path | None = None
    delimiter: str = ","
    embedding: EmbeddingProviderConfig | None = None
    recommender: RecommenderConfig = field(default_factory=RecommenderConfig)
    normalizer: NormalizerConfig = field(default_factory=NormalizerConfig)
    host: str = "127.0.0.1"
    port: int = 8000


class SessionStore:
    """Append-only JSONL session snapshots with last-write-wins reload."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self.sessions: dict[str, Session] = {}
        self._next_counter = 1
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        with open(self.path, encoding="utf-8") as handle:
            for line_num, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    session = Session.from_dict(record)
                except (ValueError, KeyError) as exc:
                    raise SessionStoreError(
                        f"corrupt session record at line {line_num} of {self.path}: {exc}"
                    ) from exc
                self.sessions[session.session_id] = session
                match = _SESSION_ID_RE.match(session.session_id)
                if match:
                    self._next_counter = max(self._next_counter, int(match.group(1)) + 1)

    def create(self) -> Session:
        with self._lock:
            while f"s{self._next_counter}" in self.sessions:
                self._next_counter += 1
            session = Session(session_id=f"s{self._next_counter}")
            self._next_counter += 1
            self.sessions[session.session_id] = session
            self._append(session)
            return session

    def get(self, session_id: str) -> Session | None:
        return self.sessions.get(session_id)

    def persist(self, session: Session) -> None:
        """Write a snapshot line; durable before the caller responds."""
        with self._lock:
            self.sessions[session.session_id] = session
            self._append(session)

    def _append(self, session: Session) -> None:
        with open(self.path, "a", encoding="utf-8") as handle:
            handle.write(json.dumps(session.to_dict(), ensure_ascii=False) + "\n")
            handle.flush()
            os.fsync(handle.fileno())


def load_sessions(path: str | Path) -> SessionStore:
    return SessionStore(path)


def _http_error(status_code: int, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"detail": detail})


class ReadRequest(BaseModel):
    article_id: int


def _prepare_documents(
    corpus: Corpus, stopwords: frozenset[str], normalizer: NormalizerConfig
) -> dict[int, list[str]]:
    docs = {}
    for article in corpus:
        clean = normalize_pipeline(article.body, normalizer)
        tokens = remove_stopwords(tokenize(clean, article.id), stopwords)
        docs[article.id] = tokens.tokens
    return docs


def create_app(config: ServiceConfig) -> FastAPI:
    """Build the service with all artifacts loaded; fails fast on bad input."""
    corpus = load_corpus(config.corpus_path, delimiter=config.delimiter)
    if len(corpus) == 0:
        raise CorpusFormatError(f"corpus at {config.corpus_path} has no articles")
    stopwords = (
        load_stopwords(config.stopword_path) if config.stopword_path else default_stopwords()
    )
    documents = _prepare_documents(corpus, stopwords, config.normalizer)
    index = build_index(documents)
    embedding_store: EmbeddingStore | None = None
    if config.embedding is not None:
        texts = {a.id: normalize_pipeline(a.body, config.normalizer) for a in corpus}
        embedding_store = fetch_embeddings(texts, config.embedding)
    store = SessionStore(config.session_store_path)

    app = FastAPI(title="khabar", docs_url=None, redoc_url=None)
    app.state.corpus = corpus
    app.state.index = index
    app.state.embedding_store = embedding_store
    app.state.store = store
    app.state.recommender = config.recommender

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return _http_error(400, "malformed request")

    @app.get("/health")
    def health():
        return {"status": "ok", "corpus_size": len(corpus)}

    @app.get("/articles")
    def list_articles(category: str | None = None, offset: int = 0, limit: int = 20):
        if offset < 0 or limit < 1:
            return _http_error(400, "offset must be >= 0 and limit >= 1")
        articles = corpus.articles
        if category is not None:
            try:
                wanted = Category.parse(category)
            except CorpusFormatError:
                return _http_error(400, f"unknown category: {category}")
            articles = [a for a in articles if a.category is wanted]
        page = articles[offset : offset + limit]
        return {
            "total": len(articles),
            "offset": offset,
            "limit": limit,
            "articles": [
                {"id": a.id, "headline": a.headline, "category": a.category.value}
                for a in page
            ],
        }

    @app.get("/articles/{article_id}")
    def article_detail(article_id: int):
        if article_id not in corpus:
            return _http_error(404, f"unknown article id: {article_id}")
        a = get_article(corpus, article_id)
        return {
            "id": a.id,
            "headline": a.headline,
            "body": a.body,
            "category": a.category.value,
            "news_length": a.news_length,
        }

    @app.post("/sessions")
    def create_session():
        session = store.create()
        return {"session_id": session.session_id, "read_ids": []}

    @app.post("/sessions/{session_id}/read")
    def read_article(session_id: str, body: ReadRequest):
        session = store.get(session_id)
        if session is None:
            return _http_error(404, f"unknown session: {session_id}")
        if body.article_id not in corpus:
            return _http_error(404, f"unknown article id: {body.article_id}")
        mark_read(session, body.article_id, corpus)
        store.persist(session)
        return {"session_id": session.session_id, "read_ids": list(session.read_ids)}

    def _config_for(backend: str | None, threshold: float | None, k: int | None):
        base = app.state.recommender
        return RecommenderConfig(
            threshold=base.threshold if threshold is None else threshold,
            top_k=base.top_k if k is None else k,
            backend=base.backend if backend is None else backend,
            aggregation=base.aggregation,
        )

    def _artifact_for(backend: str):
        if backend == "embedding":
            if embedding_store is None:
                raise EmbeddingServiceError("no embedding provider configured")
            return embedding_store
        return index

    @app.get("/sessions/{session_id}/recommendations")
    def session_recommendations(
        session_id: str,
        backend: str | None = None,
        threshold: float | None = None,
        k: int | None = None,
    ):
        session = store.get(session_id)
        if session is None:
            return _http_error(404, f"unknown session: {session_id}")
        try:
            cfg = _config_for(backend, threshold, k)
        except ValueError as exc:
            return _http_error(400, str(exc))
        if not session.read_ids:
            return {
                "session_id": session_id,
                "backend": cfg.backend,
                "threshold": cfg.threshold,
                "k": cfg.top_k,
                "recommendations": [],
            }
        try:
            results = recommend(session, cfg, _artifact_for(cfg.backend), corpus)
        except EmbeddingServiceError as exc:
            return _http_error(503, str(exc))
        return {
            "session_id": session_id,
            "backend": cfg.backend,
            "threshold": cfg.threshold,
            "k": cfg.top_k,
            "recommendations": [
                {
                    "article_id": r.article_id,
                    "headline": get_article(corpus, r.article_id).headline,
                    "score": r.score,
                    "backend": r.backend,
                    "against_read_id": r.against_read_id,
                }
                for r in results
            ],
        }

    @app.get("/metrics")
    def session_metrics(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _http_error(404, f"unknown session: {session_id}")
        if not session.read_ids:
            return _http_error(400, "session has no read articles to evaluate")
        cfg = app.state.recommender
        try:
            results = recommend(session, cfg, _artifact_for(cfg.backend), corpus)
        except EmbeddingServiceError as exc:
            return _http_error(503, str(exc))
        read_set = set(session.read_ids)
        universe = [a.id for a in corpus if a.id not in read_set]
        last_category = get_article(corpus, session.read_ids[-1]).category
        relevant = [
            a.id for a in corpus if a.id not in read_set and a.category is last_category
        ]
        predicted = [r.article_id for r in results]
        cm = confusion_from_labels(predicted, relevant, universe)
        report = compute_metrics(cm)
        return {
            "session_id": session_id,
            "confusion": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn},
            "measures": report.to_dict(),
        }

    return app


def run(config: ServiceConfig) -> None:
    """Start the service; raises before binding if any artifact fails to load."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
