"""Reading sessions and threshold-filtered top-k recommendation.

A candidate is recommended when its cosine similarity to the reader's
history is strictly above the threshold (default 0.60). Results are sorted
by score descending with ties broken by ascending article id, so a fixed
corpus and session always produce the same list.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .corpus import Corpus, UnknownArticleError
from .embed import EmbeddingStore, get_embedding
from .tfidf import TfIdfIndex, cosine

BACKENDS = ("tfidf", "embedding")
AGGREGATIONS = ("per_last_read", "max_over_reads")


class BackendNotReadyError(RuntimeError):
    """The artifacts for the requested similarity backend are missing."""


class EmptySessionError(ValueError):
    """Recommendations need at least one read article."""


@dataclass
class Session:
    session_id: str
    read_ids: list[int] = field(default_factory=list)
    created_at: float = field(default_factory=time.time)
    updated_at: float = field(default_factory=time.time)

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "read_ids": list(self.read_ids),
            "created_at": self.created_at,
            "updated_at": self.updated_at,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Session":
        return cls(
            session_id=str(data["session_id"]),
            read_ids=[int(i) for i in data.get("read_ids", [])],
            created_at=float(data.get("created_at", 0.0)),
            updated_at=float(data.get("updated_at", 0.0)),
        )


@dataclass(frozen=True)
class Recommendation:
    article_id: int
    score: float
    backend: str
    against_read_id: int


@dataclass
class RecommenderConfig:
    threshold: float = 0.60
    top_k: int = 10
    backend: str = "tfidf"
    aggregation: str = "per_last_read"

    def __post_init__(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.top_k < 1:
            raise ValueError(f"top_k must be positive, got {self.top_k}")
        if self.backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}, got {self.backend!r}")
        if self.aggregation not in AGGREGATIONS:
            raise ValueError(
                f"aggregation must be one of {AGGREGATIONS}, got {self.aggregation!r}"
            )


def mark_read(session: Session, article_id: int, corpus: Corpus) -> Session:
    """Record a read article id; repeated reads of the same id are no-ops."""
    if article_id not in corpus:
        raise UnknownArticleError(article_id)
    if article_id not in session.read_ids:
        session.read_ids.append(article_id)
    session.updated_at = time.time()
    return session


def _vector_for(article_id: int, backend: str, artifact) -> object:
    if backend == "tfidf":
        if not isinstance(artifact, TfIdfIndex):
            raise BackendNotReadyError("tfidf backend needs a built TfIdfIndex")
        try:
            return artifact.doc_vectors[article_id]
        except KeyError:
            raise UnknownArticleError(article_id) from None
    if backend == "embedding":
        if not isinstance(artifact, EmbeddingStore):
            raise BackendNotReadyError("embedding backend needs a loaded EmbeddingStore")
        return get_embedding(artifact, article_id)
    raise ValueError(f"unknown backend: {backend!r}")


def score_against_corpus(
    read_id: int, backend: str, artifact, corpus: Corpus
) -> list[tuple[int, float]]:
    """Cosine score of every other corpus article against one read article."""
    if read_id not in corpus:
        raise UnknownArticleError(read_id)
    read_vector = _vector_for(read_id, backend, artifact)
    scores = []
    for article in corpus:
        if article.id == read_id:
            continue
        other = _vector_for(article.id, backend, artifact)
        scores.append((article.id, cosine(read_vector, other)))
    return scores


def recommend(
    session: Session,
    config: RecommenderConfig,
    artifact,
    corpus: Corpus,
) -> list[Recommendation]:
    """Unread articles scoring strictly above the threshold, best first."""
    if not session.read_ids:
        raise EmptySessionError("session has no read articles")
    read_set = set(session.read_ids)

    if config.aggregation == "per_last_read":
        read_ids = [session.read_ids[-1]]
    else:
        read_ids = sorted(read_set)

    best: dict[int, tuple[float, int]] = {}
    for read_id in read_ids:
        for article_id, score in score_against_corpus(read_id, config.backend, artifact, corpus):
            if article_id in read_set:
                continue
            current = best.get(article_id)
            if current is None or score > current[0]:
                best[article_id] = (score, read_id)

    kept = [
        Recommendation(
            article_id=article_id,
            score=score,
            backend=config.backend,
            against_read_id=read_id,
        )
        for article_id, (score, read_id) in best.items()
        if score > config.threshold
    ]
    kept.sort(key=lambda r: (-r.score, r.article_id))
    return kept[: config.top_k]
