"""Sparse TF-IDF indexing and cosine similarity.

Weights are raw term count times ln(N / df). A term present in every
document gets idf 0 and never appears in a stored vector. The vocabulary is
ordered lexicographically so that an identical corpus always produces an
identical index.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

FORMAT_NAME = "khabar-tfidf-index"
FORMAT_VERSION = 1

TF_SCHEMES = ("raw", "log", "norm")


class EmptyCorpusError(ValueError):
    """An index cannot be built from zero documents."""


@dataclass(frozen=True)
class Vocabulary:
    id_to_term: tuple[str, ...]
    term_to_id: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "term_to_id", {term: i for i, term in enumerate(self.id_to_term)}
        )

    def __len__(self) -> int:
        return len(self.id_to_term)

    def __contains__(self, term: str) -> bool:
        return term in self.term_to_id


@dataclass(frozen=True)
class SparseVector:
    """(term_id, weight) pairs sorted by term_id; no zeros, no duplicates."""

    entries: tuple[tuple[int, float], ...]

    def norm(self) -> float:
        return math.sqrt(sum(w * w for _, w in self.entries))

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class TfIdfIndex:
    vocabulary: Vocabulary
    doc_count: int
    document_frequency: tuple[int, ...]
    idf: tuple[float, ...]
    doc_vectors: dict[int, SparseVector]
    tf_scheme: str = "raw"


def term_frequency(doc: Iterable[str]) -> dict[str, int]:
    """Raw occurrence count per term; counts sum to the token total."""
    return dict(Counter(doc))


def _tf_value(count: int, doc_len: int, scheme: str) -> float:
    if scheme == "raw":
        return float(count)
    if scheme == "log":
        return 1.0 + math.log(count)
    if scheme == "norm":
        return count / doc_len
    raise ValueError(f"unknown tf scheme: {scheme!r} (expected one of {TF_SCHEMES})")


def inverse_document_frequency(
    docs: Sequence[Iterable[str]],
) -> tuple[Vocabulary, tuple[float, ...]]:
    """Document frequencies and idf = ln(N / df) over a document list."""
    if not docs:
        raise EmptyCorpusError("need at least one document")
    df_by_term: Counter[str] = Counter()
    for doc in docs:
        df_by_term.update(set(doc))
    vocabulary = Vocabulary(id_to_term=tuple(sorted(df_by_term)))
    n = len(docs)
    idf = tuple(math.log(n / df_by_term[t]) for t in vocabulary.id_to_term)
    return vocabulary, idf


def build_index(
    docs: Mapping[int, Iterable[str]], tf_scheme: str = "raw"
) -> TfIdfIndex:
    """Build the per-document sparse tf*idf vectors for a tokenized corpus."""
    if not docs:
        raise EmptyCorpusError("need at least one document")
    if tf_scheme not in TF_SCHEMES:
        raise ValueError(f"unknown tf scheme: {tf_scheme!r} (expected one of {TF_SCHEMES})")
    token_lists = {doc_id: list(tokens) for doc_id, tokens in docs.items()}
    vocabulary, idf = inverse_document_frequency(list(token_lists.values()))
    df_by_term: Counter[str] = Counter()
    for tokens in token_lists.values():
        df_by_term.update(set(tokens))
    document_frequency = tuple(df_by_term[t] for t in vocabulary.id_to_term)

    doc_vectors: dict[int, SparseVector] = {}
    for doc_id, tokens in token_lists.items():
        counts = term_frequency(tokens)
        entries = []
        for term, count in counts.items():
            term_id = vocabulary.term_to_id[term]
            weight = _tf_value(count, len(tokens), tf_scheme) * idf[term_id]
            if weight != 0.0:
                entries.append((term_id, weight))
        entries.sort()
        doc_vectors[doc_id] = SparseVector(entries=tuple(entries))

    return TfIdfIndex(
        vocabulary=vocabulary,
        doc_count=len(token_lists),
        document_frequency=document_frequency,
        idf=idf,
        doc_vectors=doc_vectors,
        tf_scheme=tf_scheme,
    )


def vectorize_query(doc: Iterable[str], index: TfIdfIndex) -> SparseVector:
    """tf of the query tokens times index idf; out-of-vocabulary ignored."""
    tokens = list(doc)
    counts = term_frequency(tokens)
    entries = []
    for term, count in counts.items():
        term_id = index.vocabulary.term_to_id.get(term)
        if term_id is None:
            continue
        weight = _tf_value(count, len(tokens), index.tf_scheme) * index.idf[term_id]
        if weight != 0.0:
            entries.append((term_id, weight))
    entries.sort()
    return SparseVector(entries=tuple(entries))


def _sparse_dot(a: SparseVector, b: SparseVector) -> float:
    total = 0.0
    i = j = 0
    ea, eb = a.entries, b.entries
    while i < len(ea) and j < len(eb):
        ta, wa = ea[i]
        tb, wb = eb[j]
        if ta == tb:
            total += wa * wb
            i += 1
            j += 1
        elif ta < tb:
            i += 1
        else:
            j += 1
    return total


def cosine(a, b) -> float:
    """dot(a, b) / (|a| * |b|); defined as 0 when either norm is 0.

    Accepts two SparseVector instances or two dense sequences of floats.
    Dense inputs must have equal length.
    """
    if isinstance(a, SparseVector) and isinstance(b, SparseVector):
        norm_a = a.norm()
        norm_b = b.norm()
        if norm_a == 0.0 or norm_b == 0.0:
            return 0.0
        return _sparse_dot(a, b) / (norm_a * norm_b)
    if isinstance(a, SparseVector) or isinstance(b, SparseVector):
        raise TypeError("cannot mix sparse and dense vectors")
    va = list(a)
    vb = list(b)
    if len(va) != len(vb):
        raise ValueError(f"dense vector dimension mismatch: {len(va)} != {len(vb)}")
    norm_a = math.sqrt(sum(x * x for x in va))
    norm_b = math.sqrt(sum(x * x for x in vb))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return sum(x * y for x, y in zip(va, vb)) / (norm_a * norm_b)


def save_index(index: TfIdfIndex, path: str | Path) -> None:
    """Persist an index as versioned JSON; floats round-trip exactly."""
    payload = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "tf_scheme": index.tf_scheme,
        "doc_count": index.doc_count,
        "terms": list(index.vocabulary.id_to_term),
        "document_frequency": list(index.document_frequency),
        "idf": list(index.idf),
        "doc_vectors": {
            str(doc_id): [[t, w] for t, w in vec.entries]
            for doc_id, vec in index.doc_vectors.items()
        },
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, ensure_ascii=False)


def load_index(path: str | Path) -> TfIdfIndex:
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    if payload.get("format") != FORMAT_NAME:
        raise ValueError(f"not a tf-idf index file: {path}")
    if payload.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported index format version: {payload.get('version')}")
    return TfIdfIndex(
        vocabulary=Vocabulary(id_to_term=tuple(payload["terms"])),
        doc_count=payload["doc_count"],
        document_frequency=tuple(payload["document_frequency"]),
        idf=tuple(payload["idf"]),
        doc_vectors={
            int(doc_id): SparseVector(entries=tuple((t, w) for t, w in entries))
            for doc_id, entries in payload["doc_vectors"].items()
        },
        tf_scheme=payload.get("tf_scheme", "raw"),
    )
