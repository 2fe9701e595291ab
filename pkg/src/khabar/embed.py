"""Dense-embedding backends: precomputed vector files or a remote service.

The recommender treats embeddings as an opaque source of fixed-dimension
vectors per article. The file backend gives reproducible tests and offline
runs; the remote client POSTs article text to an HTTP endpoint that answers
{"embedding": [...]}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import requests

from .corpus import UnknownArticleError

DEFAULT_TIMEOUT = 10.0


class EmbeddingFormatError(ValueError):
    """An embedding file does not follow the expected line format."""


class EmbeddingServiceError(RuntimeError):
    """The remote embedding endpoint failed or answered with a bad payload."""


@dataclass
class EmbeddingStore:
    dim: int
    vectors: dict[int, tuple[float, ...]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, article_id: int) -> bool:
        return article_id in self.vectors


@dataclass
class EmbeddingProviderConfig:
    mode: str  # "file" or "remote"
    path: str | Path | None = None
    endpoint: str | None = None
    timeout: float = DEFAULT_TIMEOUT
    expected_dim: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("file", "remote"):
            raise ValueError(f"mode must be 'file' or 'remote', got {self.mode!r}")
        if self.mode == "file" and not self.path:
            raise ValueError("file mode requires a path")
        if self.mode == "remote" and not self.endpoint:
            raise ValueError("remote mode requires an endpoint")


def load_embeddings(path: str | Path) -> EmbeddingStore:
    """Read a vector file: header "dim <d>", then "<id>\\t<d reals>" lines."""
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().strip()
        parts = header.split()
        if len(parts) != 2 or parts[0] != "dim" or not parts[1].isdigit():
            raise EmbeddingFormatError(f"malformed header {header!r} in {path}")
        dim = int(parts[1])
        vectors: dict[int, tuple[float, ...]] = {}
        for line_num, line in enumerate(handle, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                id_part, values_part = line.split("\t", 1)
                article_id = int(id_part)
            except ValueError:
                raise EmbeddingFormatError(
                    f"line {line_num} of {path}: expected '<id>\\t<values>'"
                ) from None
            components = values_part.split()
            if len(components) != dim:
                raise EmbeddingFormatError(
                    f"line {line_num} of {path}: expected {dim} components, got {len(components)}"
                )
            try:
                vector = tuple(float(c) for c in components)
            except ValueError:
                raise EmbeddingFormatError(
                    f"line {line_num} of {path}: non-numeric component"
                ) from None
            if any(not math.isfinite(v) for v in vector):
                raise EmbeddingFormatError(f"line {line_num} of {path}: non-finite value")
            if article_id in vectors:
                raise EmbeddingFormatError(f"line {line_num} of {path}: duplicate id {article_id}")
            vectors[article_id] = vector
    return EmbeddingStore(dim=dim, vectors=vectors)


def save_embeddings(store: EmbeddingStore, path: str | Path) -> None:
    """Write a store in the same line format load_embeddings reads."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"dim {store.dim}\n")
        for article_id in sorted(store.vectors):
            values = " ".join(repr(v) for v in store.vectors[article_id])
            handle.write(f"{article_id}\t{values}\n")


def get_embedding(store: EmbeddingStore, article_id: int) -> tuple[float, ...]:
    try:
        return store.vectors[article_id]
    except KeyError:
        raise UnknownArticleError(article_id) from None


def embed_remote(text: str, config: EmbeddingProviderConfig) -> tuple[float, ...]:
    """Fetch one embedding from the configured HTTP endpoint."""
    if config.mode != "remote":
        raise ValueError("embed_remote requires a remote-mode config")
    try:
        response = requests.post(
            config.endpoint, json={"text": text}, timeout=config.timeout
        )
    except requests.RequestException as exc:
        raise EmbeddingServiceError(f"embedding request failed: {exc}") from exc
    if not 200 <= response.status_code < 300:
        raise EmbeddingServiceError(
            f"embedding endpoint returned status {response.status_code}"
        )
    try:
        payload = response.json()
        vector = tuple(float(v) for v in payload["embedding"])
    except (ValueError, KeyError, TypeError) as exc:
        raise EmbeddingServiceError(f"malformed embedding response: {exc}") from exc
    if config.expected_dim is not None and len(vector) != config.expected_dim:
        raise EmbeddingServiceError(
            f"expected {config.expected_dim}-dimensional embedding, got {len(vector)}"
        )
    return vector


def fetch_embeddings(
    texts: Mapping[int, str], config: EmbeddingProviderConfig
) -> EmbeddingStore:
    """Build an EmbeddingStore for a set of articles via either provider.

    Recommendation results depend only on the vectors returned, never on
    which mode produced them.
    """
    if config.mode == "file":
        store = load_embeddings(config.path)
        if config.expected_dim is not None and store.dim != config.expected_dim:
            raise EmbeddingFormatError(
                f"expected dim {config.expected_dim}, file has {store.dim}"
            )
        return store
    vectors: dict[int, tuple[float, ...]] = {}
    dim: int | None = config.expected_dim
    for article_id in sorted(texts):
        vector = embed_remote(texts[article_id], config)
        if dim is None:
            dim = len(vector)
        elif len(vector) != dim:
            raise EmbeddingServiceError(
                f"inconsistent embedding dims: article {article_id} got {len(vector)}, expected {dim}"
            )
        vectors[article_id] = vector
    return EmbeddingStore(dim=dim or 0, vectors=vectors)
