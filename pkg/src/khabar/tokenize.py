"""Word tokenization and stopword filtering for cleaned Urdu text."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator


@dataclass
class TokenList:
    """Ordered content tokens of one document."""

    tokens: list[str] = field(default_factory=list)
    source_article_id: int | None = None

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]


def tokenize(text: str, source_article_id: int | None = None) -> TokenList:
    """Split text into maximal non-whitespace runs, in order."""
    return TokenList(tokens=text.split(), source_article_id=source_article_id)


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stopword file: UTF-8, one word per line, '#' comments allowed."""
    words: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            word = line.strip()
            if not word or word.startswith("#"):
                continue
            words.add(word)
    return frozenset(words)


def default_stopwords() -> frozenset[str]:
    """The Urdu stopword list bundled with the package."""
    ref = resources.files("khabar.data").joinpath("urdu_stopwords.txt")
    words: set[str] = set()
    for line in ref.read_text(encoding="utf-8").splitlines():
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        words.add(word)
    return frozenset(words)


def remove_stopwords(tokens: TokenList, stopwords: frozenset[str]) -> TokenList:
    """Drop exact-match stopwords, preserving the order of the rest."""
    kept = [t for t in tokens.tokens if t not in stopwords]
    return TokenList(tokens=kept, source_article_id=tokens.source_article_id)
