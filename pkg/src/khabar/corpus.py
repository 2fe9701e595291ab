"""Load and validate the delimited news dataset.

The source file is UTF-8 delimited text with a header row. Rows missing any
required cell are dropped (counted, logged to the diagnostic channel), never
silently mutated. The loaded corpus is immutable by convention: nothing in
this package writes to it after construction.
"""

from __future__ import annotations

import csv
import enum
import logging
from dataclasses import dataclass, field
from pathlib import Path

logger = logging.getLogger(__name__)

# Canonical column keys after header normalization (trim, casefold,
# underscores treated as spaces).
_COL_ID = "id"
_COL_HEADLINE = "headline"
_COL_BODY = "news text"
_COL_CATEGORY = "category"
_COL_LENGTH = "news length"

_REQUIRED_COLUMNS = (_COL_HEADLINE, _COL_BODY, _COL_CATEGORY)


class CorpusFormatError(ValueError):
    """The dataset file cannot be ingested as specified."""


class UnknownArticleError(KeyError):
    """An article id is not present in the corpus."""


class Category(enum.Enum):
    BUSINESS_ECONOMICS = "BusinessEconomics"
    SCIENCE_TECHNOLOGY = "ScienceTechnology"
    ENTERTAINMENT = "Entertainment"
    SPORTS = "Sports"

    @classmethod
    def parse(cls, label: str) -> "Category":
        """Map a source label to a category; '&'/'and' and case are ignored."""
        key = label.strip().casefold().replace("&", " ").replace(" and ", " ")
        key = "".join(key.split())
        try:
            return _CATEGORY_ALIASES[key]
        except KeyError:
            raise CorpusFormatError(f"unknown category label: {label!r}") from None


_CATEGORY_ALIASES = {
    "businesseconomics": Category.BUSINESS_ECONOMICS,
    "sciencetechnology": Category.SCIENCE_TECHNOLOGY,
    "entertainment": Category.ENTERTAINMENT,
    "sports": Category.SPORTS,
}


@dataclass(frozen=True)
class Article:
    id: int
    headline: str
    body: str
    category: Category
    news_length: int


@dataclass
class Corpus:
    articles: list[Article]
    source_path: str
    dropped_rows: int = 0
    _by_id: dict[int, Article] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._by_id = {a.id: a for a in self.articles}

    def __len__(self) -> int:
        return len(self.articles)

    def __iter__(self):
        return iter(self.articles)

    def __contains__(self, article_id: int) -> bool:
        return article_id in self._by_id


def _normalize_header(cell: str) -> str:
    return cell.strip().casefold().replace("_", " ")


def load_corpus(path: str | Path, delimiter: str = ",") -> Corpus:
    """Read the dataset, one Article per complete row.

    Rows with an empty or unparseable required cell are dropped and counted.
    When the id column is absent, ids are assigned sequentially from 0 in
    source order. When the length column is absent or blank, news_length is
    the character count of the body.
    """
    path = Path(path)
    try:
        handle = open(path, encoding="utf-8", newline="")
    except FileNotFoundError:
        raise CorpusFormatError(f"dataset file not found: {path}") from None
    with handle:
        try:
            reader = csv.reader(handle, delimiter=delimiter)
            try:
                header = next(reader)
            except StopIteration:
                raise CorpusFormatError(f"dataset file is empty: {path}") from None
            columns = {_normalize_header(cell): i for i, cell in enumerate(header)}
            missing = [c for c in _REQUIRED_COLUMNS if c not in columns]
            if missing:
                raise CorpusFormatError(
                    f"missing required column(s) {', '.join(missing)} in {path}"
                )
            id_idx = columns.get(_COL_ID)
            length_idx = columns.get(_COL_LENGTH)

            articles: list[Article] = []
            seen_ids: set[int] = set()
            dropped = 0
            next_auto_id = 0
            for row_num, row in enumerate(reader, start=2):
                if not row or all(not cell.strip() for cell in row):
                    continue
                cells = {}
                ok = True
                for col in (_COL_HEADLINE, _COL_BODY, _COL_CATEGORY):
                    idx = columns[col]
                    value = row[idx].strip() if idx < len(row) else ""
                    if not value:
                        ok = False
                        break
                    cells[col] = value
                if ok and id_idx is not None:
                    raw_id = row[id_idx].strip() if id_idx < len(row) else ""
                    if not raw_id or not raw_id.isdigit():
                        ok = False
                if not ok:
                    dropped += 1
                    logger.warning("dropping incomplete row %d of %s", row_num, path)
                    continue

                if id_idx is not None:
                    article_id = int(row[id_idx].strip())
                    if article_id in seen_ids:
                        raise CorpusFormatError(
                            f"duplicate article id {article_id} at row {row_num} of {path}"
                        )
                else:
                    article_id = next_auto_id
                    next_auto_id += 1
                seen_ids.add(article_id)

                body = cells[_COL_BODY]
                news_length = len(body)
                if length_idx is not None and length_idx < len(row):
                    raw_len = row[length_idx].strip()
                    if raw_len.isdigit():
                        news_length = int(raw_len)

                articles.append(
                    Article(
                        id=article_id,
                        headline=cells[_COL_HEADLINE],
                        body=body,
                        category=Category.parse(cells[_COL_CATEGORY]),
                        news_length=news_length,
                    )
                )
        except UnicodeDecodeError as exc:
            raise CorpusFormatError(f"dataset file is not valid UTF-8: {path}") from exc

    if dropped:
        logger.info("loaded %d articles from %s (%d rows dropped)", len(articles), path, dropped)
    return Corpus(articles=articles, source_path=str(path), dropped_rows=dropped)


def category_counts(corpus: Corpus) -> dict[Category, int]:
    """Article count per category; every category key is present."""
    counts = {category: 0 for category in Category}
    for article in corpus.articles:
        counts[article.category] += 1
    return counts


def get_article(corpus: Corpus, article_id: int) -> Article:
    try:
        return corpus._by_id[article_id]
    except KeyError:
        raise UnknownArticleError(article_id) from None
