import csv
from pathlib import Path

import pytest

from khabar.corpus import Article, Category, Corpus

HEADER = ["ID", "Headline", "News Text", "Category", "News Length"]

# Four articles with hand-set token overlaps: 0 and 1 are exact duplicates,
# 2 shares two tokens with them, 3 is disjoint.
FIXTURE_ROWS = [
    ["0", "فتح کی خبر", "پاکستان کرکٹ ٹیم فتح", "Sports", "20"],
    ["1", "فتح کی دوسری خبر", "پاکستان کرکٹ ٹیم فتح", "Sports", "20"],
    ["2", "میچ کی خبر", "پاکستان کرکٹ میچ شکست", "Sports", "22"],
    ["3", "بجٹ کی خبر", "معیشت ڈالر مہنگائی بجٹ", "Business & Economics", "23"],
]


def write_csv(path: Path, rows: list[list[str]], header: list[str] = HEADER) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    return path


@pytest.fixture
def fixture_csv(tmp_path: Path) -> Path:
    return write_csv(tmp_path / "news.csv", FIXTURE_ROWS)


def synthetic_corpus(docs: dict[int, list[str]], category: Category = Category.SPORTS) -> Corpus:
    """A Corpus whose article bodies are the given token lists, space-joined."""
    articles = [
        Article(
            id=article_id,
            headline=f"headline {article_id}",
            body=" ".join(tokens),
            category=category,
            news_length=len(" ".join(tokens)),
        )
        for article_id, tokens in sorted(docs.items())
    ]
    return Corpus(articles=articles, source_path="synthetic")
