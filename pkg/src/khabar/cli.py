"""Command-line entry point covering the full workflow.

Subcommands: ingest, normalize, tokenize, index, recommend, evaluate,
serve, session. Data goes to stdout (byte-stable for fixed inputs, with a
--format json switch); diagnostics go to stderr. Exit codes: 0 success,
1 usage error, 2 data error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import embed as embed_mod
from . import metrics as metrics_mod
from . import recommend as recommend_mod
from . import service as service_mod
from . import textnorm
from . import tfidf as tfidf_mod
from . import tokenize as tokenize_mod

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3

_DATA_ERRORS = (
    corpus_mod.CorpusFormatError,
    corpus_mod.UnknownArticleError,
    embed_mod.EmbeddingFormatError,
    service_mod.SessionStoreError,
    textnorm.UnknownStepError,
    tfidf_mod.EmptyCorpusError,
    recommend_mod.EmptySessionError,
    FileNotFoundError,
    json.JSONDecodeError,
    ValueError,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


def _read_text(input_path: str | None) -> str:
    if input_path:
        return Path(input_path).read_text(encoding="utf-8")
    return sys.stdin.read()


def _stopwords(path: str | None) -> frozenset[str]:
    if path:
        return tokenize_mod.load_stopwords(path)
    return tokenize_mod.default_stopwords()


def _normalizer(config_path: str | None) -> textnorm.NormalizerConfig:
    if config_path:
        return textnorm.NormalizerConfig.from_file(config_path)
    return textnorm.NormalizerConfig()


def _prepare_docs(corpus, stopwords, normalizer):
    docs = {}
    for article in corpus:
        clean = textnorm.normalize_pipeline(article.body, normalizer)
        docs[article.id] = tokenize_mod.remove_stopwords(
            tokenize_mod.tokenize(clean, article.id), stopwords
        ).tokens
    return docs


def cmd_ingest(args) -> int:
    loaded = corpus_mod.load_corpus(args.corpus, delimiter=args.delimiter)
    counts = corpus_mod.category_counts(loaded)
    if loaded.dropped_rows:
        print(f"dropped {loaded.dropped_rows} incomplete row(s)", file=sys.stderr)
    if args.format == "json":
        payload = {
            "articles": len(loaded),
            "dropped_rows": loaded.dropped_rows,
            "categories": {cat.value: n for cat, n in counts.items()},
        }
        print(json.dumps(payload, ensure_ascii=False))
    else:
        width = max(len(cat.value) for cat in counts)
        print(f"{'Category':<{width}}  Articles")
        for cat in corpus_mod.Category:
            print(f"{cat.value:<{width}}  {counts[cat]}")
        print(f"{'Total':<{width}}  {len(loaded)}")
    return EXIT_OK


def cmd_normalize(args) -> int:
    text = _read_text(args.input)
    result = textnorm.normalize_pipeline(text, _normalizer(args.config))
    if result:
        sys.stdout.write(result + "\n")
    return EXIT_OK


def cmd_tokenize(args) -> int:
    text = _read_text(args.input)
    clean = textnorm.normalize_pipeline(text, _normalizer(args.config))
    tokens = tokenize_mod.tokenize(clean)
    stopwords = _stopwords(args.stopwords)
    filtered = tokenize_mod.remove_stopwords(tokens, stopwords)
    if args.format == "json":
        payload = {
            "tokens": tokens.tokens,
            "filtered_tokens": filtered.tokens,
            "token_count": len(tokens),
            "filtered_count": len(filtered),
        }
        print(json.dumps(payload, ensure_ascii=False))
    else:
        for token in filtered:
            print(token)
        print(f"tokens: {len(tokens)}", file=sys.stderr)
        print(f"tokens after stopword removal: {len(filtered)}", file=sys.stderr)
    return EXIT_OK


def cmd_index(args) -> int:
    loaded = corpus_mod.load_corpus(args.corpus, delimiter=args.delimiter)
    docs = _prepare_docs(loaded, _stopwords(args.stopwords), _normalizer(args.config))
    index = tfidf_mod.build_index(docs, tf_scheme=args.tf_scheme)
    tfidf_mod.save_index(index, args.output)
    summary = {"documents": index.doc_count, "terms": len(index.vocabulary)}
    if args.format == "json":
        print(json.dumps(summary))
    else:
        print(f"indexed {summary['documents']} documents, {summary['terms']} terms")
    return EXIT_OK


def _load_session(store: service_mod.SessionStore, session_id: str) -> recommend_mod.Session:
    session = store.get(session_id)
    if session is None:
        session = recommend_mod.Session(session_id=session_id)
        store.persist(session)
    return session


def _recommend_artifact(args, loaded, stopwords, normalizer):
    if args.backend == "embedding":
        if not args.embeddings:
            raise recommend_mod.BackendNotReadyError(
                "embedding backend requires --embeddings FILE"
            )
        return embed_mod.load_embeddings(args.embeddings)
    if getattr(args, "index", None):
        return tfidf_mod.load_index(args.index)
    return tfidf_mod.build_index(_prepare_docs(loaded, stopwords, normalizer))


def _print_recommendations(results, loaded, fmt: str) -> None:
    if fmt == "json":
        payload = [
            {
                "article_id": r.article_id,
                "score": r.score,
                "backend": r.backend,
                "against_read_id": r.against_read_id,
                "headline": corpus_mod.get_article(loaded, r.article_id).headline,
            }
            for r in results
        ]
        print(json.dumps(payload, ensure_ascii=False))
        return
    if not results:
        print("no recommendations above threshold")
        return
    for r in results:
        headline = corpus_mod.get_article(loaded, r.article_id).headline
        print(f"{r.article_id}\t{r.score:.6f}\t{headline}")


def cmd_recommend(args) -> int:
    loaded = corpus_mod.load_corpus(args.corpus, delimiter=args.delimiter)
    stopwords = _stopwords(args.stopwords)
    normalizer = _normalizer(args.config)
    store = service_mod.SessionStore(args.session_file)
    session = _load_session(store, args.session_id)
    if args.read is not None:
        recommend_mod.mark_read(session, args.read, loaded)
        store.persist(session)
    config = recommend_mod.RecommenderConfig(
        threshold=args.threshold,
        top_k=args.k,
        backend=args.backend,
        aggregation=args.aggregation,
    )
    artifact = _recommend_artifact(args, loaded, stopwords, normalizer)
    results = recommend_mod.recommend(session, config, artifact, loaded)
    _print_recommendations(results, loaded, args.format)
    return EXIT_OK


def _ids_from_file(path: str) -> list[int]:
    ids = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            ids.append(int(line))
    return ids


def cmd_evaluate(args) -> int:
    by_counts = all(v is not None for v in (args.tp, args.fp, args.fn, args.tn))
    by_files = args.predicted_file is not None and args.relevant_file is not None
    if by_counts == by_files:
        raise _UsageError("give either --tp/--fp/--fn/--tn or --predicted-file/--relevant-file")
    if by_counts:
        cm = metrics_mod.ConfusionMatrix(tp=args.tp, fp=args.fp, fn=args.fn, tn=args.tn)
    else:
        predicted = _ids_from_file(args.predicted_file)
        relevant = _ids_from_file(args.relevant_file)
        if args.universe_file:
            universe = _ids_from_file(args.universe_file)
        else:
            universe = sorted(set(predicted) | set(relevant))
        cm = metrics_mod.confusion_from_labels(predicted, relevant, universe)
    report = metrics_mod.compute_metrics(cm)
    if args.format == "json":
        payload = {
            "confusion": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn},
            "measures": report.to_dict(),
        }
        print(json.dumps(payload))
    else:
        print(report.as_table())
    return EXIT_OK


def _service_config(args) -> service_mod.ServiceConfig:
    embedding = None
    if args.embeddings:
        embedding = embed_mod.EmbeddingProviderConfig(mode="file", path=args.embeddings)
    elif args.embedding_endpoint:
        embedding = embed_mod.EmbeddingProviderConfig(
            mode="remote", endpoint=args.embedding_endpoint
        )
    return service_mod.ServiceConfig(
        corpus_path=args.corpus,
        session_store_path=args.session_store,
        stopword_path=args.stopwords,
        delimiter=args.delimiter,
        embedding=embedding,
        recommender=recommend_mod.RecommenderConfig(
            threshold=args.threshold, top_k=args.k, backend=args.backend
        ),
        host=args.host,
        port=args.port,
    )


def cmd_serve(args) -> int:
    service_mod.run(_service_config(args))
    return EXIT_OK


def cmd_session(args) -> int:
    loaded = corpus_mod.load_corpus(args.corpus, delimiter=args.delimiter)
    stopwords = _stopwords(args.stopwords)
    normalizer = _normalizer(args.config)
    index = tfidf_mod.build_index(_prepare_docs(loaded, stopwords, normalizer))
    store = service_mod.SessionStore(args.session_file)
    session = _load_session(store, args.session_id)
    config = recommend_mod.RecommenderConfig(threshold=args.threshold, top_k=args.k)
    print("commands: list | read <id> | recommend | quit", file=sys.stderr)
    for line in sys.stdin:
        parts = line.split()
        if not parts:
            continue
        command = parts[0]
        if command == "quit":
            break
        if command == "list":
            for article in loaded:
                print(f"{article.id}\t{article.category.value}\t{article.headline}")
        elif command == "read" and len(parts) == 2 and parts[1].isdigit():
            recommend_mod.mark_read(session, int(parts[1]), loaded)
            store.persist(session)
            print(f"read: {session.read_ids}", file=sys.stderr)
        elif command == "recommend":
            results = recommend_mod.recommend(session, config, index, loaded)
            _print_recommendations(results, loaded, "text")
        else:
            print(f"unknown command: {line.strip()}", file=sys.stderr)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, *, corpus: bool = False) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text")
    if corpus:
        parser.add_argument("--corpus", required=True, help="path to the dataset file")
        parser.add_argument("--delimiter", default=",")
        parser.add_argument("--stopwords", help="stopword file (default: bundled list)")
        parser.add_argument("--config", help="normalizer config JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="khabar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate the dataset and print category counts")
    _add_common(p, corpus=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("normalize", help="run the cleaning pipeline on stdin or a file")
    p.add_argument("--input", help="input file (default: stdin)")
    p.add_argument("--config", help="normalizer config JSON file")
    p.set_defaults(func=cmd_normalize, format="text")

    p = sub.add_parser("tokenize", help="tokenize text and report stopword-filtered counts")
    p.add_argument("--input", help="input file (default: stdin)")
    p.add_argument("--config", help="normalizer config JSON file")
    p.add_argument("--stopwords", help="stopword file (default: bundled list)")
    _add_common(p)
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("index", help="build and persist the TF-IDF index")
    _add_common(p, corpus=True)
    p.add_argument("--output", required=True, help="where to write the index")
    p.add_argument("--tf-scheme", choices=tfidf_mod.TF_SCHEMES, default="raw")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("recommend", help="print recommendations for a reading session")
    _add_common(p, corpus=True)
    p.add_argument("--session-file", required=True, help="session store file (JSONL)")
    p.add_argument("--session-id", default="s1")
    p.add_argument("--read", type=int, help="mark this article id read first")
    p.add_argument("--index", help="load a persisted index instead of rebuilding")
    p.add_argument("--backend", choices=recommend_mod.BACKENDS, default="tfidf")
    p.add_argument("--embeddings", help="embedding vector file (embedding backend)")
    p.add_argument("--threshold", type=float, default=0.60)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--aggregation", choices=recommend_mod.AGGREGATIONS, default="per_last_read")
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("evaluate", help="print the ten-measure evaluation table")
    _add_common(p)
    p.add_argument("--tp", type=int)
    p.add_argument("--fp", type=int)
    p.add_argument("--fn", type=int)
    p.add_argument("--tn", type=int)
    p.add_argument("--predicted-file", help="file of predicted article ids, one per line")
    p.add_argument("--relevant-file", help="file of relevant article ids, one per line")
    p.add_argument("--universe-file", help="file of all candidate ids (default: union)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("serve", help="start the HTTP service")
    _add_common(p, corpus=True)
    p.add_argument("--session-store", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--backend", choices=recommend_mod.BACKENDS, default="tfidf")
    p.add_argument("--embeddings", help="embedding vector file")
    p.add_argument("--embedding-endpoint", help="remote embedding service URL")
    p.add_argument("--threshold", type=float, default=0.60)
    p.add_argument("--k", type=int, default=10)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("session", help="interactive list/read/recommend loop")
    _add_common(p, corpus=True)
    p.add_argument("--session-file", required=True)
    p.add_argument("--session-id", default="s1")
    p.add_argument("--threshold", type=float, default=0.60)
    p.add_argument("--k", type=int, default=10)
    p.set_defaults(func=cmd_session)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (recommend_mod.BackendNotReadyError, embed_mod.EmbeddingServiceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
