"""Command-line entry point: ingest, index, search, evaluate, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import CatalogError, Stage, default_corpus_path, load_catalog
from .config import load_service_config
from .evaluation import compare_models, export_report, load_ground_truth
from .glm import (
    GenerationEndpointConfig,
    GenerationError,
    build_prompt,
    generate,
    homogenize_glm,
    homogenize_ir,
    parse_practices,
)
from .rankers import MODELS, SearchEngine


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="practicesearch",
        description="Search and browse a catalog of ML engineering best practices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="validate a practices file and report counts")
    p_ingest.add_argument("--corpus", required=True, help="practices JSON-lines file")
    p_ingest.set_defaults(func=cmd_ingest)

    p_index = sub.add_parser("index", help="build and serialize a search index")
    p_index.add_argument("--corpus", required=True)
    p_index.add_argument("--model", choices=MODELS, default="bm25")
    p_index.add_argument("--out", required=True, help="output index file")
    p_index.add_argument("--k1", type=float, default=None, help="BM25 k1")
    p_index.add_argument("--b", type=float, default=None, help="BM25 b")
    p_index.add_argument("--topics", type=int, default=None, help="LDA topic count")
    p_index.add_argument("--iterations", type=int, default=None, help="LDA Gibbs iterations")
    p_index.add_argument("--seed", type=int, default=None, help="LDA sampler seed")
    p_index.set_defaults(func=cmd_index)

    p_search = sub.add_parser("search", help="query the catalog")
    p_search.add_argument("--q", required=True, help="query text")
    p_search.add_argument("--engine", choices=("ir", "glm"), default="ir")
    p_search.add_argument("--k", type=int, default=10)
    p_search.add_argument("--json", action="store_true", help="emit the JSON response")
    source = p_search.add_mutually_exclusive_group()
    source.add_argument("--corpus", help="practices file (default: bundled seed corpus)")
    source.add_argument("--index", help="serialized index file")
    p_search.add_argument("--config", help="service config file (glm endpoint settings)")
    p_search.set_defaults(func=cmd_search)

    p_eval = sub.add_parser("evaluate", help="compare models against a ground truth")
    p_eval.add_argument("--corpus", required=True)
    p_eval.add_argument("--truth", required=True, help="ground-truth JSON-lines file")
    p_eval.add_argument("--models", default="bm25,vsm,lda", help="comma-separated model list")
    p_eval.add_argument("--out", default="report.csv")
    p_eval.add_argument("--seed", type=int, default=13, help="LDA sampler seed")
    p_eval.set_defaults(func=cmd_eval)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--config", help="service config file")
    p_serve.add_argument("--port", type=int, default=None, help="override the configured port")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def cmd_ingest(args) -> int:
    catalog = load_catalog(args.corpus)
    print(f"{len(catalog)} practices")
    width = max(len(s.value) for s in Stage)
    for stage in Stage:
        print(f"{stage.value:<{width}}  {len(catalog.by_stage[stage])}")
    return 0


def cmd_index(args) -> int:
    if args.model != "bm25" and (args.k1 is not None or args.b is not None):
        raise ValueError("--k1/--b apply only to the bm25 model")
    if args.model != "lda" and any(
        v is not None for v in (args.topics, args.iterations, args.seed)
    ):
        raise ValueError("--topics/--iterations/--seed apply only to the lda model")
    params = {}
    if args.k1 is not None:
        params["k1"] = args.k1
    if args.b is not None:
        params["b"] = args.b
    if args.topics is not None:
        params["n_topics"] = args.topics
    if args.iterations is not None:
        params["iterations"] = args.iterations
    if args.seed is not None:
        params["seed"] = args.seed
    catalog = load_catalog(args.corpus)
    engine = SearchEngine.build(catalog, model=args.model, **params)
    engine.save(args.out)
    print(f"indexed {len(catalog)} practices with {args.model} into {args.out}")
    return 0


def cmd_search(args) -> int:
    if args.engine == "ir":
        if args.index:
            engine = SearchEngine.load(args.index)
        else:
            corpus = args.corpus if args.corpus else default_corpus_path()
            engine = SearchEngine.build(load_catalog(corpus))
        ranked = engine.search(args.q, k=args.k)
        response = homogenize_ir(args.q, ranked, engine.catalog)
    else:
        cfg = load_service_config(args.config)
        gen_cfg = GenerationEndpointConfig(
            url=cfg.glm_url, timeout_s=cfg.glm_timeout_s, retries=cfg.glm_retries
        )
        completion = generate(build_prompt(args.q), gen_cfg)
        response = homogenize_glm(args.q, parse_practices(completion)[: args.k])
    if args.json:
        print(json.dumps(response.to_dict()))
        return 0
    if not response.results:
        print("no practices found")
        return 0
    for i, result in enumerate(response.results, start=1):
        extras = []
        if result.score is not None:
            extras.append(f"score {result.score:.4f}")
        if result.task is not None:
            extras.append(f"task {result.task}")
        suffix = f"  [{', '.join(extras)}]" if extras else ""
        print(f"{i}. {result.title}{suffix}")
        if result.description:
            print(f"   {result.description}")
    return 0


def cmd_eval(args) -> int:
    catalog = load_catalog(args.corpus)
    truth = load_ground_truth(args.truth)
    models = [m.strip() for m in args.models.split(",") if m.strip()]
    report = compare_models(catalog, truth, models, seed=args.seed)
    Path(args.out).write_bytes(export_report(report))
    print(f"wrote {args.out} ({len(models)} models, {report.n_queries} queries)")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    cfg = load_service_config(args.config)
    if args.port is not None:
        cfg.port = args.port
    app = create_app(cfg)
    uvicorn.run(app, host=cfg.host, port=cfg.port)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CatalogError, GenerationError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
