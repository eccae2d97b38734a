"""Retrieval evaluation: Precision@k and Recall@k over a ground-truth query
set, model comparison, CSV export, and a synthetic benchmark generator.

Means are macro-averages: each query contributes equally regardless of how
many relevant practices it has.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from string import ascii_lowercase
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .catalog import Catalog, Practice, Source, Stage
from .rankers import MODELS, SearchEngine
from .textprep import PipelineConfig


@dataclass(frozen=True)
class GroundTruthEntry:
    query: str
    relevant: frozenset[str]


def load_ground_truth(path: Union[str, Path]) -> list[GroundTruthEntry]:
    """Load JSON-lines ground truth: {"query": "...", "relevant": ["p1", ...]}."""
    entries: list[GroundTruthEntry] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise ValueError(f"line {line_no}: malformed JSON: {e.msg}") from None
            query = obj.get("query")
            relevant = obj.get("relevant")
            if not isinstance(query, str) or not query.strip():
                raise ValueError(f"line {line_no}: query must be a non-empty string")
            if not isinstance(relevant, list) or not relevant:
                raise ValueError(f"line {line_no}: relevant must be a non-empty list")
            if query in seen:
                raise ValueError(f"line {line_no}: duplicate query {query!r}")
            seen.add(query)
            entries.append(GroundTruthEntry(query=query, relevant=frozenset(relevant)))
    return entries


def precision_at_k(retrieved: Sequence[str], relevant: Iterable[str], k: int) -> float:
    """Hits in the top k divided by k. Short result lists keep denominator k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return len(set(retrieved[:k]) & set(relevant)) / k


def recall_at_k(retrieved: Sequence[str], relevant: Iterable[str], k: int) -> float:
    """Hits in the top k divided by the number of relevant items."""
    if k < 1:
        raise ValueError("k must be at least 1")
    relevant = set(relevant)
    if not relevant:
        raise ValueError("relevant set must not be empty")
    return len(set(retrieved[:k]) & relevant) / len(relevant)


@dataclass
class ModelEval:
    """Per-model evaluation: index 0 holds the k=1 means."""

    model: str
    mean_precision: list[float]
    mean_recall: list[float]
    per_query_precision: list[list[float]]
    per_query_recall: list[list[float]]


@dataclass
class EvalReport:
    entries: list[ModelEval]
    k_max: int
    n_queries: int


def evaluate_model(
    engine: SearchEngine,
    ground_truth: list[GroundTruthEntry],
    k_max: int = 10,
) -> ModelEval:
    """Mean P@k and R@k for k = 1..k_max, macro-averaged over queries."""
    for entry in ground_truth:
        for pid in sorted(entry.relevant):
            if pid not in engine.catalog.by_id:
                raise ValueError(f"ground-truth id {pid!r} not in catalog")
    per_p: list[list[float]] = []
    per_r: list[list[float]] = []
    for entry in ground_truth:
        retrieved = [r.practice_id for r in engine.search(entry.query, k=k_max)]
        per_p.append([precision_at_k(retrieved, entry.relevant, k) for k in range(1, k_max + 1)])
        per_r.append([recall_at_k(retrieved, entry.relevant, k) for k in range(1, k_max + 1)])
    n = len(ground_truth)
    mean_p = [sum(row[i] for row in per_p) / n for i in range(k_max)]
    mean_r = [sum(row[i] for row in per_r) / n for i in range(k_max)]
    return ModelEval(
        model=engine.model,
        mean_precision=mean_p,
        mean_recall=mean_r,
        per_query_precision=per_p,
        per_query_recall=per_r,
    )


def compare_models(
    catalog: Catalog,
    ground_truth: list[GroundTruthEntry],
    models: Sequence[str],
    config: Optional[PipelineConfig] = None,
    k_max: int = 10,
    seed: int = 13,
) -> EvalReport:
    """Evaluate several models over the same catalog and preprocessing config."""
    if not models:
        raise ValueError("at least one model is required")
    for model in models:
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}")
    entries = []
    for model in models:
        params = {"seed": seed} if model == "lda" else {}
        engine = SearchEngine.build(catalog, model=model, config=config, **params)
        entries.append(evaluate_model(engine, ground_truth, k_max=k_max))
    return EvalReport(entries=entries, k_max=k_max, n_queries=len(ground_truth))


def export_report(report: EvalReport) -> bytes:
    """CSV with header model,k,mean_precision,mean_recall; LF line endings."""
    lines = ["model,k,mean_precision,mean_recall"]
    for entry in report.entries:
        for i in range(report.k_max):
            lines.append(
                f"{entry.model},{i + 1},"
                f"{entry.mean_precision[i]:.6f},{entry.mean_recall[i]:.6f}"
            )
    return ("\n".join(lines) + "\n").encode("utf-8")


# Words used to pad synthetic documents. All survive the preprocessing
# pipeline (none are stopwords).
_FILLER_POOL = (
    "model", "training", "data", "feature", "pipeline", "metric",
    "deployment", "monitoring", "evaluation", "dataset", "label",
    "accuracy", "drift", "test", "inference", "batch", "gradient",
    "network", "cluster", "tuning",
)

# Letters for marker suffixes; final letters that trigger stemmer suffix
# rules (s, e, d, g, y) are excluded so markers pass through unchanged.
_MARKER_LETTERS = "abcfhijklmnopqrtuvwx"


def synthetic_benchmark(
    n_docs: int = 150,
    n_queries: int = 85,
    seed: int = 13,
) -> tuple[Catalog, list[GroundTruthEntry]]:
    """Generate a corpus and query set with planted relevance.

    Each query carries a unique rare marker term; the documents containing
    that marker are exactly its relevant set. Filler words are shared across
    the corpus, so term-matching models must rely on the rare markers.
    """
    if n_docs < n_queries:
        raise ValueError("need at least one document per query")
    all_markers = [f"zz{a}{b}" for a in _MARKER_LETTERS for b in _MARKER_LETTERS]
    if n_queries > len(all_markers):
        raise ValueError("too many queries for the marker alphabet")
    markers = all_markers[:n_queries]
    rng = np.random.Generator(np.random.PCG64(seed))
    stages = list(Stage)
    practices: list[Practice] = []
    relevant: dict[str, list[str]] = {m: [] for m in markers}
    for i in range(n_docs):
        doc_id = f"d{i:03d}"
        words = []
        # The first pass plants each marker once; later docs repeat markers
        # so some queries have more than one relevant document.
        if i < 2 * n_queries:
            marker = markers[i % n_queries]
            words.append(marker)
            relevant[marker].append(doc_id)
        words.extend(rng.choice(_FILLER_POOL, size=8))
        practices.append(
            Practice(
                id=doc_id,
                title=" ".join(words),
                description="",
                stage=stages[i % len(stages)],
                task="synthetic",
                source=Source(origin="other"),
            )
        )
    ground_truth = [
        GroundTruthEntry(
            query=f"{m} {rng.choice(_FILLER_POOL)}",
            relevant=frozenset(relevant[m]),
        )
        for m in markers
    ]
    return Catalog(practices), ground_truth
