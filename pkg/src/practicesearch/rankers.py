"""Ranking models over preprocessed documents.

Three interchangeable rankers share one estimator surface: fit(bags) builds
an immutable index, score_all(query_bag) scores every document. BM25 is the
default search model; VSM (tf-idf cosine) and LDA (topic-distribution
cosine) are comparators for the evaluation harness.

SearchEngine ties a catalog, a preprocessing config, and a fitted ranker
together and adds ranked top-k search plus versioned JSON serialization.
"""

from __future__ import annotations

import json
import math
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .catalog import Catalog, Practice, Source, parse_stage
from .textprep import PipelineConfig, default_config, preprocess_document, preprocess_query

INDEX_FORMAT = "practicesearch-index"
INDEX_VERSION = 1

MODELS = ("bm25", "vsm", "lda")


@dataclass
class Vocabulary:
    """Corpus vocabulary: term ids (sorted order), document frequencies, corpus size."""

    term_ids: dict[str, int]
    df: dict[str, int]
    n_docs: int

    def __contains__(self, term: str) -> bool:
        return term in self.term_ids

    def __len__(self) -> int:
        return len(self.term_ids)


def build_vocabulary(bags: list[Mapping[str, int]]) -> Vocabulary:
    """Union of all bag terms with document frequencies. N = len(bags)."""
    df: dict[str, int] = {}
    for bag in bags:
        for term in bag:
            df[term] = df.get(term, 0) + 1
    term_ids = {t: i for i, t in enumerate(sorted(df))}
    return Vocabulary(term_ids=term_ids, df=df, n_docs=len(bags))


def idf(term: str, vocabulary: Vocabulary) -> float:
    """Non-negative Okapi idf; unseen terms evaluate at n = 0."""
    n = vocabulary.df.get(term, 0)
    return math.log((vocabulary.n_docs - n + 0.5) / (n + 0.5) + 1.0)


def _check_bags(X) -> list[Mapping[str, int]]:
    """Validate a corpus of bags: mappings term -> positive count."""
    if isinstance(X, (str, bytes)) or isinstance(X, Mapping):
        raise TypeError("expected a sequence of bag-of-words mappings")
    bags = list(X)
    for i, bag in enumerate(bags):
        if not isinstance(bag, Mapping):
            raise TypeError(f"document {i} is not a mapping")
        for term, count in bag.items():
            if not isinstance(term, str):
                raise TypeError(f"document {i} has a non-string term")
            if not isinstance(count, int) or count < 1:
                raise ValueError(f"document {i} term {term!r} has count {count!r}")
    return bags


@dataclass(frozen=True)
class RankedResult:
    practice_id: str
    score: float
    rank: int


class Bm25Ranker(BaseEstimator):
    """Okapi BM25.

    sim(d, q) sums, over the distinct query terms, idf(t) scaled by a
    saturated term frequency with document-length normalization. Repeated
    query terms do not weigh more: the sum runs over distinct terms.
    """

    def __init__(self, k1: float = 1.2, b: float = 0.75):
        self.k1 = k1
        self.b = b

    def fit(self, X, y=None):
        if self.k1 < 0:
            raise ValueError("k1 must be non-negative")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError("b must be in [0, 1]")
        bags = _check_bags(X)
        self.vocabulary_ = build_vocabulary(bags)
        self.doc_lengths_ = np.array([float(sum(b.values())) for b in bags])
        self.avgdl_ = float(self.doc_lengths_.mean()) if bags else 0.0
        self.n_docs_ = len(bags)
        # term -> (doc index array, frequency array)
        postings: dict[str, tuple[list[int], list[float]]] = {}
        for i, bag in enumerate(bags):
            for term, count in bag.items():
                postings.setdefault(term, ([], []))
                postings[term][0].append(i)
                postings[term][1].append(float(count))
        self.postings_ = {
            t: (np.array(docs, dtype=np.intp), np.array(freqs))
            for t, (docs, freqs) in postings.items()
        }
        return self

    def score(self, query: Mapping[str, int], doc_index: int) -> float:
        """BM25 score of one document. Terms the document lacks contribute 0."""
        check_is_fitted(self, "postings_")
        if not 0 <= doc_index < self.n_docs_:
            raise IndexError(f"doc_index {doc_index} out of range")
        k1, b = self.k1, self.b
        dl = float(self.doc_lengths_[doc_index])
        s = 0.0
        for term in sorted(query):
            entry = self.postings_.get(term)
            if entry is None:
                continue
            docs, freqs = entry
            pos = np.searchsorted(docs, doc_index)
            if pos == len(docs) or docs[pos] != doc_index:
                continue
            f = float(freqs[pos])
            w = idf(term, self.vocabulary_)
            num = f * (k1 + 1.0)
            den = f + k1 * (1.0 - b + b * dl / self.avgdl_)
            s += w * num / den
        return s

    def score_all(self, query: Mapping[str, int]) -> np.ndarray:
        """Scores for every document. Sums terms in sorted order so results
        are reproducible bit-for-bit across runs and implementations."""
        check_is_fitted(self, "postings_")
        k1, b = self.k1, self.b
        scores = np.zeros(self.n_docs_)
        for term in sorted(query):
            entry = self.postings_.get(term)
            if entry is None:
                continue
            docs, freqs = entry
            w = idf(term, self.vocabulary_)
            dl = self.doc_lengths_[docs]
            num = freqs * (k1 + 1.0)
            den = freqs + k1 * (1.0 - b + b * dl / self.avgdl_)
            scores[docs] += w * num / den
        return scores


class VsmRanker(BaseEstimator):
    """Vector space model: w = ln(1+tf) * ln(N/df), cosine similarity."""

    def fit(self, X, y=None):
        bags = _check_bags(X)
        self.vocabulary_ = build_vocabulary(bags)
        self.n_docs_ = len(bags)
        n = float(self.n_docs_)
        self.doc_weights_: list[dict[str, float]] = []
        norms = []
        # term -> list of (doc index, weight)
        postings: dict[str, list[tuple[int, float]]] = {}
        for i, bag in enumerate(bags):
            weights = {}
            for term, tf in bag.items():
                w = math.log(1.0 + tf) * math.log(n / self.vocabulary_.df[term])
                weights[term] = w
                postings.setdefault(term, []).append((i, w))
            self.doc_weights_.append(weights)
            norms.append(math.sqrt(sum(w * w for w in weights.values())))
        self.doc_norms_ = np.array(norms) if norms else np.zeros(0)
        self.postings_ = postings
        return self

    def _query_weights(self, query: Mapping[str, int]) -> dict[str, float]:
        n = float(self.n_docs_)
        weights = {}
        for term, tf in query.items():
            df = self.vocabulary_.df.get(term, 0)
            if df == 0:
                continue
            weights[term] = math.log(1.0 + tf) * math.log(n / df)
        return weights

    def score(self, query: Mapping[str, int], doc_index: int) -> float:
        check_is_fitted(self, "postings_")
        if not 0 <= doc_index < self.n_docs_:
            raise IndexError(f"doc_index {doc_index} out of range")
        q = self._query_weights(query)
        qnorm = math.sqrt(sum(w * w for w in q.values()))
        dnorm = float(self.doc_norms_[doc_index])
        if qnorm == 0.0 or dnorm == 0.0:
            return 0.0
        doc = self.doc_weights_[doc_index]
        dot = sum(w * doc[t] for t, w in q.items() if t in doc)
        return dot / (qnorm * dnorm)

    def score_all(self, query: Mapping[str, int]) -> np.ndarray:
        check_is_fitted(self, "postings_")
        scores = np.zeros(self.n_docs_)
        q = self._query_weights(query)
        qnorm = math.sqrt(sum(w * w for w in q.values()))
        if qnorm == 0.0:
            return scores
        for term, wq in q.items():
            for doc_index, wd in self.postings_.get(term, ()):
                scores[doc_index] += wq * wd
        nonzero = self.doc_norms_ > 0
        scores[nonzero] /= qnorm * self.doc_norms_[nonzero]
        scores[~nonzero] = 0.0
        return scores


class LdaRanker(BaseEstimator):
    """LDA topic model trained by collapsed Gibbs sampling.

    Queries are folded into the trained topics and scored by cosine
    similarity between topic distributions. Deterministic for a fixed seed.
    """

    FOLD_IN_PASSES = 50

    def __init__(
        self,
        n_topics: int = 20,
        alpha: Optional[float] = None,
        beta: float = 0.01,
        iterations: int = 1000,
        seed: int = 13,
    ):
        self.n_topics = n_topics
        self.alpha = alpha
        self.beta = beta
        self.iterations = iterations
        self.seed = seed

    def fit(self, X, y=None):
        if self.n_topics < 2:
            raise ValueError("n_topics must be at least 2")
        bags = _check_bags(X)
        if not any(bag for bag in bags):
            raise ValueError("LDA needs at least one non-empty document")
        self.vocabulary_ = build_vocabulary(bags)
        self.n_docs_ = len(bags)
        self.alpha_ = self.alpha if self.alpha is not None else 50.0 / self.n_topics
        docs = [self._token_ids(bag) for bag in bags]
        rng = np.random.Generator(np.random.PCG64(self.seed))
        self.theta_, self.phi_ = _train_gibbs(
            docs, len(self.vocabulary_), self.n_topics,
            self.alpha_, self.beta, self.iterations, rng,
        )
        self.doc_norms_ = np.linalg.norm(self.theta_, axis=1)
        return self

    def _token_ids(self, bag: Mapping[str, int]) -> list[int]:
        # Sorted term order keeps token streams, and so sampling, reproducible.
        ids = []
        for term in sorted(bag):
            if term in self.vocabulary_.term_ids:
                ids.extend([self.vocabulary_.term_ids[term]] * bag[term])
        return ids

    def infer(self, query: Mapping[str, int]) -> np.ndarray:
        """Topic distribution for a query, folded in against the trained phi."""
        check_is_fitted(self, "theta_")
        tokens = self._token_ids(query)
        t = self.n_topics
        if not tokens:
            return np.full(t, 1.0 / t)
        rng = np.random.Generator(np.random.PCG64(self.seed))
        n_k = np.zeros(t)
        z = rng.integers(0, t, size=len(tokens))
        for k in z:
            n_k[k] += 1
        for _ in range(self.FOLD_IN_PASSES):
            u = rng.random(len(tokens))
            for j, token in enumerate(tokens):
                k = z[j]
                n_k[k] -= 1
                p = (n_k + self.alpha_) * self.phi_[:, token]
                cp = np.cumsum(p)
                k = int(np.searchsorted(cp, u[j] * cp[-1], side="right"))
                if k >= t:
                    k = t - 1
                z[j] = k
                n_k[k] += 1
        theta = n_k + self.alpha_
        return theta / theta.sum()

    def score_all(self, query: Mapping[str, int]) -> np.ndarray:
        check_is_fitted(self, "theta_")
        tokens = self._token_ids(query)
        if not tokens:
            # No trained term appears in the query: no topical signal.
            return np.zeros(self.n_docs_)
        theta_q = self.infer(query)
        qnorm = float(np.linalg.norm(theta_q))
        return self.theta_ @ theta_q / (self.doc_norms_ * qnorm)

    def score(self, query: Mapping[str, int], doc_index: int) -> float:
        return float(self.score_all(query)[doc_index])


def _train_gibbs(docs, n_terms, n_topics, alpha, beta, iterations, rng):
    """Collapsed Gibbs sampler. Returns (theta, phi), rows normalized."""
    n_mk = np.zeros((len(docs), n_topics))
    n_kt = np.zeros((n_topics, n_terms))
    n_k = np.zeros(n_topics)
    total = sum(len(d) for d in docs)
    z = []
    init = rng.integers(0, n_topics, size=total)
    pos = 0
    for m, doc in enumerate(docs):
        zm = init[pos:pos + len(doc)].copy()
        pos += len(doc)
        z.append(zm)
        for j, t in enumerate(doc):
            k = zm[j]
            n_mk[m, k] += 1
            n_kt[k, t] += 1
            n_k[k] += 1
    vbeta = n_terms * beta
    for _ in range(iterations):
        u = rng.random(total)
        pos = 0
        for m, doc in enumerate(docs):
            zm = z[m]
            row = n_mk[m]
            for j, t in enumerate(doc):
                k = zm[j]
                row[k] -= 1
                n_kt[k, t] -= 1
                n_k[k] -= 1
                p = (row + alpha) * (n_kt[:, t] + beta) / (n_k + vbeta)
                cp = np.cumsum(p)
                k = int(np.searchsorted(cp, u[pos] * cp[-1], side="right"))
                if k >= n_topics:
                    k = n_topics - 1
                zm[j] = k
                row[k] += 1
                n_kt[k, t] += 1
                n_k[k] += 1
                pos += 1
    theta = n_mk + alpha
    theta /= theta.sum(axis=1, keepdims=True)
    phi = n_kt + beta
    phi /= phi.sum(axis=1, keepdims=True)
    return theta, phi


def _make_ranker(model: str, params: dict) -> BaseEstimator:
    if model == "bm25":
        return Bm25Ranker(**params)
    if model == "vsm":
        return VsmRanker(**params)
    if model == "lda":
        return LdaRanker(**params)
    raise ValueError(f"unknown model {model!r}")


class SearchEngine:
    """A catalog searchable through one fitted ranking model."""

    def __init__(
        self,
        catalog: Catalog,
        ranker: BaseEstimator,
        model: str,
        config: PipelineConfig,
        bags: list[Mapping[str, int]],
    ):
        self.catalog = catalog
        self.ranker = ranker
        self.model = model
        self.config = config
        self.bags = bags

    @staticmethod
    def document_text(practice: Practice) -> str:
        """The indexed text of a practice: title plus description."""
        return f"{practice.title} {practice.description}".strip()

    @classmethod
    def build(
        cls,
        catalog: Catalog,
        model: str = "bm25",
        config: Optional[PipelineConfig] = None,
        **params,
    ) -> "SearchEngine":
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}")
        cfg = config if config is not None else default_config()
        bags = [preprocess_document(cls.document_text(p), cfg) for p in catalog]
        ranker = _make_ranker(model, params).fit(bags)
        return cls(catalog, ranker, model, cfg, bags)

    def search(self, query_text: str, k: int = 10) -> list[RankedResult]:
        """Top-k practices by score, descending; ties broken by ascending id.

        Documents scoring <= 0 are dropped, so the list may be shorter than
        k. A query that preprocesses to nothing returns no results.
        """
        if k < 1:
            raise ValueError("k must be at least 1")
        bag = preprocess_query(query_text, self.config)
        if not bag:
            return []
        scores = self.ranker.score_all(bag)
        practices = self.catalog.practices
        order = sorted(
            (i for i in range(len(practices)) if scores[i] > 0.0),
            key=lambda i: (-scores[i], practices[i].id),
        )
        return [
            RankedResult(practice_id=practices[i].id, score=float(scores[i]), rank=r)
            for r, i in enumerate(order[:k], start=1)
        ]

    def save(self, path: Union[str, Path]) -> None:
        """Serialize to a versioned JSON file. Round-trips losslessly."""
        payload = {
            "format": INDEX_FORMAT,
            "version": INDEX_VERSION,
            "model": self.model,
            "params": self.ranker.get_params(),
            "expand_synonyms_on_query": self.config.expand_synonyms_on_query,
            "practices": [p.to_dict() for p in self.catalog],
            "bags": [dict(bag) for bag in self.bags],
        }
        if self.model == "lda":
            payload["lda_state"] = {
                "alpha": self.ranker.alpha_,
                "theta": self.ranker.theta_.tolist(),
                "phi": self.ranker.phi_.tolist(),
            }
        Path(path).write_text(json.dumps(payload), encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path], config: Optional[PipelineConfig] = None) -> "SearchEngine":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        if raw.get("format") != INDEX_FORMAT:
            raise ValueError(f"not a {INDEX_FORMAT} file: {path}")
        if raw.get("version") != INDEX_VERSION:
            raise ValueError(f"unsupported index version {raw.get('version')!r}")
        base = config if config is not None else default_config()
        cfg = PipelineConfig(
            stopwords=base.stopwords,
            synonyms=base.synonyms,
            expand_synonyms_on_query=raw["expand_synonyms_on_query"],
        )
        practices = [
            Practice(
                id=d["id"],
                title=d["title"],
                description=d.get("description", ""),
                stage=parse_stage(d["stage"]),
                task=d["task"],
                source=Source(origin=d["source"]["origin"], url=d["source"].get("url")),
            )
            for d in raw["practices"]
        ]
        catalog = Catalog(practices)
        bags = [dict(b) for b in raw["bags"]]
        model = raw["model"]
        ranker = _make_ranker(model, raw["params"])
        if model == "lda":
            state = raw["lda_state"]
            ranker.vocabulary_ = build_vocabulary(bags)
            ranker.n_docs_ = len(bags)
            ranker.alpha_ = state["alpha"]
            ranker.theta_ = np.array(state["theta"])
            ranker.phi_ = np.array(state["phi"])
            ranker.doc_norms_ = np.linalg.norm(ranker.theta_, axis=1)
        else:
            ranker.fit(bags)
        return cls(catalog, ranker, model, cfg, bags)
