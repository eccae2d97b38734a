"""Searchable catalog of ML engineering best practices.

Retrieval over a curated practice catalog (BM25 by default, VSM and LDA as
comparators), a generative-LM bridge behind the same response shape, an
evaluation harness, and a JSON HTTP service with feedback capture.
"""

from .catalog import (
    Catalog,
    CatalogError,
    Practice,
    Source,
    Stage,
    default_corpus_path,
    filter_practices,
    group_by_stage,
    load_catalog,
    parse_stage,
)
from .evaluation import (
    EvalReport,
    GroundTruthEntry,
    ModelEval,
    compare_models,
    evaluate_model,
    export_report,
    load_ground_truth,
    precision_at_k,
    recall_at_k,
    synthetic_benchmark,
)
from .glm import (
    GeneratedPractice,
    GenerationConnectionError,
    GenerationEndpointConfig,
    GenerationError,
    GenerationProtocolError,
    GenerationTimeout,
    SearchResponse,
    SearchResult,
    build_prompt,
    generate,
    homogenize_glm,
    homogenize_ir,
    parse_practices,
)
from .porter import stem
from .stub import StubGenerationServer, load_fixtures
from .rankers import (
    Bm25Ranker,
    LdaRanker,
    RankedResult,
    SearchEngine,
    Vocabulary,
    VsmRanker,
    build_vocabulary,
    idf,
)
from .textprep import (
    BagOfWords,
    PipelineConfig,
    TextPreprocessor,
    default_config,
    expand_synonyms,
    load_stopwords,
    load_synonyms,
    normalize,
    preprocess_document,
    preprocess_query,
    remove_stopwords,
    stem_token,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "BagOfWords",
    "Bm25Ranker",
    "Catalog",
    "CatalogError",
    "EvalReport",
    "GeneratedPractice",
    "GenerationConnectionError",
    "GenerationEndpointConfig",
    "GenerationError",
    "GenerationProtocolError",
    "GenerationTimeout",
    "GroundTruthEntry",
    "LdaRanker",
    "ModelEval",
    "PipelineConfig",
    "Practice",
    "RankedResult",
    "SearchEngine",
    "SearchResponse",
    "SearchResult",
    "Source",
    "Stage",
    "StubGenerationServer",
    "TextPreprocessor",
    "Vocabulary",
    "VsmRanker",
    "build_prompt",
    "build_vocabulary",
    "compare_models",
    "default_config",
    "default_corpus_path",
    "evaluate_model",
    "expand_synonyms",
    "export_report",
    "filter_practices",
    "generate",
    "group_by_stage",
    "homogenize_glm",
    "homogenize_ir",
    "idf",
    "load_catalog",
    "load_fixtures",
    "load_ground_truth",
    "load_stopwords",
    "load_synonyms",
    "normalize",
    "parse_practices",
    "parse_stage",
    "precision_at_k",
    "preprocess_document",
    "preprocess_query",
    "recall_at_k",
    "remove_stopwords",
    "stem",
    "stem_token",
    "synthetic_benchmark",
    "tokenize",
]
