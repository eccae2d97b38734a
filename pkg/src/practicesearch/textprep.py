"""Text preprocessing: normalization, stopword removal, synonym expansion,
and stemming, turning raw text into bags of words.

The document pipeline is normalize -> tokenize -> remove_stopwords ->
expand_synonyms -> stem, counted into a bag. Queries run the same pipeline
but skip synonym expansion unless configured otherwise.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

from sklearn.base import BaseEstimator, TransformerMixin

from .porter import stem

# A bag of words is a Counter; .total() is the document length.
BagOfWords = Counter

_DATA_DIR = Path(__file__).parent / "data"

_NON_ASCII = re.compile(r"[^\x00-\x7f]")
# After lowercasing, anything that is not a letter or whitespace is
# punctuation or a digit and becomes a space so hyphenated compounds split.
_PUNCT_OR_DIGIT = re.compile(r"[^a-z\s]")
_SPACE_RUNS = re.compile(r"\s{2,}")
_WHITESPACE = re.compile(r"\s")


def normalize(text: str) -> str:
    """Reduce raw text to lowercase ASCII letters separated by single spaces."""
    text = _NON_ASCII.sub("", text)
    text = text.lower()
    text = _PUNCT_OR_DIGIT.sub(" ", text)
    text = _SPACE_RUNS.sub(" ", text)
    text = _WHITESPACE.sub(" ", text)
    return text.strip()


def tokenize(cleaned: str) -> list[str]:
    """Split normalized text into tokens. No empty tokens are produced."""
    return cleaned.split()


def load_stopwords(path: Union[str, Path, None] = None) -> frozenset[str]:
    """Load the stopword list, one lowercase word per line."""
    p = Path(path) if path is not None else _DATA_DIR / "stopwords.txt"
    words = [line.strip() for line in p.read_text(encoding="utf-8").splitlines()]
    return frozenset(w for w in words if w)


def load_synonyms(path: Union[str, Path, None] = None) -> dict[str, tuple[str, ...]]:
    """Load the synonym lexicon: `word<TAB>syn1,syn2,...` per line.

    Entries are nouns and adjectives only; membership in this lexicon is
    what marks a token as expandable.
    """
    p = Path(path) if path is not None else _DATA_DIR / "synonyms.tsv"
    lexicon: dict[str, tuple[str, ...]] = {}
    for line in p.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, _, rest = line.partition("\t")
        syns = tuple(s.strip() for s in rest.split(",") if s.strip())
        if word and syns:
            lexicon[word] = syns
    return lexicon


@dataclass(frozen=True)
class PipelineConfig:
    """Immutable preprocessing configuration shared by documents and queries."""

    stopwords: frozenset[str] = field(default_factory=frozenset)
    synonyms: dict[str, tuple[str, ...]] = field(default_factory=dict)
    expand_synonyms_on_query: bool = False


@lru_cache(maxsize=1)
def default_config() -> PipelineConfig:
    """Pipeline config backed by the bundled stopword and synonym files."""
    return PipelineConfig(stopwords=load_stopwords(), synonyms=load_synonyms())


def remove_stopwords(tokens: list[str], config: PipelineConfig) -> list[str]:
    return [t for t in tokens if t not in config.stopwords]


def expand_synonyms(tokens: list[str], config: PipelineConfig) -> list[str]:
    """Append each token's synonyms right after it; unknown tokens pass through."""
    out: list[str] = []
    for t in tokens:
        out.append(t)
        out.extend(config.synonyms.get(t, ()))
    return out


def stem_token(token: str) -> str:
    return stem(token)


def _pipeline(text: str, config: PipelineConfig, expand: bool) -> Counter:
    tokens = tokenize(normalize(text))
    tokens = remove_stopwords(tokens, config)
    if expand:
        # Expansion runs before stemming: the lexicon is keyed on surface words.
        tokens = expand_synonyms(tokens, config)
    return Counter(stem(t) for t in tokens)


def preprocess_document(text: str, config: Optional[PipelineConfig] = None) -> Counter:
    """Full document pipeline, synonym expansion included."""
    cfg = config if config is not None else default_config()
    return _pipeline(text, cfg, expand=True)


def preprocess_query(text: str, config: Optional[PipelineConfig] = None) -> Counter:
    """Query pipeline; expansion only when the config opts in."""
    cfg = config if config is not None else default_config()
    return _pipeline(text, cfg, expand=cfg.expand_synonyms_on_query)


class TextPreprocessor(BaseEstimator, TransformerMixin):
    """Stateless transformer from raw texts to bags of words.

    Fits nothing; exists so preprocessing can sit in an estimator pipeline.
    """

    def __init__(self, config: Optional[PipelineConfig] = None):
        self.config = config

    def fit(self, X, y=None):
        return self

    def transform(self, X) -> list[Counter]:
        cfg = self.config if self.config is not None else default_config()
        return [preprocess_document(text, cfg) for text in X]
