from collections import Counter

import pytest
from hypothesis import given, strategies as st

from practicesearch import (
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

EMPTY_CONFIG = PipelineConfig()

words = st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=12)
texts = st.lists(words, max_size=8).map(" ".join)


def test_normalize_strips_punctuation_digits_and_case():
    assert normalize("Use 10-fold CROSS-validation!!") == "use fold cross validation"


def test_normalize_empty():
    assert normalize("") == ""


def test_normalize_removes_non_ascii_and_collapses_spaces():
    assert normalize("résumé   data") == "rsum data"


def test_normalize_newlines_and_tabs_become_single_spaces():
    assert normalize("a\tb\nc") == "a b c"


@given(st.text(max_size=200))
def test_normalize_is_idempotent(text):
    once = normalize(text)
    assert normalize(once) == once


@given(st.text(max_size=200))
def test_normalize_output_alphabet(text):
    out = normalize(text)
    assert set(out) <= set("abcdefghijklmnopqrstuvwxyz ")
    assert "  " not in out
    assert out == out.strip()


def test_tokenize_splits_on_spaces():
    assert tokenize("use cross validation") == ["use", "cross", "validation"]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_keeps_duplicates():
    assert tokenize("a a") == ["a", "a"]


def test_remove_stopwords_with_bundled_list():
    cfg = default_config()
    assert remove_stopwords(["the", "model", "is", "good"], cfg) == ["model", "good"]


def test_remove_stopwords_identity_cases():
    cfg = default_config()
    assert remove_stopwords([], cfg) == []
    assert remove_stopwords(["model"], cfg) == ["model"]


def test_bundled_stopword_list_has_179_unique_lowercase_words():
    stopwords = load_stopwords()
    assert len(stopwords) == 179
    assert all(w == w.lower() for w in stopwords)


@given(st.lists(words, max_size=20))
def test_stopword_removal_is_sound(tokens):
    cfg = default_config()
    kept = remove_stopwords(tokens, cfg)
    assert kept == [t for t in tokens if t not in cfg.stopwords]
    assert not set(kept) & cfg.stopwords


def test_expand_synonyms_appends_after_the_word():
    cfg = PipelineConfig(synonyms={"error": ("mistake",)})
    assert expand_synonyms(["error"], cfg) == ["error", "mistake"]


def test_expand_synonyms_preserves_order():
    cfg = PipelineConfig(synonyms={"fast": ("quick",)})
    assert expand_synonyms(["fast", "training"], cfg) == ["fast", "quick", "training"]


def test_expand_synonyms_empty_lexicon_is_identity():
    assert expand_synonyms(["model"], EMPTY_CONFIG) == ["model"]


def test_bundled_synonyms_are_well_formed():
    lexicon = load_synonyms()
    assert lexicon
    for word, syns in lexicon.items():
        assert word == normalize(word), word
        assert syns
        assert all(s == normalize(s) for s in syns)


def test_preprocess_document_empty():
    assert preprocess_document("", EMPTY_CONFIG) == Counter()


def test_preprocess_document_counts_repeats():
    bag = preprocess_document(
        "Remove duplicated rows, remove duplicated rows", EMPTY_CONFIG
    )
    assert set(bag.values()) == {2}


def test_preprocess_document_applies_all_steps():
    # "for" is a stopword; the other words survive and get stemmed.
    bag = preprocess_document("Use cross-validation for model evaluation", default_config())
    assert bag == Counter(
        {
            stem_token("use"): 1,
            stem_token("cross"): 1,
            stem_token("validation"): 1,
            stem_token("model"): 1,
            stem_token("evaluation"): 1,
        }
    )


def test_preprocess_document_expands_synonyms():
    cfg = PipelineConfig(synonyms={"error": ("mistake",)})
    bag = preprocess_document("an error", cfg)
    assert bag[stem_token("error")] == 1
    assert bag[stem_token("mistake")] == 1


def test_preprocess_query_skips_expansion_by_default():
    cfg = PipelineConfig(synonyms={"error": ("mistake",)})
    bag = preprocess_query("an error", cfg)
    assert stem_token("mistake") not in bag


def test_preprocess_query_can_opt_into_expansion():
    cfg = PipelineConfig(
        synonyms={"error": ("mistake",)}, expand_synonyms_on_query=True
    )
    bag = preprocess_query("an error", cfg)
    assert stem_token("mistake") in bag


def test_preprocess_query_whitespace_only():
    assert preprocess_query("   ", EMPTY_CONFIG) == Counter()


def test_case_and_punctuation_invariance():
    assert preprocess_query("CROSS-VALIDATION", EMPTY_CONFIG) == preprocess_query(
        "cross validation", EMPTY_CONFIG
    )


@given(texts)
def test_bag_invariance_under_formatting_noise(text):
    cfg = default_config()
    reference = preprocess_document(text, cfg)
    assert preprocess_document(text.upper(), cfg) == reference
    assert preprocess_document(text.replace(" ", "   "), cfg) == reference
    assert preprocess_document(text + " 123 !!", cfg) == reference


@given(texts)
def test_pipeline_is_deterministic(text):
    cfg = default_config()
    assert preprocess_document(text, cfg) == preprocess_document(text, cfg)


@given(words)
def test_stemming_never_lengthens(token):
    assert len(stem_token(token)) <= len(token)


def test_text_preprocessor_transformer(toy_catalog):
    transformer = TextPreprocessor()
    assert transformer.fit(["x"]) is transformer
    texts_in = [p.title for p in toy_catalog.practices[:2]]
    out = transformer.transform(texts_in)
    assert out == [preprocess_document(t) for t in texts_in]


def test_text_preprocessor_respects_config():
    cfg = PipelineConfig(stopwords=frozenset({"the"}))
    out = TextPreprocessor(config=cfg).transform(["the model"])
    assert out == [Counter({stem_token("model"): 1})]
