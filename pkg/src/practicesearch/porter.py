"""Porter stemmer: classic rule-based suffix stripping for English.

Implements the original five-step algorithm over lowercase ASCII words.
Within each step the first matching suffix decides the outcome: if its
condition holds the rewrite is applied, otherwise the word leaves the
step unchanged (later rules of the same step are not tried).
"""

from __future__ import annotations

_VOWELS = frozenset("aeiou")


def _consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Count vowel-consonant transitions ([C](VC)^m[V] form)."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        if _consonant(stem, i):
            if prev_vowel:
                m += 1
            prev_vowel = False
        else:
            prev_vowel = True
    return m


def _contains_vowel(stem: str) -> bool:
    return any(not _consonant(stem, i) for i in range(len(stem)))


def _double_consonant(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _consonant(word, len(word) - 1)


def _cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    return (
        _consonant(word, len(word) - 3)
        and not _consonant(word, len(word) - 2)
        and _consonant(word, len(word) - 1)
        and word[-1] not in "wxy"
    )


def _positive_measure(stem: str) -> bool:
    return _measure(stem) > 0


def _measure_gt_one(stem: str) -> bool:
    return _measure(stem) > 1


def _apply_first(word, rules):
    """Apply the first rule whose suffix matches; a failed condition stops
    the whole step, matching the algorithm's longest-match semantics."""
    for suffix, replacement, condition in rules:
        if word.endswith(suffix):
            stem = word[: -len(suffix)] if suffix else word
            if condition is None or condition(stem):
                return stem + replacement
            return word
    return word


_STEP2 = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"),
    ("anci", "ance"), ("izer", "ize"), ("abli", "able"), ("alli", "al"),
    ("entli", "ent"), ("eli", "e"), ("ousli", "ous"), ("ization", "ize"),
    ("ation", "ate"), ("ator", "ate"), ("alism", "al"), ("iveness", "ive"),
    ("fulness", "ful"), ("ousness", "ous"), ("aliti", "al"),
    ("iviti", "ive"), ("biliti", "ble"),
]

_STEP3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]

_STEP4 = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def _step1a(word):
    return _apply_first(word, [
        ("sses", "ss", None),
        ("ies", "i", None),
        ("ss", "ss", None),
        ("s", "", None),
    ])


def _step1b(word):
    if word.endswith("eed"):
        stem = word[:-3]
        return stem + "ee" if _positive_measure(stem) else word
    for suffix in ("ed", "ing"):
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if not _contains_vowel(stem):
                return word
            return _recode_after_deletion(stem)
    return word


def _recode_after_deletion(stem):
    if stem.endswith(("at", "bl", "iz")):
        return stem + "e"
    if _double_consonant(stem):
        return stem if stem[-1] in "lsz" else stem[:-1]
    if _measure(stem) == 1 and _cvc(stem):
        return stem + "e"
    return stem


def _step1c(word):
    return _apply_first(word, [("y", "i", _contains_vowel)])


def _step2(word):
    return _apply_first(
        word, [(suf, rep, _positive_measure) for suf, rep in _STEP2]
    )


def _step3(word):
    return _apply_first(
        word, [(suf, rep, _positive_measure) for suf, rep in _STEP3]
    )


def _ion_condition(stem: str) -> bool:
    return _measure_gt_one(stem) and stem[-1] in ("s", "t")


def _step4(word):
    rules = []
    for suf in _STEP4:
        condition = _ion_condition if suf == "ion" else _measure_gt_one
        rules.append((suf, "", condition))
    return _apply_first(word, rules)


def _step5a(word):
    if not word.endswith("e"):
        return word
    stem = word[:-1]
    m = _measure(stem)
    if m > 1 or (m == 1 and not _cvc(stem)):
        return stem
    return word


def _step5b(word):
    if word.endswith("ll") and _measure_gt_one(word[:-1]):
        return word[:-1]
    return word


_STEPS = (_step1a, _step1b, _step1c, _step2, _step3, _step4, _step5a, _step5b)


def stem(word: str) -> str:
    """Stem a single lowercase token; words of length <= 2 pass through."""
    word = word.lower()
    if len(word) <= 2:
        return word
    for step in _STEPS:
        word = step(word)
    return word
