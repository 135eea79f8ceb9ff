"""New Dale-Chall readability scoring and the learner-text match term.

The grade-level score combines the share of unfamiliar words with average
sentence length; the match term turns the gap between a learner's
readability ability and a passage's score into a bounded fit signal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

# Published New Dale-Chall constants (Chall & Dale, 1995).
DIFFICULT_WORD_COEFF = 0.1579
SENTENCE_LENGTH_COEFF = 0.0496
ADJUSTMENT = 3.6365
ADJUSTMENT_THRESHOLD = 0.05

# Eq-fixed divisor and clip range for the learner-text match.
MATCH_DIVISOR = 6.0

_WORD_RE = re.compile(r"[A-Za-z0-9]+")
_SENTENCE_SPLIT_RE = re.compile(r"[.!?]+(?=\s|$)")
_HAS_DIGIT_RE = re.compile(r"\d")


class NoScorableContent(ValueError):
    """Raised when a text contains no words after tokenization."""


@dataclass(frozen=True)
class ReadabilityScore:
    value: float
    difficult_word_fraction: float
    avg_sentence_length: float


@dataclass(frozen=True)
class FamiliarWordList:
    words: frozenset[str]

    def __post_init__(self):
        if not self.words:
            raise ValueError("familiar word list must be non-empty")
        bad = [w for w in self.words if w != w.strip().lower() or not w]
        if bad:
            raise ValueError(f"familiar words must be lowercase and trimmed: {bad[:5]}")

    def __contains__(self, word: str) -> bool:
        return word in self.words


def load_word_list(text: str) -> FamiliarWordList:
    """Parse a word-list file: one word per line, '#' comments and blanks ignored."""
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(line.lower())
    return FamiliarWordList(frozenset(words))


@lru_cache(maxsize=1)
def default_word_list() -> FamiliarWordList:
    """The familiar-word list bundled with the package."""
    text = resources.files("readloop").joinpath("assets/familiar_words.txt").read_text("utf-8")
    return load_word_list(text)


def split_sentences(text: str) -> list[str]:
    """Sentences end at .!? followed by whitespace or end of text."""
    parts = _SENTENCE_SPLIT_RE.split(text)
    return [p.strip() for p in parts if _WORD_RE.search(p)]


def tokenize_words(text: str) -> list[str]:
    """Words are maximal alphanumeric runs, lowercased."""
    return [w.lower() for w in _WORD_RE.findall(text)]


def _is_familiar(word: str, familiar: FamiliarWordList) -> bool:
    # Numeric tokens count as familiar.
    if _HAS_DIGIT_RE.search(word):
        return True
    return word in familiar


def dale_chall_score(text: str, familiar: FamiliarWordList) -> ReadabilityScore:
    """Score a passage on the New Dale-Chall grade-level scale.

    value = 0.1579 * (100 * difficult_fraction) + 0.0496 * avg_sentence_length,
    plus 3.6365 when the difficult fraction exceeds 5%.
    """
    sentences = split_sentences(text)
    words = tokenize_words(text)
    if not sentences or not words:
        raise NoScorableContent("no scorable content")

    difficult = sum(1 for w in words if not _is_familiar(w, familiar))
    fraction = difficult / len(words)
    avg_len = len(words) / len(sentences)

    value = DIFFICULT_WORD_COEFF * (100.0 * fraction) + SENTENCE_LENGTH_COEFF * avg_len
    if fraction > ADJUSTMENT_THRESHOLD:
        value += ADJUSTMENT
    return ReadabilityScore(value=value, difficult_word_fraction=fraction, avg_sentence_length=avg_len)


def match_score(a_i: float, d_j: float) -> float:
    """Learner-text fit: 1 - |a_i - d_j| / 6, clipped to [-1, 1].

    Maximal (1.0) when ability equals the text score; symmetric; higher
    values mean a better match.
    """
    value = 1.0 - abs(a_i - d_j) / MATCH_DIVISOR
    return max(-1.0, min(1.0, value))
