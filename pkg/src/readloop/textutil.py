"""Shared lexical helpers: tokenization, stop words, containment overlap."""

from __future__ import annotations

import re
from functools import lru_cache

_WORD_RE = re.compile(r"[A-Za-z0-9']+")

# Small closed-class list; enough to keep overlap scores about content words.
STOPWORDS = frozenset(
    """
    a an the and or but nor so yet of in on at to from by with for as into onto
    is are was were be been being am do does did done have has had having
    it its this that these those there here then than more most some any all
    not no can could will would shall should may might must about over under
    between through during before after above below up down out off again once
    i you he she we they them his her their our your my me him us who whom
    which what when where why how also very just only such own same each both
    if because while until
    """.split()
)


@lru_cache(maxsize=65536)
def content_words(text: str) -> frozenset[str]:
    """Lowercased word set with stop words removed. Cached: trace texts and
    stems recur thousands of times per run."""
    return frozenset(w.lower() for w in _WORD_RE.findall(text)) - STOPWORDS


def overlap(a: str, b: str) -> float:
    """Containment overlap: fraction of b's content words that appear in a.

    Returns 0.0 when b carries no content words.
    """
    b_words = content_words(b)
    if not b_words:
        return 0.0
    return len(content_words(a) & b_words) / len(b_words)


def normalize_ws(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()
