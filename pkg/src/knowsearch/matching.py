"""Word-boundary substring matching over normalized document text.

Documents are normalized the same way knowledge-element keys are
(lowercased tokens joined by single spaces, per sentence), so every
extracted key is guaranteed to be findable in its source document.
Sentences are joined with " . " so multi-word keys cannot match across a
sentence boundary.
"""
from __future__ import annotations

import re
from functools import lru_cache

from .corpus import PatentDoc
from .extraction import split_sentences, tokenize


def normalize_text(text: str) -> str:
    sentences = []
    for sent in split_sentences(text):
        toks = [t.lower() for t in tokenize(sent)]
        if toks:
            sentences.append(" ".join(toks))
    return " . ".join(sentences)


def doc_search_text(doc: PatentDoc) -> str:
    return normalize_text(doc.title) + " . " + normalize_text(doc.abstract)


@lru_cache(maxsize=None)
def _key_pattern(key: str) -> re.Pattern:
    return re.compile(r"\b" + re.escape(key) + r"\b")


def text_contains(text: str, key: str) -> bool:
    """True when ``key`` occurs in ``text`` as a word-bounded substring."""
    return _key_pattern(key).search(text) is not None
