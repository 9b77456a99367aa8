"""Prior related document selection with iterative query expansion.

The initial document set is every patent published strictly before the
focal priority date whose title or abstract contains at least one problem
element.  Solution elements missing from that set are then appended to
the query one at a time, rarest first, until every solution element is
covered.  A solution element that no pre-date document contains can never
be covered; the focal patent must then be excluded.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from typing import Iterable

from .corpus import Corpus, PatentDoc
from .errors import UncoverableSkes
from .extraction import FocalElements
from .matching import text_contains


@dataclass
class PrdSpec:
    """Query state for one focal patent."""

    focal_id: str
    d0: date
    query_keys: list[str]
    uncovered: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class ExpansionEntry:
    ske_key: str
    retrievals: int
    prd_size: int


@dataclass(frozen=True)
class Prd:
    focal_id: str
    d0: date
    doc_ids: frozenset[str]
    coverage: dict[str, bool]
    expansion_log: tuple[ExpansionEntry, ...]
    query_keys: tuple[str, ...]


def _eligible(corpus: Corpus, d0: date, focal_id: str) -> list[PatentDoc]:
    return [
        doc
        for doc in corpus
        if doc.id != focal_id and doc.publication_date < d0
    ]


def match_query(
    corpus: Corpus, kes: Iterable[str], d0: date, focal_id: str = ""
) -> set[str]:
    """Ids of pre-d0 documents whose title or abstract contains any key."""
    keys = [k for k in kes]
    if not keys:
        raise ValueError("match_query needs at least one knowledge element")
    hits: set[str] = set()
    for doc in _eligible(corpus, d0, focal_id):
        text = corpus.search_text(doc.id)
        for key in keys:
            if text_contains(text, key):
                hits.add(doc.id)
                break
    return hits


def _retrieval_count(corpus: Corpus, key: str, d0: date, focal_id: str) -> int:
    return sum(
        1
        for doc in _eligible(corpus, d0, focal_id)
        if text_contains(corpus.search_text(doc.id), key)
    )


def _covered(corpus: Corpus, doc_ids: set[str], key: str) -> bool:
    return any(text_contains(corpus.search_text(d), key) for d in doc_ids)


def build_prd(corpus: Corpus, focal: PatentDoc, elements: FocalElements) -> Prd:
    """Select and iteratively expand the related-document set.

    Raises UncoverableSkes when some solution element occurs in no
    document published before the focal priority date.
    """
    pke_keys = sorted(elements.pke_keys())
    ske_keys = sorted(elements.ske_keys())
    if not pke_keys:
        raise ValueError(f"focal {focal.id!r} has no problem elements")
    d0 = focal.priority_date
    spec = PrdSpec(focal_id=focal.id, d0=d0, query_keys=list(pke_keys))

    doc_ids = match_query(corpus, spec.query_keys, d0, focal.id)
    coverage = {k: _covered(corpus, doc_ids, k) for k in ske_keys}

    # Rarest-first expansion order, fixed against the full pre-d0 corpus.
    counts = {k: _retrieval_count(corpus, k, d0, focal.id) for k in ske_keys}
    pending = sorted(
        (k for k, cov in coverage.items() if not cov),
        key=lambda k: (counts[k], k),
    )
    impossible = [k for k in pending if counts[k] == 0]
    if impossible:
        raise UncoverableSkes(impossible, focal.id)
    spec.uncovered = list(pending)

    log: list[ExpansionEntry] = []
    while pending and not all(coverage.values()):
        ske = pending.pop(0)
        spec.uncovered.remove(ske)
        spec.query_keys.append(ske)
        doc_ids = match_query(corpus, spec.query_keys, d0, focal.id)
        for k in ske_keys:
            if not coverage[k]:
                coverage[k] = _covered(corpus, doc_ids, k)
        log.append(ExpansionEntry(ske, counts[ske], len(doc_ids)))

    return Prd(
        focal_id=focal.id,
        d0=d0,
        doc_ids=frozenset(doc_ids),
        coverage=coverage,
        expansion_log=tuple(log),
        query_keys=tuple(spec.query_keys),
    )
