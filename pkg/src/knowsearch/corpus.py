"""Patent document model and corpus loading.

A corpus is a UTF-8 file with one JSON record per line:

    {"id": "...", "title": "...", "abstract": "...",
     "priority_date": "YYYY-MM-DD", "publication_date": "YYYY-MM-DD",
     "forward_citations_5y": 3, "focal_candidate": true}

``forward_citations_5y`` and ``focal_candidate`` are optional (documents
without citation counts are kept for network construction but skipped by
value-category statistics).  Records may optionally carry ``tagged_title``
and ``tagged_abstract`` fields: lists of ``[surface, tag]`` pairs supplied
by an external tagger, which bypass the built-in one.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from pathlib import Path

from .errors import (
    DateOrderViolation,
    DuplicateId,
    MalformedRecord,
    MissingCitations,
)

# Closed tag alphabet shared with the extraction module.
VALID_TAGS = frozenset(
    {"DT", "JJ", "JJR", "JJS", "NN", "NNS", "NNP", "VB", "VBG", "VBN", "OTHER"}
)

TaggedPair = tuple[str, str]


class ValueCategory(str, Enum):
    """Patent value classes by 5-year forward citations."""

    ZERO_CITED = "zero_cited"
    MEDIUM_CITED = "medium_cited"
    HIGHLY_CITED = "highly_cited"


@dataclass(frozen=True)
class PatentDoc:
    id: str
    title: str
    abstract: str
    priority_date: date
    publication_date: date
    forward_citations_5y: int | None = None
    focal_candidate: bool = False
    tagged_title: tuple[TaggedPair, ...] | None = None
    tagged_abstract: tuple[TaggedPair, ...] | None = None


def categorize_value(doc: PatentDoc) -> ValueCategory:
    """Map a document's citation count onto its value category.

    Raises MissingCitations when the count is absent.
    """
    c = doc.forward_citations_5y
    if c is None:
        raise MissingCitations(doc.id)
    if c == 0:
        return ValueCategory.ZERO_CITED
    if c <= 19:
        return ValueCategory.MEDIUM_CITED
    return ValueCategory.HIGHLY_CITED


@dataclass
class Corpus:
    """Immutable, order-preserving collection of patent documents."""

    docs: tuple[PatentDoc, ...]
    index: dict[str, PatentDoc] = field(repr=False, compare=False, default_factory=dict)
    _search_text: dict[str, str] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {d.id: d for d in self.docs}

    def __iter__(self):
        return iter(self.docs)

    def __len__(self) -> int:
        return len(self.docs)

    def get(self, doc_id: str) -> PatentDoc | None:
        return self.index.get(doc_id)

    def focal_candidates(self) -> list[PatentDoc]:
        return [d for d in self.docs if d.focal_candidate]

    def search_text(self, doc_id: str) -> str:
        """Normalized title+abstract blob used for word-boundary matching."""
        blob = self._search_text.get(doc_id)
        if blob is None:
            from .matching import doc_search_text

            blob = doc_search_text(self.index[doc_id])
            self._search_text[doc_id] = blob
        return blob


def _parse_date(raw, line: int, what: str) -> date:
    if not isinstance(raw, str):
        raise MalformedRecord(line, f"{what} must be an ISO date string")
    try:
        return date.fromisoformat(raw)
    except ValueError as exc:
        raise MalformedRecord(line, f"bad {what}: {exc}") from None


def _parse_tagged(raw, line: int, what: str) -> tuple[TaggedPair, ...]:
    if not isinstance(raw, list):
        raise MalformedRecord(line, f"{what} must be a list of [surface, tag] pairs")
    pairs = []
    for item in raw:
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or not isinstance(item[0], str)
            or not item[0]
            or item[1] not in VALID_TAGS
        ):
            raise MalformedRecord(line, f"bad {what} entry {item!r}")
        pairs.append((item[0], item[1]))
    return tuple(pairs)


def parse_record(obj: dict, line: int) -> PatentDoc:
    """Validate one decoded corpus record."""
    if not isinstance(obj, dict):
        raise MalformedRecord(line, "record is not an object")
    doc_id = obj.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise MalformedRecord(line, "missing or empty id")
    title = obj.get("title", "")
    abstract = obj.get("abstract", "")
    if not isinstance(title, str) or not isinstance(abstract, str):
        raise MalformedRecord(line, "title/abstract must be strings")
    prio = _parse_date(obj.get("priority_date"), line, "priority_date")
    pub = _parse_date(obj.get("publication_date"), line, "publication_date")
    if prio > pub:
        raise DateOrderViolation(doc_id)
    citations = obj.get("forward_citations_5y")
    if citations is not None:
        if not isinstance(citations, int) or isinstance(citations, bool) or citations < 0:
            raise MalformedRecord(line, "forward_citations_5y must be a non-negative integer")
    focal = obj.get("focal_candidate", False)
    if not isinstance(focal, bool):
        raise MalformedRecord(line, "focal_candidate must be a boolean")
    if focal and (not title.strip() or not abstract.strip()):
        raise MalformedRecord(line, f"focal candidate {doc_id!r} needs non-empty title and abstract")
    tagged_title = obj.get("tagged_title")
    tagged_abstract = obj.get("tagged_abstract")
    return PatentDoc(
        id=doc_id,
        title=title,
        abstract=abstract,
        priority_date=prio,
        publication_date=pub,
        forward_citations_5y=citations,
        focal_candidate=focal,
        tagged_title=_parse_tagged(tagged_title, line, "tagged_title") if tagged_title is not None else None,
        tagged_abstract=_parse_tagged(tagged_abstract, line, "tagged_abstract")
        if tagged_abstract is not None
        else None,
    )


def load_corpus(path: str | Path) -> Corpus:
    """Load and validate a line-delimited corpus file.

    Blank lines are ignored.  Iteration order of the resulting corpus is
    the file order.
    """
    docs: list[PatentDoc] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecord(line_no, f"invalid JSON: {exc}") from None
            doc = parse_record(obj, line_no)
            if doc.id in seen:
                raise DuplicateId(doc.id)
            seen.add(doc.id)
            docs.append(doc)
    return Corpus(docs=tuple(docs))
