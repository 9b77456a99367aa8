from __future__ import annotations

import json
from datetime import date
from pathlib import Path

import pytest

from knowsearch.corpus import Corpus, PatentDoc

REPO_ROOT = Path(__file__).resolve().parents[1]
BENCHMARK_CORPUS = REPO_ROOT / "data" / "benchmark_corpus.jsonl"
FIXTURE_DIR = Path(__file__).resolve().parent / "data"


def make_doc(
    doc_id: str,
    title: str = "The base mask",
    abstract: str = "The base mask is formed on the base layer.",
    priority: str = "2010-01-01",
    publication: str = "2011-01-01",
    citations: int | None = 3,
    focal: bool = False,
) -> PatentDoc:
    return PatentDoc(
        id=doc_id,
        title=title,
        abstract=abstract,
        priority_date=date.fromisoformat(priority),
        publication_date=date.fromisoformat(publication),
        forward_citations_5y=citations,
        focal_candidate=focal,
    )


def write_corpus(path: Path, docs: list[dict]) -> Path:
    lines = [json.dumps(d, sort_keys=True) for d in docs]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def corpus_factory(tmp_path):
    def _make(docs: list[dict], name: str = "corpus.jsonl") -> Path:
        return write_corpus(tmp_path / name, docs)

    return _make


def record(
    doc_id: str,
    title: str,
    abstract: str,
    priority: str,
    publication: str,
    citations: int | None = None,
    focal: bool = False,
) -> dict:
    rec = {
        "id": doc_id,
        "title": title,
        "abstract": abstract,
        "priority_date": priority,
        "publication_date": publication,
        "focal_candidate": focal,
    }
    if citations is not None:
        rec["forward_citations_5y"] = citations
    return rec


def small_corpus(docs: list[PatentDoc]) -> Corpus:
    return Corpus(docs=tuple(docs))
