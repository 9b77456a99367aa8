"""Seeded synthetic patent-corpus generator.

Stands in for a real patent database at desk scale.  Titles and abstracts
are assembled from a generated noun-phrase vocabulary with heavy-tailed
(Zipf) phrase popularity, so frequency-sensitive search rules have signal
to exploit: popular phrases recur across many documents and become
high-weight hubs, while tail phrases stay rare and expensive to reach.
Dates increase monotonically with document index and only the later part
of the corpus is flagged focal-candidate, guaranteeing every candidate a
deep pool of prior documents.  Same parameters and seed produce a
byte-identical file.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

from .errors import InvalidParams

_CONSONANTS = "bcdfglmnprstvz"
_VOWELS = "aeiou"
_NOUN_ENDINGS = ("on", "or", "er", "um", "ide", "ate", "ene", "ite", "ode", "ex", "ium")
_ADJ_ENDINGS = ("ic", "ive", "al", "ous")

# (template, boost) - every slot is determiner-prefixed so the chunker
# recovers each phrase whole; connective words are all closed-class.
_SENTENCE_TEMPLATES = (
    "The {0} is formed on the {1}.",
    "The {0} is used with the {1}.",
    "A {0} is provided for the {1}.",
    "The {0} includes the {1}.",
    "The {0} comprises the {1} and the {2}.",
    "The {0} is coupled to the {1} in the {2}.",
    "The {0} of the {1} is aligned with the {2}.",
    "The {0} and the {1} are arranged over the {2}.",
)

_TITLE_TEMPLATES = (
    "The {0} for the {1}",
    "The {0} with the {1}",
    "The {0}",
)

_ZIPF_EXPONENT = 0.9
_FOCAL_FRACTION = 0.55  # later 55% of documents are focal candidates
_PLURAL_VARIANT_RATE = 0.12


@dataclass(frozen=True)
class SynthParams:
    n_patents: int = 200
    vocab_size: int = 120
    phrases_per_abstract: int = 9
    date_range: tuple[str, str] = ("2000-01-01", "2015-12-31")
    citation_p_zero: float = 0.3
    citation_mean: float = 7.0
    seed: int | None = None

    def validate(self) -> None:
        if self.seed is None:
            raise InvalidParams("seed is required")
        if self.n_patents <= 0:
            raise InvalidParams("n_patents must be positive")
        if self.vocab_size <= 0:
            raise InvalidParams("vocab_size must be positive")
        if self.phrases_per_abstract <= 0:
            raise InvalidParams("phrases_per_abstract must be positive")
        if not 0.0 <= self.citation_p_zero <= 1.0:
            raise InvalidParams("citation_p_zero must be in [0, 1]")
        if self.citation_mean < 1.0:
            raise InvalidParams("citation_mean must be >= 1")
        try:
            start = date.fromisoformat(self.date_range[0])
            end = date.fromisoformat(self.date_range[1])
        except (ValueError, IndexError) as exc:
            raise InvalidParams(f"bad date_range: {exc}") from None
        if start >= end:
            raise InvalidParams("date_range start must precede end")


def _stem(rng: random.Random) -> str:
    n_syllables = rng.randint(1, 2)
    return "".join(rng.choice(_CONSONANTS) + rng.choice(_VOWELS) for _ in range(n_syllables))


def _word_pool(rng: random.Random, count: int, endings: tuple[str, ...]) -> list[str]:
    pool: list[str] = []
    seen: set[str] = set()
    while len(pool) < count:
        word = _stem(rng) + rng.choice(endings)
        if word not in seen:
            seen.add(word)
            pool.append(word)
    return pool


def _build_vocab(rng: random.Random, size: int) -> list[str]:
    """Distinct phrases (space-joined lowercase words), popularity-ranked."""
    nouns = _word_pool(rng, max(20, round(size * 0.6)), _NOUN_ENDINGS)
    adjectives = _word_pool(rng, max(8, round(size * 0.25)), _ADJ_ENDINGS)
    vbns = _word_pool(rng, max(4, size // 8), ("ed",))
    vbgs = _word_pool(rng, max(4, size // 10), ("ing",))
    shapes = (
        (0.30, lambda: [rng.choice(nouns)]),
        (0.25, lambda: [rng.choice(adjectives), rng.choice(nouns)]),
        (0.15, lambda: [rng.choice(nouns), rng.choice(nouns)]),
        (0.10, lambda: [rng.choice(vbns), rng.choice(nouns)]),
        (0.08, lambda: [rng.choice(vbgs), rng.choice(nouns)]),
        (0.07, lambda: [rng.choice(adjectives), rng.choice(nouns), rng.choice(nouns)]),
        (0.05, lambda: [rng.choice(adjectives), rng.choice(adjectives), rng.choice(nouns)]),
    )
    cutoffs = []
    acc = 0.0
    for weight, make in shapes:
        acc += weight
        cutoffs.append((acc, make))
    phrases: list[str] = []
    seen: set[str] = set()
    while len(phrases) < size:
        if phrases and rng.random() < _PLURAL_VARIANT_RATE:
            candidate = rng.choice(phrases) + "s"
        else:
            roll = rng.random() * acc
            for cut, make in cutoffs:
                if roll <= cut:
                    candidate = " ".join(make())
                    break
        if candidate not in seen:
            seen.add(candidate)
            phrases.append(candidate)
    return phrases


def _zipf_weights(size: int) -> list[float]:
    return [1.0 / (rank + 1) ** _ZIPF_EXPONENT for rank in range(size)]


def _draw_citations(rng: random.Random, p_zero: float, mean: float) -> int:
    if rng.random() < p_zero:
        return 0
    p = 1.0 / mean
    u = rng.random()
    return 1 + int(math.log(1.0 - u) / math.log(1.0 - p))


def generate_records(params: SynthParams) -> list[dict]:
    """Deterministic list of corpus records for the given parameters."""
    params.validate()
    rng = random.Random(params.seed)
    vocab = _build_vocab(rng, params.vocab_size)
    weights = _zipf_weights(len(vocab))
    title_weights = [w * w for w in weights]  # titles skew popular

    start = date.fromisoformat(params.date_range[0])
    end = date.fromisoformat(params.date_range[1])
    span_days = (end - start).days
    n = params.n_patents
    focal_from = int(n * (1.0 - _FOCAL_FRACTION))

    records = []
    for i in range(n):
        title_template = rng.choice(_TITLE_TEMPLATES)
        n_title_slots = title_template.count("{")
        title_phrases = rng.choices(vocab, weights=title_weights, k=n_title_slots)
        title = title_template.format(*title_phrases)

        sentences = []
        slots_used = 0
        while slots_used < params.phrases_per_abstract:
            template = rng.choice(_SENTENCE_TEMPLATES)
            n_slots = template.count("{")
            fillers = rng.choices(vocab, weights=weights, k=n_slots)
            sentences.append(template.format(*fillers))
            slots_used += n_slots
        abstract = " ".join(sentences)

        priority = start + timedelta(days=(i * span_days) // max(1, n - 1))
        publication = priority + timedelta(days=rng.randint(360, 900))
        records.append(
            {
                "id": f"SYN-{i:05d}",
                "title": title,
                "abstract": abstract,
                "priority_date": priority.isoformat(),
                "publication_date": publication.isoformat(),
                "forward_citations_5y": _draw_citations(
                    rng, params.citation_p_zero, params.citation_mean
                ),
                "focal_candidate": i >= focal_from,
            }
        )
    return records


def render_corpus(params: SynthParams) -> str:
    """Serialize records to the line-delimited corpus format."""
    lines = [json.dumps(rec, sort_keys=True) for rec in generate_records(params)]
    return "\n".join(lines) + "\n"


def gen_synthetic_corpus(params: SynthParams, path: str | Path) -> int:
    """Write a corpus file; returns the number of records."""
    text = render_corpus(params)
    Path(path).write_text(text, encoding="utf-8")
    return params.n_patents
