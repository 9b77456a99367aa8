"""Noun-phrase extraction: tokenizer, rule-based tagger, and chunker.

Knowledge elements (KEs) are normalized noun phrases.  Problem elements
(PKEs) come from a patent's title, solution elements (SKEs) from its
abstract.  Tagging is deliberately coarse: a closed-class lexicon, a
handful of suffix rules, and a noun default.  The chunker matches two tag
patterns, longest match first, scanning left to right without overlaps.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .corpus import PatentDoc, TaggedPair
from .errors import NoElementsFound

DETERMINERS = frozenset({"a", "an", "the"})

# Function words and a few high-frequency patent verbs whose base/-s forms
# would otherwise default to nouns and glue unrelated phrases together.
STOPWORDS = frozenset(
    """
    and or nor but of for with without within in on at by to from into onto
    upon over under above below between among through via per during
    is are was were be been being am do does did done has have had having
    can could may might must shall should will would not no
    as such than then that these those this it its they them their we our
    you your which who whom whose what when where while whether if so too
    also thus therefore further furthermore moreover however
    each every any some all both few many much more most less least other
    another same several various respective said plurality
    first second third one two three
    wherein whereby therein thereon thereof thereby herein hereby
    use uses provide provides comprise comprises comprising include
    includes including contain contains containing consist consists
    consisting form forms
    """.split()
)

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:-[A-Za-z0-9]+)*")
_SENTENCE_SPLIT_RE = re.compile(r"[.!?;]")
_SENTENCE_BREAK_SURFACES = frozenset({".", "!", "?", ";"})

_JJ_SUFFIXES = ("ic", "ive", "able", "ous", "al")
_VOWELS = frozenset("aeiou")


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    tag: str


@dataclass(frozen=True)
class KnowledgeElement:
    """A normalized noun phrase plus the surface forms it was seen as."""

    key: str
    surfaces: tuple[str, ...] = ()

    def merged(self, other: "KnowledgeElement") -> "KnowledgeElement":
        assert other.key == self.key
        return KnowledgeElement(self.key, tuple(sorted(set(self.surfaces) | set(other.surfaces))))


@dataclass(frozen=True)
class FocalElements:
    """Problem and solution elements of one focal patent, deduped by key."""

    pkes: tuple[KnowledgeElement, ...]
    skes: tuple[KnowledgeElement, ...]

    def pke_keys(self) -> frozenset[str]:
        return frozenset(ke.key for ke in self.pkes)

    def ske_keys(self) -> frozenset[str]:
        return frozenset(ke.key for ke in self.skes)


def tokenize(text: str) -> list[str]:
    """Split on whitespace/punctuation; hyphenated words stay whole."""
    return _TOKEN_RE.findall(text)


def split_sentences(text: str) -> list[str]:
    """Split at sentence-ending punctuation {. ! ? ;}."""
    return [part for part in _SENTENCE_SPLIT_RE.split(text) if part.strip()]


def tag_word(word: str) -> str:
    """Tag a single token: lexicon first, then suffix rules, noun default."""
    w = word.lower()
    if w in DETERMINERS:
        return "DT"
    if w in STOPWORDS:
        return "OTHER"
    if w.endswith("ing"):
        return "VBG"
    if w.endswith("ed"):
        return "VBN"
    for suffix in _JJ_SUFFIXES:
        if w.endswith(suffix):
            return "JJ"
    if len(w) >= 4 and w.endswith("s"):
        prev = w[-2]
        if prev.isalpha() and prev not in _VOWELS:
            return "NNS"
    return "NN"


def pos_tag(text: str) -> list[TaggedToken]:
    """Deterministically tag the tokens of a text span."""
    return [TaggedToken(tok, tag_word(tok)) for tok in tokenize(text)]


# The two chunk patterns as (tag class, min, unbounded) segment lists:
#   1: <DT><VBG|VBN>*<JJ.*>*<VBG|VBN|VB>*<NN.*>*<JJ.*>*<NN.*>+
#   2: <VBN>*<JJ.*>*<VBN>*<NN.*>*<JJ.*>*<NN.*>+
_JJ_ANY = frozenset({"JJ", "JJR", "JJS"})
_NN_ANY = frozenset({"NN", "NNS", "NNP"})

_PATTERN_1 = (
    (frozenset({"DT"}), 1, False),
    (frozenset({"VBG", "VBN"}), 0, True),
    (_JJ_ANY, 0, True),
    (frozenset({"VBG", "VBN", "VB"}), 0, True),
    (_NN_ANY, 0, True),
    (_JJ_ANY, 0, True),
    (_NN_ANY, 1, True),
)
_PATTERN_2 = (
    (frozenset({"VBN"}), 0, True),
    (_JJ_ANY, 0, True),
    (frozenset({"VBN"}), 0, True),
    (_NN_ANY, 0, True),
    (_JJ_ANY, 0, True),
    (_NN_ANY, 1, True),
)


def _compile(segments):
    """Build an epsilon-NFA over segment boundaries.

    State i = "about to consume segment i"; an extra mid-state per
    repeatable segment is avoided by encoding (consume -> stay) loops.
    Returns (consume, epsilon, accept) tables over integer states.
    """
    consume: list[list[tuple[frozenset, int]]] = []
    epsilon: list[list[int]] = []
    state_of_seg = []
    n_states = 0
    for _ in range(len(segments) + 1):
        consume.append([])
        epsilon.append([])
    # Grow states lazily: boundary states 0..k, plus one loop state per
    # unbounded segment that requires at least one token.
    n_states = len(segments) + 1
    for i, (cls, lo, unbounded) in enumerate(segments):
        if lo == 0 and unbounded:
            consume[i].append((cls, i))       # stay within segment
            epsilon[i].append(i + 1)          # or skip/leave it
        elif lo == 1 and unbounded:
            loop = n_states
            n_states += 1
            consume.append([(cls, loop)])
            epsilon.append([i + 1])
            consume[i].append((cls, loop))
        elif lo == 1 and not unbounded:
            consume[i].append((cls, i + 1))
        else:  # pragma: no cover - no such segment shape in the grammar
            raise AssertionError(segments)
    accept = len(segments)
    return consume, epsilon, accept


def _closure(states, epsilon):
    stack = list(states)
    seen = set(states)
    while stack:
        s = stack.pop()
        for t in epsilon[s]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


_NFA_1 = _compile(_PATTERN_1)
_NFA_2 = _compile(_PATTERN_2)


def _longest_match(tags: list[str], start: int, nfa) -> int:
    """Length of the longest pattern match starting at ``start`` (0 if none)."""
    consume, epsilon, accept = nfa
    frontier = _closure({0}, epsilon)
    best = 0
    length = 0
    for pos in range(start, len(tags)):
        tag = tags[pos]
        nxt = set()
        for s in frontier:
            for cls, target in consume[s]:
                if tag in cls:
                    nxt.add(target)
        if not nxt:
            break
        frontier = _closure(nxt, epsilon)
        length += 1
        if accept in frontier:
            best = length
    return best


def normalize_key(text: str) -> str:
    """Lowercase, collapse whitespace, strip leading determiners."""
    words = [t.lower() for t in tokenize(text)]
    while words and words[0] in DETERMINERS:
        words.pop(0)
    return " ".join(words)


def chunk_noun_phrases(tokens: list[TaggedToken]) -> list[KnowledgeElement]:
    """Scan left to right for non-overlapping longest pattern matches.

    Output preserves sentence order, duplicates included; each element is
    normalized (lowercase, leading determiner stripped).
    """
    tags = [t.tag for t in tokens]
    out: list[KnowledgeElement] = []
    pos = 0
    while pos < len(tags):
        len1 = _longest_match(tags, pos, _NFA_1)
        len2 = _longest_match(tags, pos, _NFA_2)
        best = max(len1, len2)
        if best == 0:
            pos += 1
            continue
        span = [t for t in tokens[pos : pos + best] if t.tag != "DT"]
        surface = " ".join(t.surface for t in span)
        out.append(KnowledgeElement(surface.lower(), (surface,)))
        pos += best
    return out


def _tagged_sentences(pairs: tuple[TaggedPair, ...]) -> list[list[TaggedToken]]:
    """Split a pre-tagged token stream at sentence punctuation surfaces."""
    sentences: list[list[TaggedToken]] = [[]]
    for surface, tag in pairs:
        if surface in _SENTENCE_BREAK_SURFACES:
            if sentences[-1]:
                sentences.append([])
            continue
        sentences[-1].append(TaggedToken(surface, tag))
    return [s for s in sentences if s]


def sentence_kes(text: str) -> list[list[KnowledgeElement]]:
    """Per-sentence ordered KE lists for a raw text field."""
    return [chunk_noun_phrases(pos_tag(s)) for s in split_sentences(text)]


def doc_sentence_kes(doc: PatentDoc, which: str) -> list[list[KnowledgeElement]]:
    """Per-sentence KEs for a document field, honoring pre-tagged input."""
    tagged = doc.tagged_title if which == "title" else doc.tagged_abstract
    if tagged is not None:
        return [chunk_noun_phrases(s) for s in _tagged_sentences(tagged)]
    text = doc.title if which == "title" else doc.abstract
    return sentence_kes(text)


def _dedupe(kes: list[KnowledgeElement]) -> tuple[KnowledgeElement, ...]:
    by_key: dict[str, KnowledgeElement] = {}
    for ke in kes:
        held = by_key.get(ke.key)
        by_key[ke.key] = ke if held is None else held.merged(ke)
    return tuple(by_key[k] for k in sorted(by_key))


def extract_focal_elements(doc: PatentDoc) -> FocalElements:
    """Extract PKEs from the title and SKEs from the abstract.

    Raises NoElementsFound when a field is empty or yields no elements.
    """
    if not doc.title.strip() and doc.tagged_title is None:
        raise NoElementsFound("title", doc.id)
    if not doc.abstract.strip() and doc.tagged_abstract is None:
        raise NoElementsFound("abstract", doc.id)
    pkes = _dedupe([ke for sent in doc_sentence_kes(doc, "title") for ke in sent])
    if not pkes:
        raise NoElementsFound("title", doc.id)
    skes = _dedupe([ke for sent in doc_sentence_kes(doc, "abstract") for ke in sent])
    if not skes:
        raise NoElementsFound("abstract", doc.id)
    return FocalElements(pkes=pkes, skes=skes)
