"""Phrase-pair similarity for semantic edges.

Word similarity is squared longest-common-substring length over the
length product; phrases are compared by greedily matching their words and
combining coverage with a word-order penalty.  Everything is exact,
deterministic, and symmetric (argument order is canonicalized before
matching), so the scores are usable as undirected edge weights.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb


def _lcsubstr_len(s1: str, s2: str) -> int:
    """Length of the longest common contiguous substring."""
    if not s1 or not s2:
        return 0
    prev = [0] * (len(s2) + 1)
    best = 0
    for ch1 in s1:
        cur = [0] * (len(s2) + 1)
        for j, ch2 in enumerate(s2, start=1):
            if ch1 == ch2:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best:
                    best = cur[j]
        prev = cur
    return best


@lru_cache(maxsize=None)
def word_similarity(w1: str, w2: str) -> float:
    """Similarity of two lowercase words in [0, 1]."""
    if w1 == w2:
        return 1.0
    common = _lcsubstr_len(w1, w2)
    if common == 0:
        return 0.0
    return (common * common) / (len(w1) * len(w2))


def _inversions(seq: list[int]) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return inv


@lru_cache(maxsize=None)
def phrase_similarity(p1: str, p2: str) -> float:
    """Similarity of two normalized phrases in [0, 1].

    Greedy word matching: repeatedly take the highest-similarity unused
    (word_i, word_j) pair, ties broken by smallest (i, j).  Coverage
    delta over both phrase lengths gives the base score; an inversion
    count over the matched positions supplies the order penalty.
    """
    if p1 == p2:
        return 1.0
    if p1 > p2:  # canonical order keeps the greedy tie-break symmetric
        p1, p2 = p2, p1
    a = p1.split()
    b = p2.split()
    m, n = len(a), len(b)
    if m == 0 or n == 0:
        return 0.0

    cells = []
    for i, wa in enumerate(a):
        for j, wb in enumerate(b):
            sim = word_similarity(wa, wb)
            if sim > 0.0:
                cells.append((-sim, i, j))
    cells.sort()

    used_rows: set[int] = set()
    used_cols: set[int] = set()
    selected: list[tuple[int, int, float]] = []
    for neg, i, j in cells:
        if i in used_rows or j in used_cols:
            continue
        used_rows.add(i)
        used_cols.add(j)
        selected.append((i, j, -neg))
        if len(used_rows) == m or len(used_cols) == n:
            break

    delta = sum(sim for _, _, sim in selected)
    t = len(selected)
    if t == 0:
        return 0.0
    base = delta * (m + n) / (2.0 * m * n)

    if t < 2:
        omega = 1.0
    else:
        js = [j for _, j, _ in sorted(selected)]
        omega = 1.0 - _inversions(js) / comb(t, 2)

    score = base * (0.5 + 0.5 * omega)
    return min(1.0, max(0.0, score))


def max_possible_similarity(m: int, n: int) -> float:
    """Upper bound on phrase_similarity for word counts m and n.

    Coverage delta cannot exceed min(m, n), so this bound lets callers
    skip pairs that can never reach a threshold.
    """
    if m == 0 or n == 0:
        return 0.0
    return min(m, n) * (m + n) / (2.0 * m * n)
