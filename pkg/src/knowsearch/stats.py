"""Nonparametric tests and descriptive statistics for search-cost data.

Friedman's test (tie-corrected, with a Kendall-W-based Cohen's f),
Nemenyi post-hoc comparisons against the studentized range, Kruskal-
Wallis, Brown-Forsythe variance homogeneity, Cohen's d, and ordinary
least squares.  Midranks are used everywhere ties can occur, since search
costs tie exactly (they are sums of reciprocals of small integers).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .distributions import chi2_sf, f_sf, studentized_range_sf
from .errors import ConstantX, DegenerateInput, EmptyInput, ZeroVariance


@dataclass(frozen=True)
class Descriptives:
    n: int
    mean: float
    median: float
    std: float
    min: float
    max: float


@dataclass(frozen=True)
class TestReport:
    statistic: float
    p_value: float
    effect_size: float | None = None
    df: float | None = None
    group_sizes: tuple[int, ...] | None = None


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float


@dataclass(frozen=True)
class PairwiseComparison:
    a: str
    b: str
    report: TestReport


@dataclass(frozen=True)
class NemenyiResult:
    mean_ranks: dict[str, float]
    pairs: tuple[PairwiseComparison, ...]


@dataclass
class PairedMatrix:
    """Subjects x treatments matrix with no missing cells."""

    subjects: tuple[str, ...]
    treatments: tuple[str, ...]
    values: tuple[tuple[float, ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        for row in self.values:
            if len(row) != len(self.treatments):
                raise DegenerateInput("matrix is not rectangular")
        if len(self.values) != len(self.subjects):
            raise DegenerateInput("row count does not match subjects")

    def column(self, treatment: str) -> list[float]:
        j = self.treatments.index(treatment)
        return [row[j] for row in self.values]


def midranks(values: Sequence[float]) -> list[float]:
    """Ranks 1..n with tied values sharing the average of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2.0 + 1.0
        for pos in range(i, j + 1):
            ranks[order[pos]] = avg
        i = j + 1
    return ranks


def descriptive(values: Sequence[float]) -> Descriptives:
    if not values:
        raise EmptyInput("descriptive statistics need at least one value")
    n = len(values)
    mean = sum(values) / n
    ordered = sorted(values)
    mid = n // 2
    median = ordered[mid] if n % 2 else (ordered[mid - 1] + ordered[mid]) / 2.0
    if n == 1:
        std = 0.0
    else:
        std = math.sqrt(sum((v - mean) ** 2 for v in values) / (n - 1))
    return Descriptives(n, mean, median, std, ordered[0], ordered[-1])


def _rank_rows(m: PairedMatrix) -> list[list[float]]:
    return [midranks(row) for row in m.values]


def _tie_term(row: Sequence[float]) -> int:
    seen: dict[float, int] = {}
    for v in row:
        seen[v] = seen.get(v, 0) + 1
    return sum(t**3 - t for t in seen.values())


def friedman_test(m: PairedMatrix) -> TestReport:
    """Tie-corrected Friedman chi-square over within-subject ranks.

    Effect size is Cohen's f derived from Kendall's W.
    """
    n = len(m.subjects)
    k = len(m.treatments)
    if n < 2 or k < 2:
        raise DegenerateInput("friedman needs >= 2 subjects and >= 2 treatments")
    ranked = _rank_rows(m)
    rank_sums = [sum(row[j] for row in ranked) for j in range(k)]
    ssbn = sum(r * r for r in rank_sums)
    ties = sum(_tie_term(row) for row in m.values)
    correction = 1.0 - ties / (n * k * (k * k - 1))
    if correction <= 0.0:
        # Every row fully tied: no information, no difference.
        return TestReport(0.0, 1.0, effect_size=0.0, df=float(k - 1))
    chi2 = (12.0 / (n * k * (k + 1)) * ssbn - 3.0 * n * (k + 1)) / correction
    chi2 = max(0.0, chi2)
    p = chi2_sf(chi2, k - 1)
    w = min(1.0, max(0.0, chi2 / (n * (k - 1))))
    f = math.inf if w >= 1.0 else math.sqrt(w / (1.0 - w))
    return TestReport(chi2, p, effect_size=f, df=float(k - 1))


def cohens_d(a: Sequence[float], b: Sequence[float]) -> float:
    """Mean difference over the pooled sample standard deviation."""
    na, nb = len(a), len(b)
    if na < 2 or nb < 2:
        raise DegenerateInput("cohens_d needs >= 2 values per group")
    mean_a = sum(a) / na
    mean_b = sum(b) / nb
    var_a = sum((v - mean_a) ** 2 for v in a) / (na - 1)
    var_b = sum((v - mean_b) ** 2 for v in b) / (nb - 1)
    pooled = math.sqrt(((na - 1) * var_a + (nb - 1) * var_b) / (na + nb - 2))
    if pooled == 0.0:
        raise ZeroVariance("pooled standard deviation is zero")
    return (mean_a - mean_b) / pooled


def nemenyi_posthoc(m: PairedMatrix) -> NemenyiResult:
    """All pairwise rank comparisons after a Friedman test.

    The standardized statistic |R_a - R_b| / sqrt(k(k+1)/(12n)) is
    referred to the studentized range with k groups and infinite df.
    """
    n = len(m.subjects)
    k = len(m.treatments)
    if n < 2 or k < 2:
        raise DegenerateInput("nemenyi needs >= 2 subjects and >= 2 treatments")
    ranked = _rank_rows(m)
    mean_ranks = {
        t: sum(row[j] for row in ranked) / n for j, t in enumerate(m.treatments)
    }
    scale = math.sqrt(k * (k + 1) / (12.0 * n))
    pairs = []
    for i, a in enumerate(m.treatments):
        for b in m.treatments[i + 1 :]:
            q = abs(mean_ranks[a] - mean_ranks[b]) / scale
            p = studentized_range_sf(q, k)
            try:
                d = cohens_d(m.column(a), m.column(b))
            except (DegenerateInput, ZeroVariance):
                d = None
            pairs.append(PairwiseComparison(a, b, TestReport(q, p, effect_size=d)))
    return NemenyiResult(mean_ranks=mean_ranks, pairs=tuple(pairs))


def kruskal_wallis(groups: Sequence[Sequence[float]]) -> TestReport:
    """Tie-corrected Kruskal-Wallis H across independent groups."""
    if len(groups) < 2 or any(len(g) == 0 for g in groups):
        raise DegenerateInput("kruskal_wallis needs >= 2 non-empty groups")
    pooled: list[float] = []
    for g in groups:
        pooled.extend(g)
    n = len(pooled)
    ranks = midranks(pooled)
    h = 0.0
    offset = 0
    for g in groups:
        r = sum(ranks[offset : offset + len(g)])
        h += r * r / len(g)
        offset += len(g)
    h = 12.0 / (n * (n + 1)) * h - 3.0 * (n + 1)
    correction = 1.0 - _tie_term(pooled) / (n**3 - n)
    if correction <= 0.0:
        return TestReport(0.0, 1.0, df=float(len(groups) - 1),
                          group_sizes=tuple(len(g) for g in groups))
    h /= correction
    h = max(0.0, h)
    return TestReport(
        h,
        chi2_sf(h, len(groups) - 1),
        df=float(len(groups) - 1),
        group_sizes=tuple(len(g) for g in groups),
    )


def variance_homogeneity(groups: Sequence[Sequence[float]]) -> TestReport:
    """Brown-Forsythe test: one-way F over median-centered deviations."""
    if len(groups) < 2 or any(len(g) < 2 for g in groups):
        raise DegenerateInput("variance test needs >= 2 groups of size >= 2")
    devs: list[list[float]] = []
    for g in groups:
        med = descriptive(g).median
        devs.append([abs(v - med) for v in g])
    sizes = [len(d) for d in devs]
    n = sum(sizes)
    g_count = len(devs)
    grand = sum(sum(d) for d in devs) / n
    means = [sum(d) / len(d) for d in devs]
    between = sum(s * (mu - grand) ** 2 for s, mu in zip(sizes, means)) / (g_count - 1)
    within = sum(
        sum((v - mu) ** 2 for v in d) for d, mu in zip(devs, means)
    ) / (n - g_count)
    if within == 0.0:
        if between == 0.0:
            return TestReport(0.0, 1.0, df=float(g_count - 1), group_sizes=tuple(sizes))
        return TestReport(math.inf, 0.0, df=float(g_count - 1), group_sizes=tuple(sizes))
    f = between / within
    return TestReport(
        f,
        f_sf(f, g_count - 1, n - g_count),
        df=float(g_count - 1),
        group_sizes=tuple(sizes),
    )


def linear_fit(x: Sequence[float], y: Sequence[float]) -> LinearFit:
    """Ordinary least squares fit of y on x."""
    if len(x) != len(y) or len(x) < 2:
        raise DegenerateInput("linear_fit needs equal-length inputs of >= 2")
    n = len(x)
    mean_x = sum(x) / n
    mean_y = sum(y) / n
    sxx = sum((v - mean_x) ** 2 for v in x)
    if sxx == 0.0:
        raise ConstantX("x values are constant")
    sxy = sum((a - mean_x) * (b - mean_y) for a, b in zip(x, y))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    ss_res = sum((b - (slope * a + intercept)) ** 2 for a, b in zip(x, y))
    ss_tot = sum((b - mean_y) ** 2 for b in y)
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res == 0.0 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return LinearFit(slope, intercept, r2)
