from __future__ import annotations

import math
import random

import numpy as np
import pytest
from scipy import stats as sps

from knowsearch.errors import (
    ConstantX,
    DegenerateInput,
    EmptyInput,
    ZeroVariance,
)
from knowsearch.stats import (
    PairedMatrix,
    cohens_d,
    descriptive,
    friedman_test,
    kruskal_wallis,
    linear_fit,
    midranks,
    nemenyi_posthoc,
    variance_homogeneity,
)


def matrix(rows, n=None, k=None) -> PairedMatrix:
    n = n or len(rows)
    k = k or len(rows[0])
    return PairedMatrix(
        tuple(f"s{i}" for i in range(n)),
        tuple(f"t{j}" for j in range(k)),
        tuple(tuple(float(v) for v in r) for r in rows),
    )


class TestDescriptive:
    def test_hand_example(self):
        d = descriptive([1, 2, 3, 4])
        assert d.mean == 2.5
        assert d.median == 2.5
        assert d.std == pytest.approx(1.2909944487358056, abs=1e-12)

    def test_single_value(self):
        d = descriptive([5.0])
        assert d.median == 5.0
        assert d.std == 0.0
        assert d.n == 1

    def test_constant(self):
        assert descriptive([2, 2, 2]).std == 0.0

    def test_empty(self):
        with pytest.raises(EmptyInput):
            descriptive([])

    def test_even_median_is_midpoint(self):
        assert descriptive([1, 2, 10, 20]).median == 6.0


class TestMidranks:
    def test_plain(self):
        assert midranks([30, 10, 20]) == [3.0, 1.0, 2.0]

    def test_ties_share_average(self):
        assert midranks([1, 2, 2, 4]) == [1.0, 2.5, 2.5, 4.0]


class TestFriedman:
    def test_perfectly_ordered_3x3(self):
        r = friedman_test(matrix([[1, 2, 3]] * 3))
        assert r.statistic == pytest.approx(6.0, abs=1e-12)
        assert r.p_value == pytest.approx(0.0498, abs=1e-3)

    def test_identical_columns(self):
        r = friedman_test(matrix([[2, 2, 2]] * 4))
        assert r.statistic == 0.0
        assert r.p_value == 1.0
        assert r.effect_size == 0.0

    def test_degenerate(self):
        with pytest.raises(DegenerateInput):
            friedman_test(matrix([[1, 2]]))

    def test_against_scipy_with_ties(self):
        rng = random.Random(21)
        for _ in range(50):
            n = rng.randint(3, 25)
            k = rng.randint(3, 6)
            rows = [[float(rng.randint(0, 5)) for _ in range(k)] for _ in range(n)]
            if all(len(set(row)) == 1 for row in rows):
                continue
            mine = friedman_test(matrix(rows))
            cols = [[row[j] for row in rows] for j in range(k)]
            ref = sps.friedmanchisquare(*cols)
            assert mine.statistic == pytest.approx(ref.statistic, abs=1e-9)
            assert mine.p_value == pytest.approx(ref.pvalue, abs=1e-9)

    def test_rank_transform_invariance(self):
        rng = random.Random(22)
        rows = [[rng.uniform(0, 4) for _ in range(4)] for _ in range(10)]
        a = friedman_test(matrix(rows))
        b = friedman_test(matrix([[math.exp(v) for v in row] for row in rows]))
        assert a.statistic == pytest.approx(b.statistic, abs=1e-9)

    def test_row_permutation_invariance(self):
        rng = random.Random(23)
        rows = [[rng.uniform(0, 4) for _ in range(4)] for _ in range(8)]
        a = friedman_test(matrix(rows))
        shuffled = rows[::-1]
        b = friedman_test(matrix(shuffled))
        assert a.statistic == pytest.approx(b.statistic, abs=1e-12)


class TestNemenyi:
    def test_identical_columns_p_one(self):
        res = nemenyi_posthoc(matrix([[1, 1, 1]] * 5))
        for pc in res.pairs:
            assert pc.report.p_value >= 0.999

    def test_extreme_pair_matches_oracle(self):
        m = matrix([[1, 2, 3]] * 3)
        res = nemenyi_posthoc(m)
        k, n = 3, 3
        scale = math.sqrt(k * (k + 1) / (12.0 * n))
        q = (3.0 - 1.0) / scale
        ref_p = sps.studentized_range.sf(q, k, np.inf)
        pc = [p for p in res.pairs if {p.a, p.b} == {"t0", "t2"}][0]
        assert pc.report.statistic == pytest.approx(q, abs=1e-12)
        assert pc.report.p_value == pytest.approx(ref_p, abs=1e-4)

    def test_against_scipy_random(self):
        rng = random.Random(24)
        for _ in range(20):
            n = rng.randint(3, 30)
            k = rng.randint(2, 6)
            rows = [[rng.uniform(0, 10) for _ in range(k)] for _ in range(n)]
            res = nemenyi_posthoc(matrix(rows))
            ranks = np.array([sps.rankdata(r) for r in rows])
            mean_ranks = ranks.mean(axis=0)
            scale = math.sqrt(k * (k + 1) / (12.0 * n))
            for pc in res.pairs:
                i = int(pc.a[1:])
                j = int(pc.b[1:])
                q = abs(mean_ranks[i] - mean_ranks[j]) / scale
                assert pc.report.statistic == pytest.approx(q, abs=1e-9)
                ref = sps.studentized_range.sf(q, k, np.inf)
                assert pc.report.p_value == pytest.approx(float(ref), abs=1e-4)

    def test_five_rule_fixture_orders_like_expected(self):
        # Construct n=410-style data where two pairs differ hugely and two
        # don't; checks significance pattern, not exact numbers.
        rng = random.Random(25)
        rows = []
        for _ in range(410):
            fam = rng.uniform(0, 1)
            deg = fam + rng.uniform(-0.05, 0.05)
            bfs = fam + 1.0 + rng.uniform(-0.2, 0.2)
            dfs = fam + 3.0 + rng.uniform(-0.5, 0.5)
            rec = dfs + rng.uniform(-0.05, 0.05)
            rows.append([bfs, deg, dfs, fam, rec])
        m = PairedMatrix(
            tuple(f"p{i}" for i in range(410)),
            ("bfs", "degree", "dfs", "familiarity", "recency"),
            tuple(tuple(r) for r in rows),
        )
        res = nemenyi_posthoc(m)
        by_pair = {frozenset((p.a, p.b)): p.report for p in res.pairs}
        assert by_pair[frozenset(("bfs", "degree"))].p_value < 0.05
        assert by_pair[frozenset(("degree", "familiarity"))].p_value > 0.05


class TestKruskalWallis:
    def test_hand_example(self):
        r = kruskal_wallis([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert r.statistic == pytest.approx(7.2, abs=1e-12)
        assert r.p_value == pytest.approx(math.exp(-3.6), abs=1e-12)

    def test_identical_groups(self):
        r = kruskal_wallis([[5, 5], [5, 5], [5, 5]])
        assert r.statistic == 0.0
        assert r.p_value == 1.0

    def test_against_scipy_with_ties(self):
        rng = random.Random(31)
        for _ in range(50):
            groups = [
                [float(rng.randint(0, 6)) for _ in range(rng.randint(2, 15))]
                for _ in range(rng.randint(2, 5))
            ]
            pooled = {v for g in groups for v in g}
            if len(pooled) == 1:
                continue
            mine = kruskal_wallis(groups)
            ref = sps.kruskal(*groups)
            assert mine.statistic == pytest.approx(ref.statistic, abs=1e-9)
            assert mine.p_value == pytest.approx(ref.pvalue, abs=1e-9)

    def test_monotone_transform_invariance(self):
        groups = [[1.0, 2.0, 5.0], [3.0, 4.0], [0.5, 6.0, 7.0]]
        a = kruskal_wallis(groups)
        b = kruskal_wallis([[math.exp(v) for v in g] for g in groups])
        assert a.statistic == pytest.approx(b.statistic, abs=1e-9)

    def test_degenerate(self):
        with pytest.raises(DegenerateInput):
            kruskal_wallis([[1.0]])


class TestVarianceHomogeneity:
    def test_all_constant_groups(self):
        r = variance_homogeneity([[3, 3, 3], [5, 5, 5]])
        assert r.statistic == 0.0
        assert r.p_value == 1.0

    def test_doubled_spread_matches_scipy(self):
        rng = random.Random(41)
        for _ in range(30):
            g1 = [rng.gauss(0, 1) for _ in range(rng.randint(5, 20))]
            g2 = [rng.gauss(0, 2) for _ in range(rng.randint(5, 20))]
            g3 = [rng.gauss(1, 1) for _ in range(rng.randint(5, 20))]
            mine = variance_homogeneity([g1, g2, g3])
            ref = sps.levene(g1, g2, g3, center="median")
            assert mine.statistic == pytest.approx(ref.statistic, abs=1e-6)
            assert mine.p_value == pytest.approx(ref.pvalue, abs=1e-6)

    def test_equal_variance_fixture_not_significant(self):
        rng = random.Random(42)
        groups = [[rng.gauss(0, 1.5) for _ in range(40)] for _ in range(3)]
        assert variance_homogeneity(groups).p_value > 0.05

    def test_degenerate(self):
        with pytest.raises(DegenerateInput):
            variance_homogeneity([[1.0], [2.0, 3.0]])


class TestCohensD:
    def test_equal_means(self):
        assert cohens_d([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]) == 0.0

    def test_one_pooled_std_apart(self):
        a = [0.0, 2.0]
        b = [math.sqrt(2) * 1.0 + 0.0, math.sqrt(2) * 1.0 + 2.0]
        # pooled std = sqrt(2); means differ by sqrt(2)
        assert cohens_d(b, a) == pytest.approx(1.0, abs=1e-12)

    def test_antisymmetry(self):
        rng = random.Random(51)
        a = [rng.uniform(0, 5) for _ in range(10)]
        b = [rng.uniform(0, 5) for _ in range(12)]
        assert cohens_d(a, b) == pytest.approx(-cohens_d(b, a), abs=1e-15)

    def test_hand_computation(self):
        a = [1.0, 2.0, 3.0]
        b = [2.0, 4.0]
        pooled = math.sqrt(((2) * 1.0 + (1) * 2.0) / 3)
        assert cohens_d(a, b) == pytest.approx((2.0 - 3.0) / pooled, abs=1e-12)

    def test_zero_variance(self):
        with pytest.raises(ZeroVariance):
            cohens_d([1.0, 1.0], [1.0, 1.0])


class TestLinearFit:
    def test_exact_line(self):
        fit = linear_fit([0, 1, 2, 3], [1, 3, 5, 7])
        assert fit.slope == pytest.approx(2.0, abs=1e-12)
        assert fit.intercept == pytest.approx(1.0, abs=1e-12)
        assert fit.r_squared == 1.0

    def test_constant_y(self):
        fit = linear_fit([0, 1, 2], [4, 4, 4])
        assert fit.slope == 0.0
        assert fit.r_squared == 1.0

    def test_constant_x(self):
        with pytest.raises(ConstantX):
            linear_fit([2, 2, 2], [1, 2, 3])

    def test_against_scipy(self):
        rng = random.Random(61)
        for _ in range(50):
            xs = [rng.uniform(0, 10) for _ in range(rng.randint(3, 30))]
            ys = [2.5 * x + rng.gauss(0, 2) for x in xs]
            mine = linear_fit(xs, ys)
            ref = sps.linregress(xs, ys)
            assert mine.slope == pytest.approx(ref.slope, abs=1e-9)
            assert mine.intercept == pytest.approx(ref.intercept, abs=1e-9)
            assert mine.r_squared == pytest.approx(ref.rvalue**2, abs=1e-9)

    def test_r2_invariant_under_affine_y(self):
        xs = [0.0, 1.0, 2.0, 3.0, 5.0]
        ys = [1.0, 2.2, 2.8, 4.5, 5.0]
        a = linear_fit(xs, ys).r_squared
        b = linear_fit(xs, [3.0 * y - 7.0 for y in ys]).r_squared
        assert a == pytest.approx(b, abs=1e-12)
