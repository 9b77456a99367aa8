"""Embedded tail-probability routines against scipy."""
from __future__ import annotations

import random

import numpy as np
import pytest
from scipy import stats as sps

from knowsearch.distributions import (
    beta_inc,
    chi2_sf,
    f_sf,
    gamma_p,
    normal_cdf,
    studentized_range_sf,
)


def test_chi2_known_points():
    assert chi2_sf(6.0, 2) == pytest.approx(np.exp(-3.0), abs=1e-12)
    assert chi2_sf(0.0, 5) == 1.0


def test_chi2_against_scipy():
    rng = random.Random(1)
    for _ in range(200):
        x = rng.uniform(0, 80)
        df = rng.uniform(0.5, 60)
        assert chi2_sf(x, df) == pytest.approx(sps.chi2.sf(x, df), abs=1e-10)


def test_f_against_scipy():
    rng = random.Random(2)
    for _ in range(200):
        x = rng.uniform(0, 30)
        d1 = rng.uniform(1, 40)
        d2 = rng.uniform(1, 300)
        assert f_sf(x, d1, d2) == pytest.approx(sps.f.sf(x, d1, d2), abs=1e-10)


def test_studentized_range_against_scipy():
    rng = random.Random(3)
    for _ in range(40):
        q = rng.uniform(0.01, 9)
        k = rng.randint(2, 12)
        ref = sps.studentized_range.sf(q, k, np.inf)
        assert studentized_range_sf(q, k) == pytest.approx(ref, abs=1e-6)


def test_studentized_range_edges():
    assert studentized_range_sf(0.0, 5) == 1.0
    assert studentized_range_sf(50.0, 5) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        studentized_range_sf(1.0, 1)


def test_gamma_beta_primitives():
    rng = random.Random(4)
    for _ in range(100):
        a = rng.uniform(0.2, 30)
        x = rng.uniform(0, 60)
        assert gamma_p(a, x) == pytest.approx(sps.gamma.cdf(x, a), abs=1e-10)
        b = rng.uniform(0.2, 30)
        t = rng.random()
        assert beta_inc(a, b, t) == pytest.approx(sps.beta.cdf(t, a, b), abs=1e-10)


def test_normal_cdf():
    for x in (-3.0, -1.0, 0.0, 0.5, 2.5):
        assert normal_cdf(x) == pytest.approx(sps.norm.cdf(x), abs=1e-14)
