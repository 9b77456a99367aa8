"""Tail probabilities for the tests in the stats module.

Chi-square and F tails come from the regularized incomplete gamma and
beta functions (series/continued-fraction forms, good to ~1e-12).  The
studentized range tail (infinite degrees of freedom) is evaluated by
Gauss-Legendre quadrature of its defining integral, accurate to well
under 1e-4 over the ranges the Nemenyi test needs.
"""
from __future__ import annotations

import math

import numpy as np

_EPS = 1e-15
_FPMIN = 1e-300
_MAX_ITER = 500


def _gamma_p_series(a: float, x: float) -> float:
    """Lower regularized incomplete gamma via its series expansion."""
    term = 1.0 / a
    total = term
    n = a
    for _ in range(_MAX_ITER):
        n += 1.0
        term *= x / n
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_contfrac(a: float, x: float) -> float:
    """Upper regularized incomplete gamma via Lentz's continued fraction."""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def gamma_p(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x)."""
    if x < 0 or a <= 0:
        raise ValueError("gamma_p requires x >= 0 and a > 0")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_p_series(a, x)
    return 1.0 - _gamma_q_contfrac(a, x)


def chi2_sf(x: float, df: float) -> float:
    """Survival function of the chi-square distribution."""
    if x <= 0.0:
        return 1.0
    if x < df / 2.0 + 1.0:
        return 1.0 - _gamma_p_series(df / 2.0, x / 2.0)
    return _gamma_q_contfrac(df / 2.0, x / 2.0)


def _betacf(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h


def beta_inc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("beta_inc requires x in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def f_sf(x: float, df1: float, df2: float) -> float:
    """Survival function of the F distribution."""
    if x <= 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    return beta_inc(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * x))


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(256)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def studentized_range_sf(q: float, k: int) -> float:
    """Upper tail of the studentized range of k groups, infinite df.

    cdf(q) = k * integral phi(u) * (Phi(u) - Phi(u - q))^(k-1) du
    The integrand is bounded by phi(u), so [-9, 9] loses < 1e-17 mass.
    """
    if k < 2:
        raise ValueError("studentized range needs k >= 2")
    if q <= 0.0:
        return 1.0
    lo, hi = -9.0, 9.0
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    total = 0.0
    for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
        u = half * node + mid
        phi = math.exp(-0.5 * u * u) / _SQRT_2PI
        inner = normal_cdf(u) - normal_cdf(u - q)
        if inner <= 0.0:
            continue
        total += weight * phi * inner ** (k - 1)
    cdf = k * half * total
    return min(1.0, max(0.0, 1.0 - cdf))
