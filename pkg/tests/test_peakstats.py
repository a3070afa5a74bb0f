"""Worst-case count machinery against independent oracles.

Binomial tail quantiles are cross-checked with scipy's survival function
(a betainc-based path, independent of the log-space summation under test);
convolution quantiles against a plain one-step-at-a-time convolution with
an explicit tail scan.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import binom as scipy_binom

from netenergy.peakstats import (
    CONVOLUTION_CAP,
    ConfidenceLevel,
    ConvolutionCapacityError,
    HouseholdDistribution,
    ParameterDomainError,
    QuantileApprox,
    QuantileFitError,
    binomial_quantile,
    convolution_quantile,
    default_household_distribution,
    eval_quantile_approx,
    fit_quantile_approx,
)

EPS = 1e-9


# ---------------------------------------------------------------------------
# oracles


def oracle_binomial_quantile(n: int, p: float, eps: float) -> int:
    """Smallest q with P(X > q) < eps, read off scipy's survival function."""
    qs = np.arange(n + 1)
    sf = scipy_binom.sf(qs, n, p)
    hits = np.nonzero(sf < eps)[0]
    return int(hits[0]) if hits.size else n


def oracle_convolution_quantile(dist: HouseholdDistribution, n: int, eps: float) -> int:
    """Brute-force percentile from the explicitly enumerated pmf vector."""
    pmf = [0.0] * (dist.max_size + 1)
    for k, v in dist.probabilities.items():
        pmf[k] = v
    total = pmf[:]
    for _ in range(n - 1):
        out = [0.0] * (len(total) + len(pmf) - 1)
        for i, a in enumerate(total):
            if a == 0.0:
                continue
            for j, b in enumerate(pmf):
                out[i + j] += a * b
        total = out
    for q in range(len(total) + 1):
        if sum(total[q + 1 :]) < eps:
            return q
    return len(total) - 1


# ---------------------------------------------------------------------------
# household distribution


def test_default_distribution_mean(dist):
    assert dist.mean == pytest.approx(2.179, abs=1e-12)


def test_distribution_validation():
    with pytest.raises(ParameterDomainError):
        HouseholdDistribution({1: 0.5, 2: 0.6})  # sums to 1.1
    with pytest.raises(ParameterDomainError):
        HouseholdDistribution({0: 0.5, 1: 0.5})  # support below 1
    with pytest.raises(ParameterDomainError):
        HouseholdDistribution({1: 1.5, 2: -0.5})  # negative mass
    with pytest.raises(ParameterDomainError):
        HouseholdDistribution({})


def test_confidence_level_domain():
    ConfidenceLevel(0.5)
    for bad in (0.0, 1.0, -1e-9, 2.0):
        with pytest.raises(ParameterDomainError):
            ConfidenceLevel(bad)


# ---------------------------------------------------------------------------
# binomial quantile


def test_binomial_matches_published_example():
    q = binomial_quantile(64, 0.03, EPS)
    assert q in (13, 14, 15)
    assert 0.20 <= q / 64 <= 0.24


def test_binomial_zero_probability():
    assert binomial_quantile(500, 0.0, EPS) == 0
    assert binomial_quantile(0, 0.7, EPS) == 0


def test_binomial_hand_enumerated_case():
    # P(X > 1) = 0.25 >= 0.2 and P(X > 2) = 0 for X ~ Binomial(2, 0.5)
    assert binomial_quantile(2, 0.5, 0.2) == 2


def test_binomial_large_pool_tracks_mean():
    q = binomial_quantile(10**6, 0.02, EPS)
    assert 20000 <= q <= 21000


def test_binomial_certainty():
    assert binomial_quantile(37, 1.0, EPS) == 37


def test_binomial_domain_errors():
    with pytest.raises(ParameterDomainError):
        binomial_quantile(-1, 0.5, EPS)
    with pytest.raises(ParameterDomainError):
        binomial_quantile(10, 1.5, EPS)
    with pytest.raises(ParameterDomainError):
        binomial_quantile(10, 0.5, 0.0)
    with pytest.raises(ParameterDomainError):
        binomial_quantile(10, 0.5, 1.0)


def test_exact_and_normal_branches_agree_at_the_limit():
    # The quantile sits within a fraction of a percent of the mean at the
    # switch-over pool size, so the normal tail's count error is noise there.
    n = 100_000
    exact = binomial_quantile(n, 0.02, EPS)
    from netenergy.peakstats import _normal_tail_quantile

    assert abs(exact - _normal_tail_quantile(n, 0.02, EPS)) / exact <= 0.005


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=0, max_value=400),
    p=st.floats(min_value=0.0, max_value=1.0),
    eps=st.floats(min_value=1e-12, max_value=0.99),
)
def test_binomial_satisfies_quantile_certificate(n, p, eps):
    # Feasibility and minimality of the returned count, judged by scipy's
    # independent survival function. Exact ties P(X > q) == eps exist (for
    # instance the symmetric median), where cross-library rounding decides
    # the strict comparison either way; the guard is that one-ulp slack.
    q = binomial_quantile(n, p, eps)
    guard = 1e-10 * eps
    floor_np = math.floor(n * p)
    assert floor_np <= q <= n
    assert scipy_binom.sf(q, n, p) < eps + guard
    if q > floor_np:
        assert scipy_binom.sf(q - 1, n, p) >= eps - guard


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=0, max_value=400),
    p=st.sampled_from([0.0, 0.015, 0.02, 0.03, 0.2, 0.37, 0.9, 1.0]),
)
def test_binomial_matches_oracle_off_the_ties(n, p):
    # Away from razor-edge tail masses the tie-break never engages and the
    # oracle count must match exactly.
    eps = 1e-9
    assert binomial_quantile(n, p, eps) == max(
        oracle_binomial_quantile(n, p, eps), math.floor(n * p)
    )


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=300),
    extra=st.integers(min_value=0, max_value=200),
    p=st.floats(min_value=0.001, max_value=0.999),
)
def test_binomial_monotone_in_n(n, extra, p):
    assert binomial_quantile(n, p, EPS) <= binomial_quantile(n + extra, p, EPS)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=300),
    p1=st.floats(min_value=0.001, max_value=0.999),
    p2=st.floats(min_value=0.001, max_value=0.999),
)
def test_binomial_monotone_in_p(n, p1, p2):
    lo, hi = sorted((p1, p2))
    assert binomial_quantile(n, lo, EPS) <= binomial_quantile(n, hi, EPS)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=300),
    p=st.floats(min_value=0.001, max_value=0.999),
    e1=st.floats(min_value=1e-10, max_value=0.5),
    e2=st.floats(min_value=1e-10, max_value=0.5),
)
def test_binomial_antitone_in_eps(n, p, e1, e2):
    lo, hi = sorted((e1, e2))
    assert binomial_quantile(n, p, lo) >= binomial_quantile(n, p, hi)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=0, max_value=500),
    p=st.floats(min_value=0.0, max_value=1.0),
)
def test_binomial_super_mean(n, p):
    assert binomial_quantile(n, p, EPS) >= math.floor(n * p)


def test_binomial_asymptotic_ratio():
    for p in (0.01, 0.02, 0.2):
        n = 10**7
        assert binomial_quantile(n, p, EPS) / n <= p * 1.05


# ---------------------------------------------------------------------------
# convolution quantile


def test_convolution_single_home_worst_case(dist):
    assert convolution_quantile(dist, 1, EPS) == 6


def test_convolution_point_mass():
    two = HouseholdDistribution({2: 1.0})
    assert convolution_quantile(two, 10, EPS) == 20
    assert convolution_quantile(two, 10, 0.3) == 20


def test_convolution_two_homes(dist):
    # P(sum = 12) = 0.016**2, still far above the neglect threshold
    assert convolution_quantile(dist, 2, EPS) == 12


def test_convolution_capacity_error(dist):
    with pytest.raises(ConvolutionCapacityError) as err:
        convolution_quantile(dist, CONVOLUTION_CAP + 1, EPS)
    assert err.value.n == CONVOLUTION_CAP + 1


def test_convolution_domain(dist):
    with pytest.raises(ParameterDomainError):
        convolution_quantile(dist, 0, EPS)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(min_value=1, max_value=64), exp=st.integers(min_value=2, max_value=9))
def test_convolution_against_bruteforce(dist, n, exp):
    eps = 10.0**-exp
    assert convolution_quantile(dist, n, eps) == oracle_convolution_quantile(dist, n, eps)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(min_value=1, max_value=200), extra=st.integers(min_value=0, max_value=100))
def test_convolution_monotone_and_super_mean(dist, n, extra):
    q1 = convolution_quantile(dist, n, EPS)
    q2 = convolution_quantile(dist, n + extra, EPS)
    assert q1 <= q2
    assert q1 >= math.floor(n * dist.mean)


# ---------------------------------------------------------------------------
# fitted approximation


def test_fit_linear_target():
    fit = fit_quantile_approx(lambda n: 2.0 * n, mean=2.0)
    for n in (16, 128, 1024):
        assert fit.eval(n) == pytest.approx(2.0 * n, rel=1e-9)


def test_fit_reproduces_anchors_and_midpoints(dist):
    exact = lambda n: convolution_quantile(dist, n, EPS)
    fit = fit_quantile_approx(exact, mean=dist.mean)
    for n in (16, 128, 1024):
        assert fit.eval(n) == pytest.approx(exact(n), rel=1e-6)
    for n in (32, 256):
        assert fit.eval(n) == pytest.approx(exact(n), rel=0.03)


def test_fit_composed_quantile_accuracy(dist):
    exact = lambda n: binomial_quantile(convolution_quantile(dist, n, EPS), 0.2, EPS)
    fit = fit_quantile_approx(exact, mean=0.2 * dist.mean)
    for n in (16, 32, 128, 256, 512, 1024):
        assert fit.eval(n) == pytest.approx(exact(n), rel=0.03)


def test_fit_zero_target():
    fit = fit_quantile_approx(lambda n: 0.0, mean=0.0)
    assert fit.eval(500) == 0.0


def test_fit_rejects_bad_anchors():
    with pytest.raises(ParameterDomainError):
        fit_quantile_approx(lambda n: n, anchors=(16, 16, 1024))
    with pytest.raises(ParameterDomainError):
        fit_quantile_approx(lambda n: n, anchors=(16, 128))


def test_fit_failure_carries_anchor_values():
    # No max(a n + b n**c) curve with c in (0, 2) can dip this sharply.
    values = {16: 100.0, 128: 1.0, 1024: 5000.0}
    with pytest.raises(QuantileFitError) as err:
        fit_quantile_approx(lambda n: values[n])
    assert err.value.values == (100.0, 1.0, 5000.0)


def test_eval_quantile_approx_branches():
    assert eval_quantile_approx(QuantileApprox(1.0, 0.0, 0.7, 0.5), 10) == 10.0
    assert eval_quantile_approx(QuantileApprox(0.0, 0.0, 1.0, 2.0), 7) == 14.0
    with pytest.raises(ParameterDomainError):
        QuantileApprox(1.0, 0.0, 1.0, 0.0).eval(0.5)


def test_fitted_default_distribution_at_top_anchor(dist):
    exact = convolution_quantile(dist, 1024, EPS)
    fit = fit_quantile_approx(lambda n: convolution_quantile(dist, n, EPS), mean=dist.mean)
    assert fit.eval(1024) == pytest.approx(exact, rel=1e-6)
