import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lingshift.driftstats import (
    MetricSeries,
    build_series,
    change_rate,
    cohens_d,
    fit_trend,
    ks_two_sample,
    shift_test,
)
from lingshift.errors import (
    InsufficientDataError,
    InvalidConfigError,
    InvalidMetricError,
    UndefinedEffectError,
    UndefinedRateError,
)


def ecdf_sweep(a, b):
    """O(n^2) KS statistic: evaluate both ECDFs at every observed point."""
    best = 0.0
    for t in list(a) + list(b):
        fa = sum(1 for x in a if x <= t) / len(a)
        fb = sum(1 for x in b if x <= t) / len(b)
        best = max(best, abs(fa - fb))
    return best


def direct_d(a, b):
    ma, mb = sum(a) / len(a), sum(b) / len(b)
    va = sum((x - ma) ** 2 for x in a) / (len(a) - 1)
    vb = sum((x - mb) ** 2 for x in b) / (len(b) - 1)
    pooled = ((len(a) - 1) * va + (len(b) - 1) * vb) / (len(a) + len(b) - 2)
    return (mb - ma) / math.sqrt(pooled)


def series_from(values_by_period, name="m"):
    return MetricSeries(name, (), {p: list(v) for p, v in values_by_period.items()})


# -- build_series ---------------------------------------------------------

def test_one_bucket_of_three():
    rows = [{"period": 2, "m": x} for x in (1.0, 2.0, 3.0)]
    s = build_series(rows, "m")
    assert s.values == {2: [1.0, 2.0, 3.0]}


def test_missing_value_excluded():
    rows = [{"period": 0, "m": 1.0}, {"period": 0, "m": None}, {"period": 1, "m": ""}]
    s = build_series(rows, "m")
    assert s.excluded == 2 and s.count() == 1


def test_unknown_metric():
    with pytest.raises(InvalidMetricError):
        build_series([{"period": 0, "m": 1}], "nope", known_metrics=["m"])


def test_grouped_series_partition_counts():
    rng = random.Random(3)
    rows = [{"period": rng.randrange(8), "discipline": rng.choice(["A", "B", "C"]), "m": rng.random()} for _ in range(300)]
    total = build_series(rows, "m")
    parts = [build_series(rows, "m", {"discipline": d}) for d in "ABC"]
    for p in total.values:
        assert len(total.values[p]) == sum(len(s.values.get(p, [])) for s in parts)


# -- fit_trend ------------------------------------------------------------

def test_perfect_line():
    fit = fit_trend(series_from({p: [2.0 + 0.5 * p] for p in range(10)}), (0, 9))
    assert fit.r_squared == 1.0
    assert fit.slope == pytest.approx(0.5, abs=1e-12)
    assert fit.intercept == pytest.approx(2.0, abs=1e-12)


def test_constant_means():
    fit = fit_trend(series_from({p: [4.0, 4.0] for p in range(6)}), (0, 5))
    assert fit.slope == 0 and fit.intercept == pytest.approx(4.0)


def test_too_few_periods():
    with pytest.raises(InsufficientDataError):
        fit_trend(series_from({0: [1.0], 1: [2.0]}), (0, 5))


def test_normal_equations_oracle():
    rng = np.random.default_rng(11)
    data = {p: list(1.0 + 0.1 * p + rng.normal(0, 1, 30)) for p in range(36)}
    fit = fit_trend(series_from(data), (0, 35))
    x = np.array(sorted(data), dtype=float)
    y = np.array([np.mean(data[int(p)]) for p in x])
    X = np.column_stack([np.ones_like(x), x])
    beta = np.linalg.solve(X.T @ X, X.T @ y)
    assert fit.intercept == pytest.approx(beta[0], abs=1e-9)
    assert fit.slope == pytest.approx(beta[1], abs=1e-9)


# -- KS and Cohen's d ----------------------------------------------------

def test_identical_samples():
    d, p = ks_two_sample([1, 2, 3, 4], [1, 2, 3, 4])
    assert d == 0 and p == pytest.approx(1.0)


def test_disjoint_supports():
    assert ks_two_sample([1, 2, 3], [10, 11, 12])[0] == 1.0


def test_ks_empty():
    with pytest.raises(InsufficientDataError):
        ks_two_sample([], [1.0])


def test_ks_fifty_points_oracle():
    rng = random.Random(5)
    a = [rng.gauss(0, 1) for _ in range(50)]
    b = [rng.gauss(0.3, 1) for _ in range(50)]
    assert ks_two_sample(a, b)[0] == pytest.approx(ecdf_sweep(a, b), abs=1e-12)


def test_ks_with_ties_oracle():
    a = [1, 1, 2, 2, 2, 3]
    b = [2, 2, 3, 3, 4]
    assert ks_two_sample(a, b)[0] == pytest.approx(ecdf_sweep(a, b), abs=1e-12)


def kolmogorov_series(lam, terms=200):
    return 2 * sum((-1) ** (k - 1) * math.exp(-2 * k * k * lam * lam) for k in range(1, terms))


def test_ks_pvalue_is_limiting_kolmogorov():
    rng = np.random.default_rng(2)
    a, b = rng.normal(size=300), rng.normal(0.2, 1, size=200)
    d, p = ks_two_sample(a, b)
    lam = math.sqrt(300 * 200 / 500) * d
    assert p == pytest.approx(kolmogorov_series(lam), abs=1e-12)


def test_equal_means_zero_d():
    assert cohens_d([1, 2, 3], [3, 2, 1]) == 0


def test_one_sd_shift():
    rng = np.random.default_rng(0)
    a = rng.normal(0, 1, 20000)
    assert cohens_d(a, a + a.std(ddof=1)) == pytest.approx(1.0, abs=1e-9)


def test_zero_pooled_sd():
    with pytest.raises(UndefinedEffectError):
        cohens_d([1, 1, 1], [1, 1])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-100, 100), min_size=2, max_size=40), st.lists(st.floats(-100, 100), min_size=2, max_size=40))
def test_d_matches_direct_formula(a, b):
    try:
        expected = direct_d(a, b)
    except ZeroDivisionError:
        with pytest.raises(UndefinedEffectError):
            cohens_d(a, b)
        return
    assert cohens_d(a, b) == pytest.approx(expected, rel=1e-9, abs=1e-9)


# -- shift_test -----------------------------------------------------------

def simulated(rng, shift=0.0, slope=0.05, per_period=200):
    data = {}
    for p in range(40):
        noise = rng.normal(0, 1, per_period)
        data[p] = list(10 + slope * p + noise + (shift if p >= 36 else 0.0))
    return series_from(data)


def test_five_sd_shift_detected():
    s = simulated(np.random.default_rng(7), shift=5.0)
    r = shift_test(s, fit_trend(s, (0, 35)), (36, 39))
    assert r.p_value < 0.001
    assert r.cohens_d == pytest.approx(5, abs=0.3)


def test_null_mostly_not_rejected():
    rng = np.random.default_rng(123)
    kept = 0
    for _ in range(100):
        s = simulated(rng, per_period=50)
        kept += shift_test(s, fit_trend(s, (0, 35)), (36, 39)).p_value > 0.05
    assert kept >= 90


def test_overlapping_windows_rejected():
    s = simulated(np.random.default_rng(1), per_period=5)
    with pytest.raises(InvalidConfigError):
        shift_test(s, fit_trend(s, (0, 35)), (30, 39))


def test_no_post_data():
    s = series_from({p: [float(p), p + 1.0] for p in range(36)})
    with pytest.raises(InsufficientDataError):
        shift_test(s, fit_trend(s, (0, 35)), (36, 39))


def test_period_mean_mode_counts_periods():
    s = simulated(np.random.default_rng(4), per_period=10)
    r = shift_test(s, fit_trend(s, (0, 35)), (36, 39), mode="period_mean")
    assert (r.n_pre, r.n_post) == (36, 4)


# -- change_rate ----------------------------------------------------------

def test_identical_years_zero_change():
    s = series_from({p: [3.0] for p in range(8)})
    assert change_rate(s, 2014, 2015, 2014) == 0


def test_change_rate_document_weighted():
    s = series_from({0: [1.0, 1.0, 1.0], 1: [4.0], 4: [3.0]})
    # 2014 mean = (1+1+1+4)/4 = 1.75
    assert change_rate(s, 2014, 2015, 2014) == pytest.approx(100 * (3.0 - 1.75) / 1.75)


def test_zero_baseline():
    s = series_from({0: [0.0], 4: [1.0]})
    with pytest.raises(UndefinedRateError):
        change_rate(s, 2014, 2015, 2014)
