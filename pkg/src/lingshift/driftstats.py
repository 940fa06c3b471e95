"""Grouped metric series, pre-window trend fit and residual shift tests."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import kolmogorov

from .errors import InsufficientDataError, InvalidConfigError, InvalidMetricError, UndefinedEffectError, UndefinedRateError

GROUP_KEYS = ("discipline", "language_group", "country")


@dataclass
class MetricSeries:
    metric_name: str
    group_key: tuple[tuple[str, str], ...] = ()
    values: dict[int, list[float]] = field(default_factory=dict)
    excluded: int = 0

    def periods(self) -> list[int]:
        return sorted(p for p, v in self.values.items() if v)

    def count(self) -> int:
        return sum(len(v) for v in self.values.values())

    def in_window(self, window: tuple[int, int]) -> dict[int, list[float]]:
        lo, hi = window
        return {p: v for p, v in self.values.items() if lo <= p <= hi and v}


def _value(raw) -> float | None:
    if raw is None or raw == "":
        return None
    x = float(raw)
    return x if math.isfinite(x) else None


def build_series(
    profiles: Iterable[Mapping],
    metric_name: str,
    grouping: Mapping[str, str] | None = None,
    known_metrics: Sequence[str] | None = None,
) -> MetricSeries:
    """Bucket one metric by period for the rows matching ``grouping``.

    Rows need a ``period`` entry; missing or non-finite values are tallied in ``excluded``.
    """
    if known_metrics is not None and metric_name not in known_metrics:
        raise InvalidMetricError(f"unknown metric {metric_name!r}")
    grouping = dict(grouping or {})
    series = MetricSeries(metric_name, tuple(sorted(grouping.items())))
    buckets: dict[int, list[float]] = defaultdict(list)
    for row in profiles:
        if any(str(row.get(k, "")) != v for k, v in grouping.items()):
            continue
        if metric_name not in row:
            raise InvalidMetricError(f"row has no metric {metric_name!r}")
        v = _value(row[metric_name])
        if v is None:
            series.excluded += 1
            continue
        buckets[int(row["period"])].append(v)
    series.values = dict(sorted(buckets.items()))
    return series


def group_values(profiles: Sequence[Mapping], keys: Sequence[str]) -> list[dict[str, str]]:
    """Distinct groupings present in the rows, in sorted order."""
    for k in keys:
        if k not in GROUP_KEYS:
            raise InvalidConfigError(f"unknown grouping key {k!r}")
    seen = {tuple(str(r.get(k, "")) for k in keys) for r in profiles}
    return [dict(zip(keys, combo)) for combo in sorted(seen)]


@dataclass(frozen=True)
class TrendFit:
    slope: float
    intercept: float
    r_squared: float
    fit_window: tuple[int, int]
    n_periods: int

    def predict(self, period: float) -> float:
        return self.intercept + self.slope * period


def fit_trend(series: MetricSeries, fit_window: tuple[int, int]) -> TrendFit:
    """Ordinary least squares of period means on period ordinal."""
    data = series.in_window(fit_window)
    if len(data) < 3:
        raise InsufficientDataError(f"{len(data)} periods with data in the fit window, need 3")
    x = np.array(sorted(data), dtype=float)
    y = np.array([np.mean(data[int(p)]) for p in x])
    xm, ym = x.mean(), y.mean()
    sxx = float(((x - xm) ** 2).sum())
    slope = float(((x - xm) * (y - ym)).sum() / sxx)
    intercept = float(ym - slope * xm)
    resid = y - (intercept + slope * x)
    ss_tot = float(((y - ym) ** 2).sum())
    ss_res = float((resid ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - ss_res / ss_tot)
    return TrendFit(slope, intercept, r2, tuple(fit_window), len(x))


def ks_two_sample(a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    """Two-sample KS statistic and asymptotic p-value."""
    x = np.sort(np.asarray(a, dtype=float))
    y = np.sort(np.asarray(b, dtype=float))
    if x.size == 0 or y.size == 0:
        raise InsufficientDataError("KS test needs two non-empty samples")
    merged = np.concatenate([x, y])
    cdf_x = np.searchsorted(x, merged, side="right") / x.size
    cdf_y = np.searchsorted(y, merged, side="right") / y.size
    d = float(np.max(np.abs(cdf_x - cdf_y)))
    en = x.size * y.size / (x.size + y.size)
    p = float(kolmogorov(math.sqrt(en) * d))
    return d, min(1.0, max(0.0, p))


def cohens_d(a: Sequence[float], b: Sequence[float]) -> float:
    """(mean_b - mean_a) over the pooled standard deviation."""
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.size < 2 or y.size < 2:
        raise InsufficientDataError("Cohen's d needs at least 2 values per sample")
    pooled = ((x.size - 1) * x.var(ddof=1) + (y.size - 1) * y.var(ddof=1)) / (x.size + y.size - 2)
    if pooled <= 0:
        raise UndefinedEffectError("pooled standard deviation is zero")
    return float((y.mean() - x.mean()) / math.sqrt(pooled))


@dataclass(frozen=True)
class ShiftTestResult:
    metric_name: str
    group_key: tuple[tuple[str, str], ...]
    predicted_mean: float
    observed_mean: float
    ks_stat: float
    p_value: float
    cohens_d: float | None
    n_pre: int
    n_post: int
    r_squared: float
    slope: float


def _residuals(data: Mapping[int, list[float]], fit: TrendFit, mode: str) -> list[float]:
    out: list[float] = []
    for p, vals in sorted(data.items()):
        pred = fit.predict(p)
        if mode == "document":
            out.extend(v - pred for v in vals)
        else:
            out.append(float(np.mean(vals)) - pred)
    return out


def shift_test(series: MetricSeries, fit: TrendFit, post_window: tuple[int, int], mode: str = "document") -> ShiftTestResult:
    """Compare pre-window and post-window residuals around the fitted trend.

    ``mode="document"`` pools one residual per document; ``"period_mean"`` one per period.
    """
    if mode not in ("document", "period_mean"):
        raise InvalidConfigError(f"unknown residual mode {mode!r}")
    lo, hi = fit.fit_window
    if not (post_window[1] < lo or post_window[0] > hi):
        raise InvalidConfigError("post window overlaps the fit window")
    pre = series.in_window(fit.fit_window)
    post = series.in_window(post_window)
    if not pre or not post:
        raise InsufficientDataError("empty residual pool", n_pre=len(pre), n_post=len(post))
    pre_res = _residuals(pre, fit, mode)
    post_res = _residuals(post, fit, mode)
    d_stat, p = ks_two_sample(pre_res, post_res)
    try:
        d = cohens_d(pre_res, post_res)
    except (UndefinedEffectError, InsufficientDataError):
        d = None
    post_values = [v for vals in post.values() for v in vals]
    return ShiftTestResult(
        metric_name=series.metric_name,
        group_key=series.group_key,
        predicted_mean=float(np.mean([fit.predict(p) for p in post])),
        observed_mean=float(np.mean(post_values)),
        ks_stat=d_stat,
        p_value=p,
        cohens_d=d,
        n_pre=len(pre_res),
        n_post=len(post_res),
        r_squared=fit.r_squared,
        slope=fit.slope,
    )


def year_periods(year: int, window_start_year: int) -> range:
    first = (year - window_start_year) * 4
    return range(first, first + 4)


def change_rate(series: MetricSeries, year_a: int, year_b: int, window_start_year: int) -> float:
    """Signed percent change of the document-weighted annual mean from year_a to year_b."""
    def annual_mean(year: int) -> float:
        vals = [v for p in year_periods(year, window_start_year) for v in series.values.get(p, ())]
        if not vals:
            raise InsufficientDataError(f"no values for {year}")
        return float(np.mean(vals))

    mean_a, mean_b = annual_mean(year_a), annual_mean(year_b)
    if mean_a == 0:
        raise UndefinedRateError(f"baseline mean for {year_a} is zero")
    return 100.0 * (mean_b - mean_a) / abs(mean_a)
