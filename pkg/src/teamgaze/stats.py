"""Inferential statistics: descriptives, one-way ANOVA, effect sizes,
Pearson correlation with its regression line, and F-distribution tail
probabilities.

All variances are sample variances (n-1 denominator) throughout; the
two-group and three-group F statistics only come out right from published
(n, M, SD) summaries under that convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "GroupSummary",
    "AnovaResult",
    "CorrelationResult",
    "summarize",
    "anova_oneway",
    "anova_from_summary",
    "cohens_d",
    "pearson",
    "correlation_from_r",
    "pairwise_comparisons",
    "f_tail_p",
    "regularized_incomplete_beta",
]


@dataclass(frozen=True)
class GroupSummary:
    """Label, size, mean and sample standard deviation of one group."""

    label: str
    n: int
    mean: float
    sd: float

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("insufficient data: group needs n >= 2")
        if self.sd < 0:
            raise ValueError("standard deviation must be non-negative")


@dataclass(frozen=True)
class AnovaResult:
    f: float
    df_between: int
    df_within: int
    p: float
    ss_between: float
    ss_within: float
    eta_squared: float
    omega_squared: float


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    r_squared: float
    n: int
    f_equivalent: float
    p: float
    slope: float
    intercept: float


def summarize(samples: Sequence[float], label: str = "") -> GroupSummary:
    """Mean and sample SD of a sequence; needs at least two values."""
    x = np.asarray(samples, dtype=float)
    if x.size < 2:
        raise ValueError("insufficient data: need n >= 2")
    return GroupSummary(
        label=label, n=int(x.size), mean=float(x.mean()), sd=float(x.std(ddof=1))
    )


def _anova(ns, means, ssws, k: int) -> AnovaResult:
    n_total = int(sum(ns))
    grand_mean = sum(n * m for n, m in zip(ns, means)) / n_total
    ss_between = sum(n * (m - grand_mean) ** 2 for n, m in zip(ns, means))
    ss_within = sum(ssws)
    ss_total = ss_between + ss_within
    if ss_total == 0:
        raise ValueError("degenerate: zero total variance")
    df_between = k - 1
    df_within = n_total - k
    ms_within = ss_within / df_within
    eta_squared = ss_between / ss_total
    if ss_within == 0:
        # Distinct means with no within-group spread: F diverges.
        return AnovaResult(
            f=math.inf,
            df_between=df_between,
            df_within=df_within,
            p=0.0,
            ss_between=ss_between,
            ss_within=0.0,
            eta_squared=1.0,
            omega_squared=1.0,
        )
    f = (ss_between / df_between) / ms_within
    omega_squared = (ss_between - df_between * ms_within) / (ss_total + ms_within)
    return AnovaResult(
        f=f,
        df_between=df_between,
        df_within=df_within,
        p=f_tail_p(f, df_between, df_within),
        ss_between=ss_between,
        ss_within=ss_within,
        eta_squared=eta_squared,
        omega_squared=omega_squared,
    )


def anova_oneway(groups: Sequence[Sequence[float]]) -> AnovaResult:
    """Fixed-effects one-way ANOVA on raw samples."""
    if len(groups) < 2:
        raise ValueError("need at least two groups")
    arrays = [np.asarray(g, dtype=float) for g in groups]
    if any(a.size < 2 for a in arrays):
        raise ValueError("insufficient data: every group needs n >= 2")
    ns = [a.size for a in arrays]
    means = [float(a.mean()) for a in arrays]
    ssws = [float(((a - a.mean()) ** 2).sum()) for a in arrays]
    return _anova(ns, means, ssws, len(arrays))


def anova_from_summary(groups: Sequence[GroupSummary]) -> AnovaResult:
    """One-way ANOVA computed directly from (n, mean, sd) summaries."""
    if len(groups) < 2:
        raise ValueError("need at least two groups")
    ns = [g.n for g in groups]
    means = [g.mean for g in groups]
    ssws = [(g.n - 1) * g.sd**2 for g in groups]
    return _anova(ns, means, ssws, len(groups))


def cohens_d(a: GroupSummary, b: GroupSummary) -> float:
    """Absolute standardized mean difference with pooled sample SD."""
    pooled_var = ((a.n - 1) * a.sd**2 + (b.n - 1) * b.sd**2) / (a.n + b.n - 2)
    if pooled_var == 0:
        if a.mean == b.mean:
            return 0.0
        raise ValueError("degenerate: zero pooled standard deviation")
    return abs(a.mean - b.mean) / math.sqrt(pooled_var)


def pearson(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Product-moment correlation with its least-squares line and F test."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.size != ya.size:
        raise ValueError("x and y must have equal length")
    n = int(xa.size)
    if n < 3:
        raise ValueError("insufficient data: need n >= 3")
    xc = xa - xa.mean()
    yc = ya - ya.mean()
    sxx = float((xc**2).sum())
    syy = float((yc**2).sum())
    if sxx == 0 or syy == 0:
        raise ValueError("degenerate: constant variable")
    sxy = float((xc * yc).sum())
    r = sxy / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    slope = sxy / sxx
    intercept = float(ya.mean()) - slope * float(xa.mean())
    base = correlation_from_r(r, n)
    return CorrelationResult(
        r=r,
        r_squared=r * r,
        n=n,
        f_equivalent=base.f_equivalent,
        p=base.p,
        slope=slope,
        intercept=intercept,
    )


def correlation_from_r(r: float, n: int) -> CorrelationResult:
    """Correlation result from r and n alone, via F = r^2 (n-2)/(1-r^2).

    Used when raw data is unavailable and only the coefficient is known;
    slope and intercept are reported as NaN.
    """
    if not (-1.0 <= r <= 1.0):
        raise ValueError("r must lie in [-1, 1]")
    if n < 3:
        raise ValueError("insufficient data: need n >= 3")
    r_squared = r * r
    if r_squared >= 1.0:
        f_equivalent, p = math.inf, 0.0
    else:
        f_equivalent = r_squared * (n - 2) / (1.0 - r_squared)
        p = f_tail_p(f_equivalent, 1, n - 2)
    return CorrelationResult(
        r=r,
        r_squared=r_squared,
        n=n,
        f_equivalent=f_equivalent,
        p=p,
        slope=math.nan,
        intercept=math.nan,
    )


def pairwise_comparisons(
    groups: Sequence[GroupSummary],
) -> list[dict]:
    """Uncorrected pairwise two-group ANOVAs plus Cohen's d.

    No multiple-comparison correction is applied; output is labeled
    accordingly by the report layer.
    """
    out = []
    for i in range(len(groups)):
        for j in range(i + 1, len(groups)):
            a, b = groups[i], groups[j]
            try:
                result = anova_from_summary([a, b])
            except ValueError:
                # degenerate pair (zero total variance); nothing to compare
                continue
            out.append(
                {
                    "a": a.label,
                    "b": b.label,
                    "f": result.f,
                    "df": (result.df_between, result.df_within),
                    "p": result.p,
                    "cohens_d": cohens_d(a, b),
                    "correction": "uncorrected",
                }
            )
    return out


# --- F-distribution tail via the regularized incomplete beta function ---

_BETA_TOL = 1e-12
_BETA_MAX_ITER = 500
_TINY = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta, modified Lentz method."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_TOL:
            return h
    raise RuntimeError(
        f"incomplete beta did not converge: a={a}, b={b}, x={x}, "
        f"iterations={_BETA_MAX_ITER}, last delta={delta - 1.0:.3e}"
    )


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b), evaluated by continued fraction with the symmetry switch."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def f_tail_p(f: float, df1: int, df2: int) -> float:
    """P(F >= f) for the F distribution with (df1, df2) degrees of freedom."""
    if f < 0:
        raise ValueError("f must be non-negative")
    if df1 < 1 or df2 < 1:
        raise ValueError("degrees of freedom must be >= 1")
    if f == 0:
        return 1.0
    if math.isinf(f):
        return 0.0
    x = df2 / (df2 + df1 * f)
    return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, x)
