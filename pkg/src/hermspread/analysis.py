"""Straight-line fits of spreading lengths against the standard deviation.

The sums behind ordinary least squares are accumulated as exact fractions
of the (binary) inputs, so slope, intercept and Pearson correlation are
rounded once at the end.  This resolves correlations like ``0.999998``
without any compensated-summation tricks and makes the fit independent of
point order.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .entropic import onicescu_heller_length
from .exactreal import ExactReal, mp_context
from .hermite import standard_deviation
from .quadrature import QuadratureConfig
from .shannon import shannon_entropy

__all__ = [
    "DegenerateInput",
    "FitResult",
    "linear_fit",
    "shannon_vs_std_fit",
    "heller_vs_std_fit",
    "points_csv",
    "shannon_lengths",
]

_BITS = 128


class DegenerateInput(ValueError):
    """Too few points, or no spread in ``x``."""


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    correlation: float
    n_range: tuple[int, int]
    points: tuple[tuple[float, float], ...]


def _exact(v) -> Fraction:
    if isinstance(v, ExactReal):
        v = v.to_float(_BITS)
    if isinstance(v, Rational):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v)
    man, exp = getattr(v, "man_exp", (None, None))
    if man is None:
        raise TypeError(f"cannot use {type(v).__name__} as a fit coordinate")
    return Fraction(int(man) * 2**exp) if exp >= 0 else Fraction(int(man), 2 ** (-exp))


def linear_fit(points: Iterable[Sequence], n_range: tuple[int, int] | None = None) -> FitResult:
    """OLS fit ``y = slope x + intercept`` with Pearson ``R``, equal weights."""
    pts = [(_exact(x), _exact(y)) for x, y in points]
    m = len(pts)
    if m < 3:
        raise DegenerateInput("need at least 3 points")
    mean_x = sum(x for x, _ in pts) / m
    mean_y = sum(y for _, y in pts) / m
    sxx = sum((x - mean_x) ** 2 for x, _ in pts)
    syy = sum((y - mean_y) ** 2 for _, y in pts)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in pts)
    if sxx == 0:
        raise DegenerateInput("x values are all equal")
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    try:
        slope_f, intercept_f = float(slope), float(intercept)
    except OverflowError:
        raise DegenerateInput("x spread too small: the fitted line does not fit in a float") from None
    if syy == 0:
        r = 0.0
    else:
        ctx = mp_context(_BITS)
        r2 = sxy * sxy / (sxx * syy)
        r = float(ctx.sqrt(ctx.mpf(r2.numerator) / r2.denominator)) * (1 if sxy >= 0 else -1)
        r = max(-1.0, min(1.0, r))
    return FitResult(
        slope=slope_f,
        intercept=intercept_f,
        correlation=r,
        n_range=n_range if n_range is not None else (0, m - 1),
        points=tuple((float(x), float(y)) for x, y in pts),
    )


def _check_range(n_lo: int, n_hi: int) -> None:
    if n_lo < 0:
        raise DegenerateInput("n_lo must be nonnegative")
    if n_hi < n_lo + 2:
        raise DegenerateInput("need n_hi >= n_lo + 2")


def _shannon_point(args):
    n, cfg = args
    return n, shannon_entropy(n, cfg).length


def shannon_lengths(n_lo: int, n_hi: int, cfg: QuadratureConfig | None = None, workers: int | None = None) -> list:
    """Quadrature Shannon lengths for ``n_lo..n_hi`` in n-order."""
    cfg = cfg or QuadratureConfig()
    jobs = [(n, cfg) for n in range(n_lo, n_hi + 1)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # largest degrees first keeps the pool busy; map preserves order
            done = dict(pool.map(_shannon_point, sorted(jobs, key=lambda j: -j[0])))
        return [done[n] for n in range(n_lo, n_hi + 1)]
    return [_shannon_point(j)[1] for j in jobs]


def shannon_vs_std_fit(
    n_lo: int = 0,
    n_hi: int = 100,
    cfg: QuadratureConfig | None = None,
    workers: int | None = None,
) -> FitResult:
    """Fit of the Shannon length ``N[rho_n]`` against ``(Delta x)_n``."""
    _check_range(n_lo, n_hi)
    ys = shannon_lengths(n_lo, n_hi, cfg, workers)
    xs = [standard_deviation(n) for n in range(n_lo, n_hi + 1)]
    return linear_fit(zip(xs, ys), (n_lo, n_hi))


def heller_vs_std_fit(n_lo: int = 0, n_hi: int = 100) -> FitResult:
    """Fit of the Onicescu-Heller length ``1/W_2`` (exact) against ``(Delta x)_n``."""
    _check_range(n_lo, n_hi)
    pts = [(standard_deviation(n), onicescu_heller_length(n)) for n in range(n_lo, n_hi + 1)]
    return linear_fit(pts, (n_lo, n_hi))


def points_csv(fit: FitResult) -> str:
    """``n,std_dev,length`` rows for plotting; ``n`` counts up from ``n_range[0]``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "std_dev", "length"])
    for i, (x, y) in enumerate(fit.points):
        w.writerow([fit.n_range[0] + i, repr(x), repr(y)])
    return buf.getvalue()
