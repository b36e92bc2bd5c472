"""Histograms, probability-probability series, and identity-line R².

The PP construction sorts the data, assigns each order statistic the plotting
position (i - 0.5)/N, and pairs it with the model CDF at that value.  A series
hugging the diagonal means the model reproduces the empirical law; R² is
measured against the identity line itself, not a fitted regression line,
because the diagonal is the reference curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import distributions as dist
from .errors import DegenerateDataError, DomainError
from .estimation import Dataset

__all__ = [
    "Histogram",
    "PPSeries",
    "build_histogram",
    "pp_series",
    "r_squared_identity",
    "r_squared_pp",
]

_MIN_BINS = 5
_MAX_BINS = 200


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Histogram:
    """Equal-width histogram; densities integrate to 1 over the data span."""

    edges: np.ndarray
    counts: np.ndarray
    densities: np.ndarray

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def total(self) -> int:
        return int(np.sum(self.counts))


@dataclass(frozen=True)
class PPSeries:
    """Paired (p_exp, p_theo) probabilities, p_exp on the (i-0.5)/N lattice."""

    p_exp: np.ndarray
    p_theo: np.ndarray

    def __len__(self) -> int:
        return int(self.p_exp.size)

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.p_exp, self.p_theo])


def build_histogram(data, bins=None) -> Histogram:
    """Equal-width histogram over [min, max].

    bins=None applies the Freedman-Diaconis rule clamped to [5, 200]; an
    explicit positive integer takes precedence.
    """
    ds = data if isinstance(data, Dataset) else Dataset(data)
    if len(ds) == 0:
        raise DegenerateDataError("empty dataset")
    v = ds.values
    if np.ptp(v) == 0.0:
        raise DegenerateDataError("all values identical: no usable span to bin")
    if bins is None:
        fd_edges = np.histogram_bin_edges(v, bins="fd")
        n_bins = int(np.clip(len(fd_edges) - 1, _MIN_BINS, _MAX_BINS))
    else:
        if int(bins) != bins or int(bins) < 1:
            raise DomainError(f"bins must be a positive integer, got {bins!r}")
        n_bins = int(bins)
    edges = np.linspace(float(np.min(v)), float(np.max(v)), n_bins + 1)
    counts, _ = np.histogram(v, bins=edges)
    densities = counts / (v.size * np.diff(edges))
    return Histogram(
        edges=_freeze(edges),
        counts=_freeze(counts),
        densities=_freeze(densities),
    )


def pp_series(data, model: str, params) -> PPSeries:
    """Empirical plotting positions vs model CDF at the order statistics."""
    ds = data if isinstance(data, Dataset) else Dataset(data)
    if len(ds) == 0:
        raise DegenerateDataError("empty dataset")
    lo, hi = dist.support(model, params)
    v = ds.sorted_values
    if v[0] < lo or v[-1] > hi:
        bad = float(v[0]) if v[0] < lo else float(v[-1])
        raise DomainError(
            f"value {bad!r} lies outside the {model} support [{lo:g}, {hi:g}]"
        )
    n = v.size
    p_exp = (np.arange(1, n + 1) - 0.5) / n
    p_theo = dist.cdf_many(model, params, v)
    return PPSeries(p_exp=_freeze(p_exp), p_theo=_freeze(np.asarray(p_theo)))


def r_squared_identity(x, y) -> float:
    """R² of y against x relative to the identity line y = x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DomainError("x and y must be 1-d arrays of equal length")
    centered = x - np.mean(x)
    total = float(np.dot(centered, centered))
    if total == 0.0:
        raise DomainError("degenerate reference values: zero total variation")
    resid = y - x
    return 1.0 - float(np.dot(resid, resid)) / total


def r_squared_pp(series: PPSeries) -> float:
    """Identity-line R² of a PP series (needs at least 3 points)."""
    if len(series) < 3:
        raise DomainError(f"need at least 3 points, got {len(series)}")
    return r_squared_identity(series.p_exp, series.p_theo)
