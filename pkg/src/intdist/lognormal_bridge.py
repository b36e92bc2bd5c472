"""How close the open-ended skewed law sits to a log-normal.

The two laws are linked through the near-identity

    (r - 1) / sqrt(r)  ~  ln r         with r = x / mu,

whose two sides agree through second order in (r - 1) and drift apart by
about 2% at r = 1/2 and r = 2.  Substituting one for the other inside the
exponent maps the skewed density onto a log-normal with sigma**2 = k / mu,
so the report also compares the actual density curves under that pairing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import distributions as dist
from .errors import DomainError
from .goodness_of_fit import r_squared_identity

__all__ = ["ClosenessReport", "GapPoint", "closeness_report", "gap", "series_lhs", "series_rhs"]


@dataclass(frozen=True)
class GapPoint:
    """Both sides of the near-identity at one ratio r; rel_gap is NaN at
    r = 1 where the reference side vanishes."""

    r: float
    lhs: float
    rhs: float
    gap: float
    rel_gap: float


def gap(r: float) -> GapPoint:
    """Exact evaluation of (r-1)/sqrt(r), ln r, and their difference."""
    r = float(r)
    if not (math.isfinite(r) and r > 0.0):
        raise DomainError(f"r must be positive, got {r!r}")
    lhs = (r - 1.0) / math.sqrt(r)
    rhs = math.log(r)
    diff = lhs - rhs
    rel = abs(diff) / abs(rhs) if rhs != 0.0 else math.nan
    return GapPoint(r=r, lhs=lhs, rhs=rhs, gap=diff, rel_gap=rel)


def _check_order(order: int) -> int:
    if int(order) != order or not 1 <= int(order) <= 8:
        raise DomainError(f"order must be an integer in 1..8, got {order!r}")
    return int(order)


def series_lhs(r: float, order: int) -> float:
    """Partial sum of (r-1)/sqrt(r) in powers of d = r-1.

    Coefficients follow the double-factorial pattern 1, -1/2, 3/8, -5/16, ...
    via the ratio c[j+1] = -c[j] * (2j - 1) / (2j).  Converges for |r-1| < 1.
    """
    order = _check_order(order)
    d = float(r) - 1.0
    coeff = 1.0
    term = d
    total = term
    for j in range(1, order):
        coeff *= -(2.0 * j - 1.0) / (2.0 * j)
        term *= d
        total += coeff * term
    return total


def series_rhs(r: float, order: int) -> float:
    """Partial sum of ln r in powers of d = r-1: alternating 1/j coefficients."""
    order = _check_order(order)
    d = float(r) - 1.0
    term = d
    total = term
    for j in range(2, order + 1):
        term *= -d
        total += term / j
    return total


@dataclass(frozen=True)
class ClosenessReport:
    """Grid summary of the near-identity and the paired density curves.

    pdf_sup_rel_diff is the sup of |skew pdf - lognormal pdf| normalized by
    the log-normal peak (a pointwise-relative version would be dominated by
    the far tails, where both densities are negligible).
    """

    sigma: float
    max_rel_gap: float
    r_squared: float
    pdf_r_squared: float
    pdf_sup_rel_diff: float
    r: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    gap: np.ndarray
    rel_gap: np.ndarray
    pdf_skew: np.ndarray
    pdf_lognormal: np.ndarray


def closeness_report(
    sigma: float, r_lo: float, r_hi: float, points: int
) -> ClosenessReport:
    """Uniform-grid comparison over r in [r_lo, r_hi] straddling 1.

    The density pairing sets mu = 1 without loss of generality (both laws
    rescale) and k = sigma**2 so the exponents match under the
    near-identity.
    """
    sigma = float(sigma)
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    r_lo, r_hi = float(r_lo), float(r_hi)
    if not (0.0 < r_lo < 1.0 < r_hi) or not math.isfinite(r_hi):
        raise DomainError(
            f"need 0 < r_lo < 1 < r_hi, got r_lo={r_lo!r}, r_hi={r_hi!r}"
        )
    if int(points) != points or int(points) < 11:
        raise DomainError(f"points must be an integer >= 11, got {points!r}")
    grid = np.linspace(r_lo, r_hi, int(points))
    pts = [gap(float(r)) for r in grid]
    lhs = np.array([p.lhs for p in pts])
    rhs = np.array([p.rhs for p in pts])
    diff = np.array([p.gap for p in pts])
    rel = np.array([p.rel_gap for p in pts])

    skew = dist.pdf("unlikely", dist.UnlikelyParams(mu=1.0, k=sigma * sigma), grid)
    logn = dist.pdf("lognormal", dist.LogNormalParams(mu=1.0, sigma=sigma), grid)
    peak = float(np.max(logn))
    sup_diff = float(np.max(np.abs(skew - logn))) / peak

    return ClosenessReport(
        sigma=sigma,
        max_rel_gap=float(np.nanmax(rel)),
        r_squared=r_squared_identity(lhs, rhs),
        pdf_r_squared=r_squared_identity(logn, skew),
        pdf_sup_rel_diff=sup_diff,
        r=grid,
        lhs=lhs,
        rhs=rhs,
        gap=diff,
        rel_gap=rel,
        pdf_skew=skew,
        pdf_lognormal=logn,
    )
