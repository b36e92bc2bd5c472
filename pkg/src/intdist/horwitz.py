"""Coefficient of variation versus concentration for trace constituents.

Three curves: the theoretical CV of a success fraction, sqrt((1-p)/(np));
the empirical trend CV = 0.02 * p**(-0.15); and the sampling-effort law
n(p) = 2500 * p**(-0.7) that makes the two coincide up to the (1-p) factor.
The effort exponent is -0.7 by consistency: CV = (np)**(-0.5) = 0.02*p**(-0.15)
forces np = 2500 * p**0.3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["CvPoint", "cv_theoretical", "hall_selinger_n", "horwitz_cv", "horwitz_table"]


@dataclass(frozen=True)
class CvPoint:
    p: float
    n: float
    cv: float

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 1.0:
            raise DomainError(f"p must lie in (0, 1), got {self.p!r}")
        if not self.n > 0.0:
            raise DomainError(f"n must be positive, got {self.n!r}")
        if not self.cv > 0.0:
            raise DomainError(f"cv must be positive, got {self.cv!r}")


def _check_p(p: float) -> float:
    p = float(p)
    if not (math.isfinite(p) and 0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    return p


def cv_theoretical(p: float, n: float) -> float:
    """CV of a success fraction over n units: sqrt((1-p)/(n*p))."""
    p = _check_p(p)
    n = float(n)
    if not (math.isfinite(n) and n > 0.0):
        raise DomainError(f"n must be positive, got {n!r}")
    return math.sqrt((1.0 - p) / (n * p))


def horwitz_cv(p: float) -> float:
    """Empirical inter-laboratory trend 0.02 * p**(-0.15)."""
    return 0.02 * _check_p(p) ** -0.15


def hall_selinger_n(p: float) -> float:
    """Sampling effort 2500 * p**(-0.7) reproducing the empirical trend."""
    return 2500.0 * _check_p(p) ** -0.7


def horwitz_table(p_min: float, p_max: float, points: int) -> list[CvPoint]:
    """Log-spaced rows of (p, effort n(p), theoretical CV at that effort)."""
    p_min, p_max = _check_p(p_min), _check_p(p_max)
    if p_min >= p_max:
        raise DomainError(f"need p_min < p_max, got {p_min!r} >= {p_max!r}")
    if int(points) != points or int(points) < 2:
        raise DomainError(f"points must be an integer >= 2, got {points!r}")
    grid = np.geomspace(p_min, p_max, int(points))
    out = []
    for p in grid:
        p = float(p)
        n = hall_selinger_n(p)
        out.append(CvPoint(p=p, n=n, cv=cv_theoretical(p, n)))
    return out
