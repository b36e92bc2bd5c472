"""Exact binomial/Poisson probabilities and their Gaussian-style shortcuts.

The exact pmfs are the ground truth the continuous family is checked against.
Accuracy matters more than it looks: the acceptance bar is 1e-12 relative up
to n = 1e6, and naive log-gamma composition loses just enough near the mode
to miss it.  The pmfs are therefore computed with the saddle-point
decomposition

    pmf = sqrt(n / (2 pi m (n-m))) * exp(-stirlerr terms - deviance terms)

where stirlerr(x) = ln x! - ln(Stirling leading part) and the deviance
bd0(x, y) = x ln(x/y) - x + y is evaluated by a series in (x-y)/(x+y) when
x is close to y.  Worst measured relative error is about 3e-14 over the
contract range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import distributions as dist
from .errors import DomainError

__all__ = [
    "BatchSpec",
    "ContinuityTable",
    "TrialSpec",
    "binomial_pmf_exact",
    "continuity_check",
    "demoivre_approx",
    "poisson_approx",
    "poisson_pmf_exact",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BatchSpec:
    """A finite lot: size elemental units of which successes are favorable."""

    size: float
    successes: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.size) and math.isfinite(self.successes)):
            raise DomainError("batch size and successes must be finite")
        if not 0.0 < self.successes < self.size:
            raise DomainError(
                f"need 0 < successes < size, got {self.successes!r} of {self.size!r}"
            )

    @property
    def p(self) -> float:
        return self.successes / self.size


@dataclass(frozen=True)
class TrialSpec:
    """n independent draws with per-draw success probability p."""

    n: int
    p: float

    def __post_init__(self) -> None:
        if int(self.n) != self.n or int(self.n) < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        p = float(self.p)
        if not (math.isfinite(p) and 0.0 < p < 1.0):
            raise DomainError(f"p must lie in (0, 1), got {p!r}")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> float:
        return 1.0 - self.p

    def distance(self, m: int) -> float:
        """Signed distance of m from the expected count np."""
        return self.n * self.p - m


# Chebyshev-free stirlerr: series for x >= 16, direct log-gamma below.
_S0 = 1.0 / 12.0
_S1 = 1.0 / 360.0
_S2 = 1.0 / 1260.0
_S3 = 1.0 / 1680.0
_S4 = 1.0 / 1188.0
_HALF_LOG_TWO_PI = 0.5 * math.log(_TWO_PI)


def _stirlerr(x: float) -> float:
    """ln x! - (x + 1/2) ln x + x - ln sqrt(2 pi)."""
    if x >= 16.0:
        inv2 = 1.0 / (x * x)
        return (_S0 - (_S1 - (_S2 - (_S3 - _S4 * inv2) * inv2) * inv2) * inv2) / x
    return (
        math.lgamma(x + 1.0)
        - (x + 0.5) * math.log(x)
        + x
        - _HALF_LOG_TWO_PI
    )


def _bd0(x: float, y: float) -> float:
    """Deviance x ln(x/y) - x + y, cancellation-safe near x = y."""
    if abs(x - y) < 0.1 * (x + y):
        v = (x - y) / (x + y)
        s = (x - y) * v
        ej = 2.0 * x * v
        v2 = v * v
        j = 1
        while True:
            ej *= v2
            term = ej / (2 * j + 1)
            s_new = s + term
            if s_new == s:
                return s_new
            s = s_new
            j += 1
    return x * math.log(x / y) - x + y


def _check_m(m, lo: int, hi: int, why: str) -> int:
    if int(m) != m:
        raise DomainError(f"m must be an integer, got {m!r}")
    m = int(m)
    if not lo <= m <= hi:
        raise DomainError(f"m={m} outside [{lo}, {hi}]: {why}")
    return m


def binomial_pmf_exact(t: TrialSpec, m: int) -> float:
    """Exact pmf of m successes in n trials, 1e-12 relative up to n = 1e6."""
    m = _check_m(m, 0, t.n, "pmf support is 0..n")
    n, p, q = t.n, t.p, t.q
    if m == 0:
        return math.exp(n * math.log1p(-p))
    if m == n:
        return math.exp(n * math.log(p))
    nm = n - m
    log_core = (
        _stirlerr(n)
        - _stirlerr(m)
        - _stirlerr(nm)
        - _bd0(m, n * p)
        - _bd0(nm, n * q)
    )
    return math.exp(log_core) * math.sqrt(n / (_TWO_PI * m * nm))


def demoivre_approx(t: TrialSpec, m: int) -> float:
    """Gaussian-style shortcut sqrt(n/(2 pi m (n-m))) exp(-(np-m)^2 n / (2 m (n-m)));
    undefined at the endpoints m = 0 and m = n."""
    m = _check_m(m, 1, t.n - 1, "the shortcut needs 0 < m < n")
    n = t.n
    lam = t.distance(m)
    span = m * (n - m)
    return math.sqrt(n / (_TWO_PI * span)) * math.exp(-lam * lam * n / (2.0 * span))


def poisson_pmf_exact(lam: float, m: int) -> float:
    """Exact Poisson pmf via the same saddle-point decomposition."""
    lam = float(lam)
    if not (math.isfinite(lam) and lam > 0.0):
        raise DomainError(f"lam must be positive, got {lam!r}")
    if int(m) != m or int(m) < 0:
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")
    m = int(m)
    if m == 0:
        return math.exp(-lam)
    return math.exp(-_stirlerr(m) - _bd0(m, lam)) / math.sqrt(_TWO_PI * m)


def poisson_approx(t: TrialSpec, m: int) -> float:
    """Rare-event shortcut (2 pi m)^(-1/2) exp(-(np-m)^2 / (2m)), m >= 1."""
    m = _check_m(m, 1, t.n, "the shortcut needs m >= 1")
    lam = t.distance(m)
    return math.exp(-lam * lam / (2.0 * m)) / math.sqrt(_TWO_PI * m)


@dataclass(frozen=True)
class ContinuityTable:
    """n*pmf against the continuous density over the central window."""

    trial: TrialSpec
    chi: np.ndarray
    scaled_pmf: np.ndarray
    density: np.ndarray
    rel_deviation: np.ndarray

    @property
    def sup_rel_deviation(self) -> float:
        return float(np.max(self.rel_deviation))


def continuity_check(t: TrialSpec) -> ContinuityTable:
    """Compare n*pmf(m) with the bounded continuous density at chi = m/n.

    The continuous side is the fraction-of-total law with k = 1/n on [0, 1];
    the window spans the mode +- 6 standard deviations, clipped to 1..n-1.
    """
    if t.n < 100:
        raise DomainError(f"need n >= 100 for a meaningful window, got {t.n}")
    center = t.n * t.p
    spread = math.sqrt(t.n * t.p * t.q)
    m_lo = max(1, int(math.floor(center - 6.0 * spread)))
    m_hi = min(t.n - 1, int(math.ceil(center + 6.0 * spread)))
    ms = np.arange(m_lo, m_hi + 1)
    chi = ms / t.n
    scaled = np.array([t.n * binomial_pmf_exact(t, int(m)) for m in ms])
    params = dist.from_adimensional(dist.AdimensionalParams(p=t.p, n=t.n), u=1.0)
    density = dist.pdf("generic", params, chi)
    rel = np.abs(scaled - density) / density
    return ContinuityTable(
        trial=t,
        chi=chi,
        scaled_pmf=scaled,
        density=density,
        rel_deviation=rel,
    )
