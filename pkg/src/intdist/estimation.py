"""Parameter estimation: closed moment formulas, numeric MLE, histogram fits.

Closed estimators follow the moment identities of the laws themselves.  For
the open-ended skewed law the harmonic mean estimates mu (E(1/x) = 1/mu) and
the arithmetic-minus-harmonic gap estimates k (E(x) = k + mu); the mirrored
law applies the same arithmetic to u - x.  The numeric MLE exists as an
independent route: the closed forms are the exact likelihood maximizers, so
both must agree, and the test suite holds them to that.

Conventions that are easy to trip over, chosen once and documented here:

  * estimate_homogeneous returns k = variance / mu (so that the implied
    Gaussian variance k*mu equals the data variance).  The unbiased n-1
    denominator is the default; population=True switches to 1/n.
  * estimate_normal / estimate_lognormal use the population (1/n) standard
    deviation, the likelihood maximizer of the written densities.
  * u is never estimated.  Callers must supply it for the bounded-above
    models; u_from_max=True derives max(values)*(1 + 1e-6) as an explicit
    opt-in convenience.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.optimize import minimize

from . import distributions as dist
from .errors import (
    DegenerateDataError,
    DomainError,
    NonIdentifiableError,
    NumericError,
)

__all__ = [
    "Dataset",
    "FitReport",
    "HistFitResult",
    "Estimate",
    "estimate_homogeneous",
    "estimate_likely_closed",
    "estimate_lognormal",
    "estimate_mirrored_lognormal",
    "estimate_normal",
    "estimate_unlikely_closed",
    "histfit",
    "mle_unlikely",
    "poor_fit",
]

Estimate = Union[dist.Params]


class Dataset:
    """Immutable 1-d batch of finite measurements."""

    __slots__ = ("_values", "_sorted")

    def __init__(self, values) -> None:
        arr = np.array(values, dtype=float)
        if arr.ndim != 1:
            raise DomainError(f"dataset must be one-dimensional, got shape {arr.shape}")
        if arr.size == 0:
            raise DegenerateDataError("dataset is empty")
        if not np.all(np.isfinite(arr)):
            raise DomainError("dataset contains non-finite values")
        arr.flags.writeable = False
        self._values = arr
        self._sorted: Optional[np.ndarray] = None

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def sorted_values(self) -> np.ndarray:
        if self._sorted is None:
            s = np.sort(self._values)
            s.flags.writeable = False
            self._sorted = s
        return self._sorted

    def __len__(self) -> int:
        return int(self._values.size)

    def __repr__(self) -> str:
        return f"Dataset(n={len(self)})"


def _values_of(data, min_n: int = 1) -> np.ndarray:
    ds = data if isinstance(data, Dataset) else Dataset(data)
    if len(ds) < min_n:
        raise DegenerateDataError(f"need at least {min_n} values, got {len(ds)}")
    return ds.values


def _require_u(u, values: np.ndarray, u_from_max: bool) -> float:
    if u is not None:
        u = float(u)
        if not math.isfinite(u):
            raise DomainError(f"u must be finite, got {u!r}")
        return u
    if u_from_max:
        return float(np.max(values)) * (1.0 + 1e-6)
    raise DomainError("u is required (pass u_from_max=True to derive it from the data)")


def estimate_unlikely_closed(data) -> dist.UnlikelyParams:
    """mu = harmonic mean, k = arithmetic mean - mu."""
    v = _values_of(data, min_n=2)
    if np.any(v <= 0.0):
        raise DomainError("unlikely fits need strictly positive values")
    if np.ptp(v) == 0.0:
        raise DegenerateDataError("constant data: dispersion k would be 0")
    mu = v.size / float(np.sum(1.0 / v))
    k = float(np.mean(v)) - mu
    if k <= 0.0:
        raise DegenerateDataError(f"arithmetic mean does not exceed harmonic mean (k={k!r})")
    return dist.UnlikelyParams(mu=mu, k=k)


def estimate_likely_closed(data, u=None, *, u_from_max: bool = False) -> dist.LikelyParams:
    """Mirror of the unlikely estimator applied to u - x."""
    v = _values_of(data, min_n=2)
    u = _require_u(u, v, u_from_max)
    if np.any(v >= u):
        raise DomainError("likely fits need every value strictly below u")
    inner = estimate_unlikely_closed(u - v)
    return dist.LikelyParams(mu=u - inner.mu, k=inner.k, u=u)


def estimate_homogeneous(
    data, *, population: bool = False
) -> dist.UnlikelyHomogeneousParams:
    """mu = mean, k = variance/mu, so the implied Gaussian variance is k*mu."""
    v = _values_of(data, min_n=2)
    if np.any(v <= 0.0):
        raise DomainError("homogeneous fits need strictly positive values")
    if np.ptp(v) == 0.0:
        raise DegenerateDataError("constant data: zero variance")
    mu = float(np.mean(v))
    var = float(np.var(v, ddof=0 if population else 1))
    return dist.UnlikelyHomogeneousParams(mu=mu, k=var / mu)


def estimate_normal(data) -> dist.NormalParams:
    """mu = mean, sigma = population standard deviation."""
    v = _values_of(data, min_n=2)
    sigma = float(np.std(v))
    if sigma == 0.0:
        raise DegenerateDataError("constant data: zero standard deviation")
    return dist.NormalParams(mu=float(np.mean(v)), sigma=sigma)


def estimate_lognormal(data) -> dist.LogNormalParams:
    """mu = geometric mean, sigma = population deviation of ln x."""
    v = _values_of(data, min_n=2)
    if np.any(v <= 0.0):
        raise DomainError("lognormal fits need strictly positive values")
    logs = np.log(v)
    sigma = float(np.std(logs))
    if sigma == 0.0:
        raise DegenerateDataError("constant log values: zero deviation")
    return dist.LogNormalParams(mu=float(np.exp(np.mean(logs))), sigma=sigma)


def estimate_mirrored_lognormal(
    data, u=None, *, u_from_max: bool = False
) -> dist.MirroredLogNormalParams:
    """Lognormal formulas on u - x, reported in the mirrored coordinates."""
    v = _values_of(data, min_n=2)
    u = _require_u(u, v, u_from_max)
    if np.any(v >= u):
        raise DomainError("mirrored fits need every value strictly below u")
    inner = estimate_lognormal(u - v)
    return dist.MirroredLogNormalParams(mu=u - inner.mu, sigma=inner.sigma, u=u)


def mle_unlikely(data, *, budget: int = 20000) -> dist.UnlikelyParams:
    """Direct likelihood maximization for the open-ended law.

    The closed estimator already is the maximizer; this route exists so the
    two can be compared.  The negative log-likelihood reduces to

        n/2 ln(2 pi k) + 1/2 sum(ln x) + (mu^2 S1 - 2 mu n + Sx) / (2k)

    with S1 = sum(1/x) and Sx = sum(x), so each evaluation is O(1) after one
    pass over the data.  Search runs in log-parameter space.
    """
    v = _values_of(data, min_n=2)
    if np.any(v <= 0.0):
        raise DomainError("unlikely fits need strictly positive values")
    if np.ptp(v) == 0.0:
        raise DegenerateDataError("constant data: dispersion k would be 0")
    n = float(v.size)
    s_inv = float(np.sum(1.0 / v))
    s_x = float(np.sum(v))
    s_log = float(np.sum(np.log(v)))

    def nll(theta: np.ndarray) -> float:
        mu = math.exp(theta[0])
        k = math.exp(theta[1])
        quad = mu * mu * s_inv - 2.0 * mu * n + s_x
        return 0.5 * n * math.log(2.0 * math.pi * k) + 0.5 * s_log + quad / (2.0 * k)

    mu0 = float(np.exp(np.mean(np.log(v))))  # geometric mean, not the answer
    k0 = max(float(np.mean(v)) - mu0, 1e-6 * mu0)
    x0 = np.array([math.log(mu0), math.log(k0)])
    f0 = nll(x0)
    res = minimize(
        nll,
        x0,
        method="Nelder-Mead",
        options={
            "maxfev": budget,
            "xatol": 1e-10,
            "fatol": 1e-12 * (1.0 + abs(f0)),
        },
    )
    if not res.success:
        raise NumericError(
            f"likelihood search did not converge: {res.message} "
            f"(evaluations={res.nfev}, best={res.fun!r} at {res.x!r})"
        )
    return dist.UnlikelyParams(mu=math.exp(res.x[0]), k=math.exp(res.x[1]))


@dataclass(frozen=True)
class HistFitResult:
    params: Estimate
    residual: float
    evaluations: int


def _free_fields(model: str, init) -> list[str]:
    return [f.name for f in dataclasses.fields(init) if f.name != "u"]


def histfit(model: str, hist, init, *, budget: int = 10000) -> HistFitResult:
    """Least-squares fit of a density curve to histogram bin densities.

    Minimizes sum over bins of (bin density - pdf(midpoint))^2 with a
    derivative-free simplex search.  Parameters are searched on a log scale
    so every positivity constraint holds by construction (for the mirrored
    law the searched quantity is u - mu).  u is held fixed throughout.
    """
    dist.support(model, init)  # validates tag and init params together
    counts = np.asarray(hist.counts)
    if int(np.count_nonzero(counts)) < 4:
        raise NonIdentifiableError(
            f"need at least 4 nonempty bins, got {int(np.count_nonzero(counts))}"
        )
    mids = np.asarray(hist.midpoints, dtype=float)
    dens = np.asarray(hist.densities, dtype=float)
    dist.pdf(model, init, mids)  # support precheck: u is fixed, so geometry is too
    names = _free_fields(model, init)
    mirrored_mu = model == "mirrored-lognormal"

    def encode(params) -> np.ndarray:
        out = []
        for name in names:
            value = getattr(params, name)
            if mirrored_mu and name == "mu":
                value = params.u - value
            if value <= 0.0:
                raise DomainError(f"init {name} must be positive for log-space search")
            out.append(math.log(value))
        return np.array(out)

    def decode(theta: np.ndarray):
        raw = {}
        for name, t in zip(names, theta):
            value = math.exp(t)
            if mirrored_mu and name == "mu":
                value = init.u - value
            raw[name] = value
        return dataclasses.replace(init, **raw)

    def objective(theta: np.ndarray) -> float:
        try:
            params = decode(theta)
        except DomainError:
            return math.inf
        diff = dens - dist.pdf(model, params, mids)
        return float(np.dot(diff, diff))

    x0 = encode(init)
    f0 = objective(x0)
    res = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={
            "maxfev": budget,
            "xatol": 1e-9,
            "fatol": 1e-8 * max(abs(f0), 1e-300),
        },
    )
    if not res.success:
        raise NumericError(
            f"histogram fit did not converge: {res.message} (evaluations={res.nfev})"
        )
    return HistFitResult(
        params=decode(res.x), residual=float(res.fun), evaluations=int(res.nfev)
    )


def poor_fit(hist, residual: float, *, ceiling_ratio: float = 0.1) -> bool:
    """True when the achieved residual is large against the density scale."""
    scale = float(np.dot(np.asarray(hist.densities), np.asarray(hist.densities)))
    return residual > ceiling_ratio * scale


@dataclass(frozen=True)
class FitReport:
    """End-to-end fit summary as surfaced by the CLI."""

    model: str
    method: str
    params: Estimate
    count: int
    pp_r_squared: Optional[float]
    residual: Optional[float]
    warnings: tuple = ()
