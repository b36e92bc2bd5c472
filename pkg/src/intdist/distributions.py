"""Continuous sampling laws for intensive quantities measured on aliquots.

The bounded law on (0, u) has density

    f(x) = (2 pi k x (u - x))**(-1/2) * exp(-(mu - x)**2 / (2 k x (u - x)))

where mu locates the peak, k sets the dispersion, and u is the exhaustive
total amount, so a single draw can never exceed it.  Three regimes carry
their own model tags:

  "generic"      the bounded density above, support [0, u]
  "unlikely"     mu far below u; the (u - x) factor is absorbed into the
                 dispersion constant, support becomes (0, inf), right-skewed
  "likely"       mirror image of the unlikely law around u/2, support
                 (-inf, u), left-skewed
  "homogeneous"  peak near the middle relative to dispersion; a plain
                 Gaussian with variance k*mu*(u - mu) (or k*mu when the
                 bound has been absorbed)

Auxiliary tags "normal", "lognormal", and "mirrored-lognormal" exist because
the estimators and goodness-of-fit tools compare the skewed laws against
them.

Closed-form facts used throughout: for the unlikely law the harmonic mean
equals mu, E(x) = k + mu, var(x) = k*(2k + mu), and E(x**2) = 3k*E(x) + mu**2.
The likely mirror has E(x) = mu - k and var(x) = k*(2k + u - mu).

Numerics: every integral runs through the Gaussianizing change of variables
in the private quadrature module, so accuracy does not degrade for small or
large dispersion.  Model dispatch is by tag string; params are frozen
dataclasses validated on construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq
from scipy.special import ndtr, ndtri

from . import _quadrature as _q
from .errors import DomainError, NumericError, UnsupportedModelError

__all__ = [
    "AdimensionalParams",
    "CdfTable",
    "GenericParams",
    "HomogeneousParams",
    "LikelyParams",
    "LogNormalParams",
    "MirroredLogNormalParams",
    "Moments",
    "NormalParams",
    "UnlikelyHomogeneousParams",
    "UnlikelyParams",
    "cdf",
    "cdf_many",
    "central_moment_numeric",
    "cf_unlikely",
    "from_adimensional",
    "log_pdf",
    "mgf_unlikely",
    "moments_closed",
    "pdf",
    "quantile",
    "support",
]

_TWO_PI = 2.0 * math.pi


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _require_positive(name: str, value: float) -> float:
    value = _require_finite(name, value)
    if value <= 0.0:
        raise DomainError(f"{name} must be positive, got {value!r}")
    return value


@dataclass(frozen=True)
class UnlikelyParams:
    """Open-ended right-skewed law on (0, inf)."""

    mu: float
    k: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", _require_positive("mu", self.mu))
        object.__setattr__(self, "k", _require_positive("k", self.k))


@dataclass(frozen=True)
class LikelyParams:
    """Left-skewed mirror law on (-inf, u)."""

    mu: float
    k: float
    u: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", _require_positive("u", self.u))
        object.__setattr__(self, "k", _require_positive("k", self.k))
        mu = _require_finite("mu", self.mu)
        if not 0.0 < mu < self.u:
            raise DomainError(f"mu must lie in (0, u), got mu={mu!r}, u={self.u!r}")
        object.__setattr__(self, "mu", mu)


@dataclass(frozen=True)
class GenericParams:
    """Bounded law on (0, u)."""

    mu: float
    k: float
    u: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", _require_positive("u", self.u))
        object.__setattr__(self, "k", _require_positive("k", self.k))
        mu = _require_finite("mu", self.mu)
        if not 0.0 < mu < self.u:
            raise DomainError(f"mu must lie in (0, u), got mu={mu!r}, u={self.u!r}")
        object.__setattr__(self, "mu", mu)


@dataclass(frozen=True)
class HomogeneousParams:
    """Gaussian regime with variance k*mu*(u - mu)."""

    mu: float
    k: float
    u: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", _require_positive("u", self.u))
        object.__setattr__(self, "k", _require_positive("k", self.k))
        mu = _require_finite("mu", self.mu)
        if not 0.0 < mu < self.u:
            raise DomainError(f"mu must lie in (0, u), got mu={mu!r}, u={self.u!r}")
        object.__setattr__(self, "mu", mu)

    @property
    def variance(self) -> float:
        return self.k * self.mu * (self.u - self.mu)


@dataclass(frozen=True)
class UnlikelyHomogeneousParams:
    """Gaussian regime with the bound absorbed: variance k*mu."""

    mu: float
    k: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", _require_positive("mu", self.mu))
        object.__setattr__(self, "k", _require_positive("k", self.k))

    @property
    def variance(self) -> float:
        return self.k * self.mu


@dataclass(frozen=True)
class NormalParams:
    """Plain Gaussian comparison law."""

    mu: float
    sigma: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", _require_finite("mu", self.mu))
        object.__setattr__(self, "sigma", _require_positive("sigma", self.sigma))


@dataclass(frozen=True)
class LogNormalParams:
    """Log-normal comparison law; mu is the median (scale), sigma the log-sd."""

    mu: float
    sigma: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", _require_positive("mu", self.mu))
        object.__setattr__(self, "sigma", _require_positive("sigma", self.sigma))


@dataclass(frozen=True)
class MirroredLogNormalParams:
    """Log-normal law mirrored below u; mu is the median of the mirrored
    variable itself (mu < u), sigma the log-sd of (u - x)."""

    mu: float
    sigma: float
    u: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", _require_finite("u", self.u))
        object.__setattr__(self, "sigma", _require_positive("sigma", self.sigma))
        mu = _require_finite("mu", self.mu)
        if mu >= self.u:
            raise DomainError(f"mu must lie below u, got mu={mu!r}, u={self.u!r}")
        object.__setattr__(self, "mu", mu)


@dataclass(frozen=True)
class AdimensionalParams:
    """Fraction-of-total parameterization: single-draw probability p and the
    number n of elemental units per aliquot."""

    p: float
    n: int

    def __post_init__(self) -> None:
        p = _require_finite("p", self.p)
        if not 0.0 < p < 1.0:
            raise DomainError(f"p must lie in (0, 1), got {p!r}")
        object.__setattr__(self, "p", p)
        n = self.n
        if float(n) != int(n) or int(n) < 1:
            raise DomainError(f"n must be a positive integer, got {n!r}")
        object.__setattr__(self, "n", int(n))


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float


Params = Union[
    UnlikelyParams,
    LikelyParams,
    GenericParams,
    HomogeneousParams,
    UnlikelyHomogeneousParams,
    NormalParams,
    LogNormalParams,
    MirroredLogNormalParams,
]

_PARAM_TYPES = {
    "unlikely": (UnlikelyParams,),
    "likely": (LikelyParams,),
    "generic": (GenericParams,),
    "homogeneous": (HomogeneousParams, UnlikelyHomogeneousParams),
    "normal": (NormalParams,),
    "lognormal": (LogNormalParams,),
    "mirrored-lognormal": (MirroredLogNormalParams,),
}

MODEL_TAGS = tuple(_PARAM_TYPES)
CORE_TAGS = ("unlikely", "likely", "generic", "homogeneous")


def _check_model(model: str, params: Params) -> None:
    try:
        expected = _PARAM_TYPES[model]
    except KeyError:
        raise UnsupportedModelError(
            f"unknown model tag {model!r}; expected one of {', '.join(MODEL_TAGS)}"
        ) from None
    if not isinstance(params, expected):
        names = " or ".join(t.__name__ for t in expected)
        raise DomainError(
            f"model {model!r} takes {names}, got {type(params).__name__}"
        )


def _gauss_sigma(params: Params) -> float:
    # variance of the Gaussian-shaped tags, whichever parameterization
    if isinstance(params, HomogeneousParams):
        return math.sqrt(params.variance)
    if isinstance(params, UnlikelyHomogeneousParams):
        return math.sqrt(params.variance)
    if isinstance(params, NormalParams):
        return params.sigma
    raise DomainError(f"no Gaussian width for {type(params).__name__}")


def support(model: str, params: Params) -> tuple[float, float]:
    """Support interval (lo, hi); infinite ends use +-inf sentinels."""
    _check_model(model, params)
    if model == "unlikely":
        return (0.0, math.inf)
    if model == "likely":
        return (-math.inf, params.u)
    if model == "generic":
        return (0.0, params.u)
    if model == "lognormal":
        return (0.0, math.inf)
    if model == "mirrored-lognormal":
        return (-math.inf, params.u)
    return (-math.inf, math.inf)


# ---------------------------------------------------------------------------
# log densities (vectorized kernels; inputs assumed inside the open support)

def _log_pdf_unlikely(mu: float, k: float, x: np.ndarray) -> np.ndarray:
    return -0.5 * np.log(_TWO_PI * k * x) - (mu - x) ** 2 / (2.0 * k * x)


def _log_pdf_generic(mu: float, k: float, u: float, x: np.ndarray) -> np.ndarray:
    s = x * (u - x)
    return -0.5 * np.log(_TWO_PI * k * s) - (mu - x) ** 2 / (2.0 * k * s)


def _log_pdf_gauss(mu: float, sigma: float, x: np.ndarray) -> np.ndarray:
    return -0.5 * np.log(_TWO_PI * sigma * sigma) - (x - mu) ** 2 / (
        2.0 * sigma * sigma
    )


def _log_pdf_lognormal(mu: float, sigma: float, x: np.ndarray) -> np.ndarray:
    r = np.log(x / mu)
    return -np.log(x * sigma) - 0.5 * math.log(_TWO_PI) - r * r / (2.0 * sigma * sigma)


def _kernel_log_pdf(model: str, params: Params, x: np.ndarray) -> np.ndarray:
    if model == "unlikely":
        return _log_pdf_unlikely(params.mu, params.k, x)
    if model == "likely":
        # same arithmetic path as the open-ended law, mirrored
        return _log_pdf_unlikely(params.u - params.mu, params.k, params.u - x)
    if model == "generic":
        return _log_pdf_generic(params.mu, params.k, params.u, x)
    if model in ("homogeneous", "normal"):
        return _log_pdf_gauss(params.mu, _gauss_sigma(params), x)
    if model == "lognormal":
        return _log_pdf_lognormal(params.mu, params.sigma, x)
    # mirrored-lognormal
    return _log_pdf_lognormal(params.u - params.mu, params.sigma, params.u - x)


def _as_array(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return np.atleast_1d(arr), arr.ndim == 0


def pdf(model: str, params: Params, x):
    """Density at x (scalar or array).  Support endpoints give the limit
    value 0; values outside the closed support raise DomainError."""
    _check_model(model, params)
    arr, scalar = _as_array(x)
    if not np.all(np.isfinite(arr) | np.isposinf(arr) | np.isneginf(arr)):
        raise DomainError("x contains NaN")
    lo, hi = support(model, params)
    if np.any(arr < lo) or np.any(arr > hi):
        bad = arr[(arr < lo) | (arr > hi)][0]
        raise DomainError(f"x={bad!r} is outside the support [{lo:g}, {hi:g}]")
    if not np.all(np.isfinite(arr)):
        raise DomainError("x must be finite")
    out = np.zeros_like(arr)
    interior = (arr > lo) & (arr < hi)
    if np.any(interior):
        out[interior] = np.exp(_kernel_log_pdf(model, params, arr[interior]))
    return float(out[0]) if scalar else out


def log_pdf(model: str, params: Params, x):
    """Log density; defined on the open support only, stays finite deep in
    the tails where the density itself underflows."""
    _check_model(model, params)
    arr, scalar = _as_array(x)
    lo, hi = support(model, params)
    inside = np.isfinite(arr) & (arr > lo) & (arr < hi)
    if not np.all(inside):
        bad = arr[~inside][0]
        raise DomainError(
            f"x={bad!r} is outside the open support ({lo:g}, {hi:g})"
        )
    out = _kernel_log_pdf(model, params, arr)
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# CDF and quantile

def _gauss_map_for(model: str, params: Params) -> _q.GaussMap:
    if model == "unlikely":
        return _q.unlikely_map(params.mu, params.k)
    if model == "generic":
        return _q.generic_map(params.mu, params.k, params.u)
    if model in ("homogeneous", "normal"):
        return _q.scale_map(params.mu, _gauss_sigma(params))
    if model == "lognormal":
        return _q.exp_map(params.mu, params.sigma)
    raise UnsupportedModelError(f"no direct Gaussian map for model {model!r}")


def _mirror(params: Params) -> tuple[float, Params]:
    """(u, mirrored params) for the left-skewed tags."""
    if isinstance(params, LikelyParams):
        return params.u, UnlikelyParams(params.u - params.mu, params.k)
    if isinstance(params, MirroredLogNormalParams):
        return params.u, LogNormalParams(params.u - params.mu, params.sigma)
    raise DomainError(f"{type(params).__name__} is not a mirrored law")


def cdf_many(model: str, params: Params, xs) -> np.ndarray:
    """Vectorized CDF.  For the skewed tags consecutive sorted points are
    stitched with piecewise quadrature, so large sorted batches cost one
    short integral per gap instead of one full integral per point."""
    _check_model(model, params)
    arr = np.asarray(xs, dtype=float)
    shape = arr.shape
    flat = arr.ravel()
    if flat.size == 0:
        return np.zeros(shape)
    if np.any(np.isnan(flat)):
        raise DomainError("x contains NaN")
    lo, hi = support(model, params)
    if np.any(flat < lo) or np.any(flat > hi):
        bad = flat[(flat < lo) | (flat > hi)][0]
        raise DomainError(f"x={bad!r} is outside the support closure")

    if model in ("homogeneous", "normal"):
        sigma = _gauss_sigma(params)
        out = ndtr((flat - params.mu) / sigma)
        return out.reshape(shape)
    if model == "lognormal":
        out = np.zeros(flat.size)
        pos = flat > 0
        with np.errstate(divide="ignore"):
            out[pos] = ndtr(np.log(flat[pos] / params.mu) / params.sigma)
        out[np.isposinf(flat)] = 1.0
        return out.reshape(shape)
    if model in ("likely", "mirrored-lognormal"):
        u, mirrored = _mirror(params)
        tag = "unlikely" if model == "likely" else "lognormal"
        return (1.0 - cdf_many(tag, mirrored, u - flat)).reshape(shape)

    # unlikely / generic: Gaussianize, then stitch in sorted order.  The
    # bounded form integrates to 1 only asymptotically in k, so its mass
    # function is normalized by the actual total; the open-ended law has
    # total mass exactly 1.
    gmap = _gauss_map_for(model, params)
    total = _q.mass_below(gmap, _q.Z_CUT) if model == "generic" else 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        if model == "unlikely":
            zs = np.where(
                flat <= 0.0,
                -np.inf,
                (flat - params.mu) / np.sqrt(params.k * flat),
            )
            zs = np.where(np.isposinf(flat), np.inf, zs)
        else:
            span = flat * (params.u - flat)
            zs = np.where(
                span <= 0.0,
                np.where(flat <= 0.0, -np.inf, np.inf),
                (flat - params.mu) / np.sqrt(params.k * span),
            )
    out = np.empty(flat.size)
    low = zs <= -_q.Z_CUT
    high = zs >= _q.Z_CUT
    out[low] = 0.0
    out[high] = 1.0
    mid = ~(low | high)
    if np.any(mid):
        uniq, inverse = np.unique(zs[mid], return_inverse=True)
        vals = np.empty(uniq.size)
        acc = _q.mass_below(gmap, uniq[0])
        vals[0] = acc
        for i in range(1, uniq.size):
            acc += _q.mass_between(gmap, uniq[i - 1], uniq[i])
            vals[i] = acc
        out[mid] = np.clip(vals / total, 0.0, 1.0)[inverse]
    return out.reshape(shape)


def cdf(model: str, params: Params, x):
    """Mass below x.  Accepts any point in the support closure, including
    the infinite sentinels."""
    arr, scalar = _as_array(x)
    out = cdf_many(model, params, arr)
    return float(out[0]) if scalar else out


def _quantile_root(model: str, params: Params, q: float) -> float:
    """Bracketed root solve of cdf(x) = q for the quadrature-backed tags."""
    gmap = _gauss_map_for(model, params)
    lo_s, hi_s = support(model, params)
    total = _q.mass_below(gmap, _q.Z_CUT) if model == "generic" else 1.0

    def fval(x: float) -> float:
        # z_of_x divides by the root of x*(u - x); guard the endpoints
        if x <= lo_s:
            return -q
        if x >= hi_s:
            return 1.0 - q
        return _q.mass_below(gmap, gmap.z_of_x(x)) / total - q

    if model == "generic":
        lo_b, hi_b = 0.0, params.u
    else:
        m = moments_closed(model, params)
        lo_b = 0.0
        hi_b = m.mean + 40.0 * math.sqrt(m.variance)
        for _ in range(200):
            if fval(hi_b) >= 0.0:
                break
            hi_b *= 2.0
        else:
            raise NumericError(f"could not bracket quantile q={q!r}")
    root = brentq(fval, lo_b, hi_b, xtol=1e-300, rtol=1e-14, maxiter=256)
    if abs(fval(root)) > 1e-9:
        raise NumericError(
            f"quantile root did not reach tolerance at q={q!r}: residual "
            f"{fval(root):g}"
        )
    return float(root)


def quantile(model: str, params: Params, q: float) -> float:
    """Inverse CDF; q=0 and q=1 return the support bounds (infinite ends use
    the +-inf sentinels)."""
    _check_model(model, params)
    q = float(q)
    if math.isnan(q) or not 0.0 <= q <= 1.0:
        raise DomainError(f"q must lie in [0, 1], got {q!r}")
    lo, hi = support(model, params)
    if q == 0.0:
        return lo
    if q == 1.0:
        return hi
    if model in ("homogeneous", "normal"):
        return params.mu + _gauss_sigma(params) * float(ndtri(q))
    if model == "lognormal":
        return params.mu * math.exp(params.sigma * float(ndtri(q)))
    if model in ("likely", "mirrored-lognormal"):
        u, mirrored = _mirror(params)
        tag = "unlikely" if model == "likely" else "lognormal"
        return u - quantile(tag, mirrored, 1.0 - q)
    return _quantile_root(model, params, q)


class CdfTable:
    """Precomputed monotone CDF/quantile interpolant for one skewed law.

    Nodes sit on the Gaussianized coordinate, so the table resolves the peak
    and both tails evenly at any dispersion.  Covers quantiles in roughly
    [1e-9, 1 - 1e-9]; cdf() saturates to the boundary mass outside the
    tabulated window.  Intended for bulk work (sampling, KS statistics)
    where per-point quadrature would be wasteful.
    """

    def __init__(
        self,
        model: str,
        params: Params,
        *,
        z_span: float = 6.0,
        points: int = 1201,
    ) -> None:
        if model not in ("unlikely", "likely", "generic"):
            raise UnsupportedModelError(
                f"CdfTable supports the skewed tags, not {model!r}"
            )
        _check_model(model, params)
        self.model = model
        self.params = params
        self._mirror_u = None
        self._mirror_table = None
        if model == "likely":
            u, mirrored = _mirror(params)
            self._mirror_u = u
            self._mirror_table = CdfTable(
                "unlikely", mirrored, z_span=z_span, points=points
            )
            return
        gmap = _gauss_map_for(model, params)
        total = _q.mass_below(gmap, _q.Z_CUT) if model == "generic" else 1.0
        zs = np.linspace(-z_span, z_span, points)
        xs = np.array([gmap.x_of_z(z) for z in zs])
        masses = np.empty(points)
        masses[0] = _q.mass_below(gmap, zs[0])
        for i in range(1, points):
            masses[i] = _q.mass_between(gmap, zs[i - 1], zs[i])
        cum = np.minimum(np.cumsum(masses) / total, 1.0)
        keep = np.concatenate(([True], np.diff(xs) > 0.0))
        xs, cum = xs[keep], cum[keep]
        self.x_lo, self.x_hi = float(xs[0]), float(xs[-1])
        self.f_lo, self.f_hi = float(cum[0]), float(cum[-1])
        self._fwd = PchipInterpolator(xs, cum, extrapolate=False)
        rising = np.concatenate(([True], np.diff(cum) > 0.0))
        self._inv = PchipInterpolator(cum[rising], xs[rising], extrapolate=False)

    def cdf(self, x) -> np.ndarray:
        arr = np.asarray(x, dtype=float)
        if self._mirror_table is not None:
            return 1.0 - self._mirror_table.cdf(self._mirror_u - arr)
        clipped = np.clip(arr, self.x_lo, self.x_hi)
        return np.asarray(self._fwd(clipped), dtype=float)

    def quantile(self, q) -> np.ndarray:
        arr = np.asarray(q, dtype=float)
        if np.any(np.isnan(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError("q must lie in [0, 1]")
        if self._mirror_table is not None:
            return self._mirror_u - self._mirror_table.quantile(1.0 - arr)
        clipped = np.clip(arr, self.f_lo, self.f_hi)
        return np.asarray(self._inv(clipped), dtype=float)


# ---------------------------------------------------------------------------
# moments and transforms

def moments_closed(model: str, params: Params) -> Moments:
    """Closed-form mean and variance.  The generic tag has no closed pair
    and raises UnsupportedModelError; use central_moment_numeric there."""
    _check_model(model, params)
    if model == "unlikely":
        return Moments(params.k + params.mu, params.k * (2.0 * params.k + params.mu))
    if model == "likely":
        return Moments(
            params.mu - params.k,
            params.k * (2.0 * params.k + params.u - params.mu),
        )
    if model in ("homogeneous", "normal"):
        # variance is the primitive here; squaring a sqrt would lose a ulp
        if isinstance(params, NormalParams):
            return Moments(params.mu, params.sigma * params.sigma)
        return Moments(params.mu, params.variance)
    if model == "lognormal":
        s2 = params.sigma * params.sigma
        mean = params.mu * math.exp(0.5 * s2)
        return Moments(mean, mean * mean * math.expm1(s2))
    if model == "mirrored-lognormal":
        u, mirrored = _mirror(params)
        inner = moments_closed("lognormal", mirrored)
        return Moments(u - inner.mean, inner.variance)
    raise UnsupportedModelError(
        "the generic tag has no closed mean/variance; use central_moment_numeric"
    )


def _moment_scales(model: str, params: Params) -> tuple[float, float]:
    """(location, spread) proxies used to set absolute quadrature targets."""
    if model == "generic":
        spread = math.sqrt(params.k * params.mu * (params.u - params.mu))
        return params.mu, spread
    m = moments_closed(model, params)
    return m.mean, math.sqrt(m.variance)


def central_moment_numeric(model: str, params: Params, order: int) -> float:
    """Quadrature estimate of E[(x - E(x))**order]; order 1 returns E(x)."""
    _check_model(model, params)
    if int(order) != order or not 1 <= int(order) <= 4:
        raise DomainError(f"order must be an integer in 1..4, got {order!r}")
    order = int(order)
    flip = 1.0
    tag, point_params, mirror_u = model, params, 0.0
    if model in ("likely", "mirrored-lognormal"):
        # mirror reduction: central moments flip sign at odd orders
        mirror_u, point_params = _mirror(params)
        tag = "unlikely" if model == "likely" else "lognormal"
        flip = -1.0
    gmap = _gauss_map_for(tag, point_params)
    loc, spread = _moment_scales(tag, point_params)
    # expectations need the actual mass: the bounded form is normalized
    # only asymptotically in k
    total = _q.expectation(gmap, lambda x: 1.0) if tag == "generic" else 1.0
    mean = (
        _q.expectation(gmap, lambda x: x, epsabs=1e-11 * max(1.0, abs(loc) + spread))
        / total
    )
    if order == 1:
        if flip < 0.0:
            return mirror_u - mean
        return mean
    value = (
        _q.expectation(
            gmap,
            lambda x: (x - mean) ** order,
            epsabs=1e-11 * max(1.0, spread**order),
        )
        / total
    )
    return flip**order * value


def mgf_unlikely(params: UnlikelyParams, t: float) -> float:
    """Moment generating function of the open-ended law, finite for
    t < 1/(2k)."""
    if not isinstance(params, UnlikelyParams):
        raise DomainError("mgf_unlikely takes UnlikelyParams")
    t = _require_finite("t", t)
    root_arg = 1.0 - 2.0 * params.k * t
    if root_arg <= 0.0:
        raise DomainError(
            f"t must lie below 1/(2k) = {1.0 / (2.0 * params.k):g}, got {t!r}"
        )
    root = math.sqrt(root_arg)
    return math.exp((params.mu / params.k) * (1.0 - root)) / root


def cf_unlikely(params: UnlikelyParams, t: float) -> complex:
    """Characteristic function, principal square root branch; |value| <= 1."""
    if not isinstance(params, UnlikelyParams):
        raise DomainError("cf_unlikely takes UnlikelyParams")
    t = _require_finite("t", t)
    root = cmath.sqrt(1.0 - 2.0j * params.k * t)
    return cmath.exp((params.mu / params.k) * (1.0 - root)) / root


def from_adimensional(a: AdimensionalParams, u: float) -> GenericParams:
    """Rescale the fraction-of-total parameterization to amounts in [0, u]:
    mu = u*p and k = 1/n, so densities obey f_amount(u*c) = f_fraction(c)/u."""
    if not isinstance(a, AdimensionalParams):
        raise DomainError("from_adimensional takes AdimensionalParams")
    u = _require_positive("u", u)
    return GenericParams(mu=u * a.p, k=1.0 / a.n, u=u)
