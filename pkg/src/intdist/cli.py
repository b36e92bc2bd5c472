"""Command-line surface.

Subcommands: fit, eval, sample, oracle, horwitz, compare-lognormal.  All
numeric CSV output uses 17 significant digits and LF line endings, so a
fixed seed reproduces byte-identical files.  Exit codes: 0 success, 1 usage
or domain or data errors, 2 numeric non-convergence.

The flag vocabulary is deliberately small.  Two flags are overloaded where
the quantity is the same thing in another guise: for `oracle`, --count is
the trial count n and --mu is the per-trial success probability (the
location of the success fraction); for `compare-lognormal`, --k is the
dispersion of the skewed law at unit location, so the paired log-normal
sigma is sqrt(k).
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import dataio, discrete, distributions as dist, estimation, plots
from . import goodness_of_fit as gof
from . import horwitz as hz
from . import lognormal_bridge as lnb
from . import sampling
from .errors import (
    DegenerateDataError,
    DomainError,
    NumericError,
    UnsupportedModelError,
)

__all__ = ["DEFAULT_SEED", "RunConfig", "build_parser", "entry", "main"]

# Fixed default seed: reruns without --seed are reproducible by contract.
DEFAULT_SEED = 1729

_FIT_MODELS = (
    "unlikely",
    "likely",
    "generic",
    "homogeneous",
    "normal",
    "lognormal",
    "mirrored-lognormal",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: Optional[str] = None
    method: str = "closed"
    input: Optional[str] = None
    column: int = 0
    bins: Optional[int] = None
    u: Optional[float] = None
    mu: Optional[float] = None
    k: Optional[float] = None
    seed: int = DEFAULT_SEED
    count: Optional[int] = None
    lo: Optional[float] = None
    hi: Optional[float] = None
    points: Optional[int] = None
    output: Optional[str] = None
    svg: Optional[str] = None


def build_parser() -> _Parser:
    parser = _Parser(prog="intdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="estimate parameters from a CSV column")
    fit.add_argument("--input", required=True, help="input CSV path")
    fit.add_argument("--column", type=int, default=0, help="0-based column (default 0)")
    fit.add_argument("--model", required=True, choices=_FIT_MODELS)
    fit.add_argument(
        "--method", choices=("closed", "mle", "histfit"), default="closed"
    )
    fit.add_argument("--bins", type=int, default=None, help="histogram bin count")
    fit.add_argument("--u", type=float, default=None, help="upper bound where required")
    fit.add_argument("--mu", type=float, default=None, help="histfit initial location")
    fit.add_argument("--k", type=float, default=None, help="histfit initial dispersion")
    fit.add_argument(
        "--output",
        required=True,
        help="output prefix: writes PREFIX.report.json, PREFIX.hist.csv, PREFIX.pp.csv",
    )
    fit.add_argument("--svg", default=None, help="optional SVG figure path")

    ev = sub.add_parser("eval", help="tabulate pdf and cdf on a grid")
    ev.add_argument("--model", required=True, choices=dist.CORE_TAGS)
    ev.add_argument("--mu", type=float, required=True)
    ev.add_argument("--k", type=float, required=True)
    ev.add_argument("--u", type=float, default=None)
    ev.add_argument("--from", dest="lo", type=float, default=None, help="grid start")
    ev.add_argument("--to", dest="hi", type=float, default=None, help="grid end")
    ev.add_argument("--points", type=int, default=201)
    ev.add_argument("--output", required=True, help="output CSV path")
    ev.add_argument("--svg", default=None, help="optional SVG figure path")

    sm = sub.add_parser("sample", help="deterministic seeded draws")
    sm.add_argument("--model", required=True, choices=dist.CORE_TAGS)
    sm.add_argument("--mu", type=float, required=True)
    sm.add_argument("--k", type=float, required=True)
    sm.add_argument("--u", type=float, default=None)
    sm.add_argument("--count", type=int, required=True)
    sm.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sm.add_argument("--output", required=True, help="output CSV path")
    sm.add_argument("--svg", default=None, help="optional SVG figure path")

    orc = sub.add_parser(
        "oracle", help="exact discrete probabilities vs their shortcuts"
    )
    orc.add_argument(
        "--model", required=True, choices=("binomial", "poisson", "continuity")
    )
    orc.add_argument("--count", type=int, required=True, help="trial count n")
    orc.add_argument(
        "--mu", type=float, required=True, help="per-trial success probability"
    )
    orc.add_argument("--from", dest="lo", type=float, default=None, help="first m")
    orc.add_argument("--to", dest="hi", type=float, default=None, help="last m")
    orc.add_argument("--output", required=True, help="output CSV path")
    orc.add_argument("--svg", default=None, help="optional SVG figure path")

    hw = sub.add_parser("horwitz", help="CV vs concentration table")
    hw.add_argument("--from", dest="lo", type=float, default=1e-8)
    hw.add_argument("--to", dest="hi", type=float, default=1e-1)
    hw.add_argument("--points", type=int, default=61)
    hw.add_argument("--output", required=True, help="output CSV path")
    hw.add_argument("--svg", default=None, help="optional SVG figure path")

    cmp_ = sub.add_parser(
        "compare-lognormal", help="skewed law vs log-normal closeness report"
    )
    cmp_.add_argument(
        "--k",
        type=float,
        default=0.04,
        help="dispersion at unit location; log-normal sigma is sqrt(k)",
    )
    cmp_.add_argument("--from", dest="lo", type=float, default=0.5)
    cmp_.add_argument("--to", dest="hi", type=float, default=2.0)
    cmp_.add_argument("--points", type=int, default=301)
    cmp_.add_argument("--output", required=True, help="output CSV path")
    cmp_.add_argument("--svg", default=None, help="optional SVG figure path")

    return parser


def _config_from(namespace: argparse.Namespace) -> RunConfig:
    known = {f.name for f in dataclasses.fields(RunConfig)}
    values = {k: v for k, v in vars(namespace).items() if k in known and v is not None}
    return RunConfig(**values)


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(cfg, n) is None]
    if missing:
        raise _UsageError(
            f"{cfg.command} with model {cfg.model} requires {', '.join(missing)}"
        )


def _build_core_params(cfg: RunConfig):
    if cfg.model == "unlikely":
        _require(cfg, "mu", "k")
        return dist.UnlikelyParams(cfg.mu, cfg.k)
    if cfg.model == "likely":
        _require(cfg, "mu", "k", "u")
        return dist.LikelyParams(cfg.mu, cfg.k, cfg.u)
    if cfg.model == "generic":
        _require(cfg, "mu", "k", "u")
        return dist.GenericParams(cfg.mu, cfg.k, cfg.u)
    _require(cfg, "mu", "k", "u")
    return dist.HomogeneousParams(cfg.mu, cfg.k, cfg.u)


def _closed_estimate(model: str, data, u):
    if model == "unlikely":
        return estimation.estimate_unlikely_closed(data)
    if model == "likely":
        return estimation.estimate_likely_closed(data, u)
    if model == "homogeneous":
        return estimation.estimate_homogeneous(data)
    if model == "normal":
        return estimation.estimate_normal(data)
    if model == "lognormal":
        return estimation.estimate_lognormal(data)
    if model == "mirrored-lognormal":
        return estimation.estimate_mirrored_lognormal(data, u)
    raise UnsupportedModelError(
        "no closed estimator for the generic model; use --method histfit"
    )


def _histfit_init(cfg: RunConfig, data):
    if (cfg.mu is None) != (cfg.k is None):
        raise _UsageError("histfit initial guess needs both --mu and --k")
    if cfg.mu is not None:
        by_model = {
            "unlikely": lambda: dist.UnlikelyParams(cfg.mu, cfg.k),
            "likely": lambda: dist.LikelyParams(cfg.mu, cfg.k, cfg.u),
            "generic": lambda: dist.GenericParams(cfg.mu, cfg.k, cfg.u),
            "homogeneous": lambda: dist.UnlikelyHomogeneousParams(cfg.mu, cfg.k),
            "normal": lambda: dist.NormalParams(cfg.mu, cfg.k),
            "lognormal": lambda: dist.LogNormalParams(cfg.mu, cfg.k),
            "mirrored-lognormal": lambda: dist.MirroredLogNormalParams(
                cfg.mu, cfg.k, cfg.u
            ),
        }
        return by_model[cfg.model]()
    if cfg.model == "generic":
        v = data.values
        u = cfg.u
        mu0 = min(max(float(np.mean(v)), 1e-6 * u), (1.0 - 1e-6) * u)
        var = float(np.var(v, ddof=1))
        k0 = max(var / (mu0 * (u - mu0)), 1e-290)
        return dist.GenericParams(mu0, k0, u)
    return _closed_estimate(cfg.model, data, cfg.u)


def run_fit(cfg: RunConfig) -> estimation.FitReport:
    if cfg.model in ("likely", "generic", "mirrored-lognormal") and cfg.u is None:
        raise _UsageError(f"model {cfg.model} requires --u")
    data = dataio.ingest_csv(cfg.input, cfg.column)
    hist = gof.build_histogram(data, cfg.bins)
    warnings: list[str] = []
    residual = None
    if cfg.method == "closed":
        params = _closed_estimate(cfg.model, data, cfg.u)
    elif cfg.method == "mle":
        if cfg.model != "unlikely":
            raise UnsupportedModelError(
                "mle is implemented for the unlikely model only"
            )
        params = estimation.mle_unlikely(data)
    else:
        init = _histfit_init(cfg, data)
        result = estimation.histfit(cfg.model, hist, init)
        params = result.params
        residual = result.residual
        if estimation.poor_fit(hist, residual):
            warnings.append("poor-fit: residual above 10% of the density scale")

    series = gof.pp_series(data, cfg.model, params)
    try:
        r2 = gof.r_squared_pp(series)
    except DomainError:
        r2 = None
        warnings.append("too few points for a PP R-squared")
    mids = hist.midpoints
    overlay = dist.pdf(cfg.model, params, mids)

    report = estimation.FitReport(
        model=cfg.model,
        method=cfg.method,
        params=params,
        count=len(data),
        pp_r_squared=r2,
        residual=residual,
        warnings=tuple(warnings),
    )
    payload = {
        "model": report.model,
        "method": report.method,
        "count": report.count,
        "params": dataclasses.asdict(params),
        "pp_r_squared": report.pp_r_squared,
        "residual": report.residual,
        "warnings": list(report.warnings),
    }
    dataio.write_json(cfg.output + ".report.json", payload)
    dataio.write_csv(
        cfg.output + ".hist.csv",
        ["bin_lo", "bin_hi", "count", "density", "fitted_pdf"],
        zip(
            hist.edges[:-1],
            hist.edges[1:],
            (int(c) for c in hist.counts),
            hist.densities,
            overlay,
        ),
    )
    dataio.write_csv(
        cfg.output + ".pp.csv",
        ["p_exp", "p_theo"],
        zip(series.p_exp, series.p_theo),
    )
    if cfg.svg:
        dense = np.linspace(float(hist.edges[0]), float(hist.edges[-1]), 257)
        plots.render_fit(cfg.svg, hist, dense, dist.pdf(cfg.model, params, dense), series)
    param_text = " ".join(
        f"{name}={value:.10g}" for name, value in dataclasses.asdict(params).items()
    )
    r2_text = "n/a" if r2 is None else f"{r2:.6f}"
    print(
        f"fit model={cfg.model} method={cfg.method} n={report.count} "
        f"{param_text} pp_r_squared={r2_text}"
    )
    for note in warnings:
        print(f"warning: {note}")
    return report


def run_eval(cfg: RunConfig) -> None:
    params = _build_core_params(cfg)
    lo = cfg.lo if cfg.lo is not None else dist.quantile(cfg.model, params, 1e-4)
    hi = cfg.hi if cfg.hi is not None else dist.quantile(cfg.model, params, 1.0 - 1e-4)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError(f"bad grid range [{lo!r}, {hi!r}]")
    if cfg.points is None or cfg.points < 2:
        raise DomainError(f"points must be at least 2, got {cfg.points!r}")
    grid = np.linspace(lo, hi, cfg.points)
    pdf_vals = dist.pdf(cfg.model, params, grid)
    cdf_vals = dist.cdf_many(cfg.model, params, grid)
    dataio.write_csv(cfg.output, ["x", "pdf", "cdf"], zip(grid, pdf_vals, cdf_vals))
    if cfg.svg:
        plots.render_curves(cfg.svg, grid, pdf_vals, cdf_vals)
    print(
        f"eval model={cfg.model} points={cfg.points} "
        f"range=[{lo:.10g}, {hi:.10g}] output={cfg.output}"
    )


def run_sample(cfg: RunConfig) -> None:
    params = _build_core_params(cfg)
    if cfg.count is None:
        raise _UsageError("sample requires --count")
    req = sampling.SampleRequest(cfg.model, params, cfg.count, cfg.seed)
    draws = sampling.sample(req)
    dataio.write_csv(cfg.output, ["value"], ([v] for v in draws))
    if cfg.svg:
        plots.render_histogram(cfg.svg, draws)
    print(
        f"sample model={cfg.model} count={req.count} seed={req.seed} "
        f"output={cfg.output}"
    )


def _oracle_window(cfg: RunConfig, center: float, spread: float, hi_cap: int):
    lo = max(1, int(math.floor(center - 6.0 * spread)))
    hi = min(hi_cap, int(math.ceil(center + 6.0 * spread)))
    if cfg.lo is not None:
        lo = max(1, int(cfg.lo))
    if cfg.hi is not None:
        hi = min(hi_cap, int(cfg.hi))
    if hi < lo:
        raise DomainError(f"empty m window [{lo}, {hi}]")
    return range(lo, hi + 1)


def run_oracle(cfg: RunConfig) -> None:
    trial = discrete.TrialSpec(n=cfg.count, p=cfg.mu)
    center = trial.n * trial.p
    spread = math.sqrt(trial.n * trial.p * trial.q)
    if cfg.model == "continuity":
        table = discrete.continuity_check(trial)
        dataio.write_csv(
            cfg.output,
            ["chi", "scaled_pmf", "density", "rel_deviation"],
            zip(table.chi, table.scaled_pmf, table.density, table.rel_deviation),
        )
        if cfg.svg:
            plots.render_oracle(cfg.svg, table.chi, table.density, table.scaled_pmf)
        print(
            f"oracle model=continuity n={trial.n} p={trial.p:.10g} "
            f"sup_rel_deviation={table.sup_rel_deviation:.6e}"
        )
        return
    if cfg.model == "binomial":
        ms = _oracle_window(cfg, center, spread, trial.n - 1)
        exact = [discrete.binomial_pmf_exact(trial, m) for m in ms]
        approx = [discrete.demoivre_approx(trial, m) for m in ms]
    else:
        lam = center
        ms = _oracle_window(cfg, lam, math.sqrt(lam), trial.n)
        exact = [discrete.poisson_pmf_exact(lam, m) for m in ms]
        approx = [discrete.poisson_approx(trial, m) for m in ms]
    rel = [abs(a - e) / e for e, a in zip(exact, approx)]
    dataio.write_csv(
        cfg.output,
        ["m", "exact", "approx", "rel_error"],
        zip(ms, exact, approx, rel),
    )
    if cfg.svg:
        plots.render_oracle(cfg.svg, list(ms), exact, approx)
    print(
        f"oracle model={cfg.model} n={trial.n} p={trial.p:.10g} "
        f"rows={len(rel)} max_rel_error={max(rel):.6e}"
    )


def run_horwitz(cfg: RunConfig) -> None:
    table = hz.horwitz_table(cfg.lo, cfg.hi, cfg.points)
    rows = [(pt.p, pt.n, pt.cv, hz.horwitz_cv(pt.p)) for pt in table]
    dataio.write_csv(
        cfg.output, ["p", "n", "cv_theoretical", "cv_horwitz"], rows
    )
    if cfg.svg:
        ps = [r[0] for r in rows]
        plots.render_horwitz(cfg.svg, ps, [r[2] for r in rows], [r[3] for r in rows])
    print(f"horwitz rows={len(rows)} range=[{cfg.lo:.10g}, {cfg.hi:.10g}]")


def run_compare_lognormal(cfg: RunConfig) -> None:
    if cfg.k is None or cfg.k <= 0:
        raise DomainError(f"--k must be positive, got {cfg.k!r}")
    report = lnb.closeness_report(math.sqrt(cfg.k), cfg.lo, cfg.hi, cfg.points)
    dataio.write_csv(
        cfg.output,
        ["r", "lhs", "rhs", "gap", "rel_gap", "pdf_skew", "pdf_lognormal"],
        zip(
            report.r,
            report.lhs,
            report.rhs,
            report.gap,
            report.rel_gap,
            report.pdf_skew,
            report.pdf_lognormal,
        ),
    )
    if cfg.svg:
        plots.render_compare(cfg.svg, report)
    print(
        f"compare-lognormal sigma={report.sigma:.10g} "
        f"max_rel_gap={report.max_rel_gap:.6e} r_squared={report.r_squared:.8f} "
        f"pdf_r_squared={report.pdf_r_squared:.8f} "
        f"pdf_sup_rel_diff={report.pdf_sup_rel_diff:.6e}"
    )


_HANDLERS = {
    "fit": run_fit,
    "eval": run_eval,
    "sample": run_sample,
    "oracle": run_oracle,
    "horwitz": run_horwitz,
    "compare-lognormal": run_compare_lognormal,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        cfg = _config_from(parser.parse_args(argv))
        _HANDLERS[cfg.command](cfg)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, DegenerateDataError, UnsupportedModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    sys.exit(main())
