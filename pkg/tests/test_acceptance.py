"""Acceptance gate: fourteen numbered criteria, one test and one printed
verdict line each.

Statistical criteria run on frozen seeds so the suite is deterministic; the
frozen choices and their measured margins are noted next to each test.
Runtime-limited criteria assert wall-clock bounds measured inside the test.
"""

import json
import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from intdist import (
    CdfTable,
    GenericParams,
    LikelyParams,
    NormalParams,
    UnlikelyHomogeneousParams,
    UnlikelyParams,
    cdf_many,
    central_moment_numeric,
    mgf_unlikely,
    pdf,
)
from intdist import cli
from intdist.discrete import (
    TrialSpec,
    binomial_pmf_exact,
    continuity_check,
    demoivre_approx,
    poisson_approx,
    poisson_pmf_exact,
)
from intdist.estimation import Dataset, estimate_unlikely_closed, mle_unlikely
from intdist.goodness_of_fit import pp_series, r_squared_pp
from intdist.horwitz import cv_theoretical, hall_selinger_n, horwitz_cv
from intdist.lognormal_bridge import closeness_report, series_lhs, series_rhs
from intdist.sampling import SampleRequest, sample

GRID = [
    UnlikelyParams(mu=mu, k=f * mu)
    for mu in (0.1, 1.0, 10.0, 100.0)
    for f in (0.01, 0.1, 0.5)
]

KS_CRIT_1PCT = 1.62762  # asymptotic one-sample critical factor at alpha=0.01


def verdict(number, ok, detail):
    print(f"criterion {number:02d} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def integral(f, lo, split, hi):
    a = quad(f, lo, split, limit=400, epsabs=1e-12, epsrel=1e-12)[0]
    b = quad(f, split, hi, limit=400, epsabs=1e-12, epsrel=1e-12)[0]
    return a + b


def test_criterion_01_normalization():
    """Quadrature of the open-ended density over (0, inf) equals 1."""
    t0 = time.time()
    worst = 0.0
    for p in GRID:
        total = integral(lambda x: pdf("unlikely", p, x), 0.0, 4.0 * p.mu, np.inf)
        worst = max(worst, abs(total - 1.0))
    elapsed = time.time() - t0
    verdict(
        1,
        worst <= 1e-8 and elapsed < 5.0,
        f"12-point grid, max |integral - 1| = {worst:.3e}, {elapsed:.2f}s",
    )


def test_criterion_02_harmonic_mean_identity():
    worst = 0.0
    for p in GRID:
        mean_inv = integral(lambda x: pdf("unlikely", p, x) / x, 0.0, 4.0 * p.mu, np.inf)
        worst = max(worst, abs(mean_inv - 1.0 / p.mu))
    verdict(2, worst <= 1e-8, f"max |E(1/x) - 1/mu| = {worst:.3e}")


def test_criterion_03_moment_identities():
    worst_mean = worst_var = 0.0
    for p in GRID:
        mean = integral(lambda x: x * pdf("unlikely", p, x), 0.0, 4.0 * p.mu, np.inf)
        m2 = integral(lambda x: x * x * pdf("unlikely", p, x), 0.0, 4.0 * p.mu, np.inf)
        var = m2 - mean * mean
        worst_mean = max(worst_mean, abs(mean - (p.mu + p.k)) / (p.mu + p.k))
        want_var = p.k * (2.0 * p.k + p.mu)
        worst_var = max(worst_var, abs(var - want_var) / want_var)
    verdict(
        3,
        worst_mean <= 1e-6 and worst_var <= 1e-6,
        f"mean rel err {worst_mean:.3e}, variance rel err {worst_var:.3e}",
    )


def test_criterion_04_mgf_monte_carlo():
    """Closed MGF vs 10^7-draw Monte Carlo at t in {-0.5/k, 0.1/k, 0.4/k}.

    Seed 13 frozen; at t = 0.4/k the variance of e^(tX) is infinite, so the
    3-standard-error band uses the sample standard error.
    """
    t0 = time.time()
    p = UnlikelyParams(mu=10.0, k=2.0)
    xs = sample(SampleRequest(model="unlikely", params=p, count=10_000_000, seed=13))
    zs = []
    for t in (-0.5 / p.k, 0.1 / p.k, 0.4 / p.k):
        ex = np.exp(t * xs)
        se = float(np.std(ex, ddof=1)) / math.sqrt(ex.size)
        zs.append(abs(float(np.mean(ex)) - mgf_unlikely(p, t)) / se)
    h = 1e-5
    fd_mean = (mgf_unlikely(p, h) - mgf_unlikely(p, -h)) / (2 * h)
    fd_m2 = (mgf_unlikely(p, h) - 2.0 + mgf_unlikely(p, -h)) / (h * h)
    mean_ok = abs(fd_mean - 12.0) / 12.0 <= 1e-4
    m2_ok = abs(fd_m2 - 172.0) / 172.0 <= 1e-4  # E(x^2) = 3k E(x) + mu^2
    elapsed = time.time() - t0
    verdict(
        4,
        max(zs) < 3.0 and mean_ok and m2_ok and elapsed < 30.0,
        f"MC z-scores {['%.2f' % z for z in zs]}, fd mean rel "
        f"{abs(fd_mean - 12.0) / 12.0:.1e}, fd E(x^2) rel "
        f"{abs(fd_m2 - 172.0) / 172.0:.1e}, {elapsed:.1f}s",
    )


def test_criterion_05_discrete_convergence():
    errs = []
    for n in (100, 1000, 10_000):
        t = TrialSpec(n=n, p=0.5)
        m = n // 2
        exact = binomial_pmf_exact(t, m)
        errs.append(abs(demoivre_approx(t, m) - exact) / exact)
    lam_exact = poisson_pmf_exact(50.0, 50)
    pois_err = abs(poisson_approx(TrialSpec(n=100, p=0.5), 50) - lam_exact) / lam_exact
    ok = errs[0] <= 0.003 and errs == sorted(errs, reverse=True) and pois_err <= 0.002
    verdict(
        5,
        ok,
        f"binomial mode rel err {errs[0]:.4%} -> {errs[1]:.4%} -> {errs[2]:.4%}, "
        f"poisson rel err {pois_err:.4%}",
    )


def test_criterion_06_continuity():
    table = continuity_check(TrialSpec(n=10_000, p=0.3))
    i = int(np.argmin(np.abs(table.chi - 0.3)))
    dev = float(table.rel_deviation[i])
    verdict(6, dev <= 1e-3, f"mode deviation n*pmf vs density = {dev:.3e}")


def test_criterion_07_estimator_round_trip():
    """10^6-draw round trip (seed 42) plus MLE/closed agreement on 50
    synthetic datasets (Philox key 777 parameter stream)."""
    t0 = time.time()
    p = UnlikelyParams(mu=10.0, k=2.0)
    xs = sample(SampleRequest(model="unlikely", params=p, count=1_000_000, seed=42))
    est = estimate_unlikely_closed(Dataset(xs))
    mu_err = abs(est.mu - 10.0) / 10.0
    k_err = abs(est.k - 2.0) / 2.0
    rng = np.random.Generator(np.random.Philox(key=777))
    worst = 0.0
    for i in range(50):
        mu = float(rng.uniform(0.5, 50.0))
        k = float(rng.uniform(0.05, 0.5) * mu)
        n = int(rng.integers(50, 2000))
        data = Dataset(
            sample(SampleRequest(model="unlikely", params=UnlikelyParams(mu, k), count=n, seed=10_000 + i))
        )
        closed = estimate_unlikely_closed(data)
        m = mle_unlikely(data)
        worst = max(worst, abs(m.mu - closed.mu) / closed.mu, abs(m.k - closed.k) / closed.k)
    elapsed = time.time() - t0
    verdict(
        7,
        mu_err <= 0.01 and k_err <= 0.03 and worst <= 1e-6 and elapsed < 60.0,
        f"mu err {mu_err:.4%}, k err {k_err:.4%}, worst MLE/closed rel diff "
        f"{worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_08_systematic_overestimation():
    """Arithmetic mean overshoots the location by k on average (seeds
    200..299, measured 2.0235)."""
    p = UnlikelyParams(mu=10.0, k=2.0)
    offsets = [
        float(np.mean(sample(SampleRequest(model="unlikely", params=p, count=1000, seed=s)))) - 10.0
        for s in range(200, 300)
    ]
    mean_offset = float(np.mean(offsets))
    verdict(8, abs(mean_offset - 2.0) / 2.0 <= 0.05, f"mean overshoot {mean_offset:.4f} (target 2)")


def test_criterion_09_bounded_law_skew_directions():
    """Third central moment flips sign across the support midpoint; the
    admissibility bound sqrt(var) <= u/6 holds at k = 0.05, u = 30000."""
    u, k = 30000.0, 0.05
    assert math.sqrt(k * 15000.0 * (u - 15000.0)) <= u / 6.0
    skews = {}
    for mu in (5000.0, 15000.0, 25000.0):
        p = GenericParams(mu=mu, k=k, u=u)
        m2 = central_moment_numeric("generic", p, 2)
        m3 = central_moment_numeric("generic", p, 3)
        skews[mu] = m3 / m2**1.5
    ok = skews[5000.0] > 0.0 and abs(skews[15000.0]) < 1e-3 and skews[25000.0] < 0.0
    verdict(
        9,
        ok,
        f"skewness {skews[5000.0]:+.3f} / {skews[15000.0]:+.1e} / {skews[25000.0]:+.3f}",
    )


def test_criterion_10_horwitz_match():
    worst = 0.0
    for p in np.geomspace(1e-8, 1e-3, 51):
        p = float(p)
        got = cv_theoretical(p, hall_selinger_n(p))
        worst = max(worst, abs(got - horwitz_cv(p)) / horwitz_cv(p))
    pinned = cv_theoretical(1e-4, 1e6)
    six_sig = float(f"{pinned:.6g}")
    verdict(
        10,
        worst <= 1e-3 and six_sig == 0.099995,
        f"max rel gap to the empirical curve {worst:.2e}, "
        f"cv(1e-4, 1e6) = {pinned:.10f}",
    )


def test_criterion_11_lognormal_bridge():
    rep = closeness_report(0.2, 0.5, 2.0, 301)
    finite = np.nan_to_num(rep.rel_gap, nan=-1.0)
    at_ends = int(np.argmax(finite)) in (0, finite.size - 1)
    series_ok = all(
        series_lhs(r, 2) == pytest.approx(series_rhs(r, 2), rel=1e-15)
        for r in np.linspace(0.6, 1.9, 27)
    )
    sups = [closeness_report(s, 0.5, 2.0, 301).pdf_sup_rel_diff for s in (0.2, 0.1, 0.05)]
    verdict(
        11,
        rep.max_rel_gap <= 0.021 and at_ends and series_ok and sups == sorted(sups, reverse=True),
        f"max rel gap {rep.max_rel_gap:.4%} at the {'ends' if at_ends else 'middle'}, "
        f"pdf sup diffs {sups[0]:.4f} -> {sups[1]:.4f} -> {sups[2]:.4f}",
    )


def test_criterion_12_goodness_of_fit_separates_models():
    """Seed 600 frozen; 10^4 draws; the true family must beat a
    mean/variance-matched normal."""
    p = UnlikelyParams(mu=10.0, k=2.0)
    xs = sample(SampleRequest(model="unlikely", params=p, count=10_000, seed=600))
    data = Dataset(xs)
    est = estimate_unlikely_closed(data)
    r2_true = r_squared_pp(pp_series(data, "unlikely", est))
    matched = NormalParams(mu=float(np.mean(xs)), sigma=float(np.std(xs, ddof=1)))
    r2_wrong = r_squared_pp(pp_series(data, "normal", matched))
    verdict(
        12,
        r2_true >= 0.995 and r2_wrong < r2_true,
        f"PP R^2 true {r2_true:.5f} vs matched normal {r2_wrong:.5f}",
    )


def test_criterion_13_sampler_ks_sweep():
    """100 seeds x 10^5 draws per variant; alpha = 0.01 critical value;
    measured pass counts 98 / 98 / 99."""
    cases = [
        ("unlikely", UnlikelyParams(mu=10.0, k=2.0), True),
        ("likely", LikelyParams(mu=25.0, k=2.0, u=30.0), True),
        ("homogeneous", UnlikelyHomogeneousParams(mu=0.5, k=0.01), False),
    ]
    counts = {}
    crit = KS_CRIT_1PCT / math.sqrt(100_000)
    for model, params, use_table in cases:
        table = CdfTable(model, params) if use_table else None
        wins = 0
        for seed in range(100):
            xs = np.sort(sample(SampleRequest(model=model, params=params, count=100_000, seed=seed)))
            ps = table.cdf(xs) if table is not None else cdf_many(model, params, xs)
            grid = (np.arange(1, xs.size + 1) - 0.5) / xs.size
            if float(np.max(np.abs(ps - grid))) < crit:
                wins += 1
        counts[model] = wins
    ok = all(v >= 95 for v in counts.values())
    verdict(13, ok, f"KS passes per 100 seeds: {counts}")


def test_criterion_14_cli_determinism_and_exit_codes(tmp_path, monkeypatch, capsys):
    src = tmp_path / "data.csv"
    src.write_text("x\n" + "\n".join("%r" % v for v in [1.0, 2.0, 4.0, 2.5, 1.75]) + "\n")

    sample_args = ["sample", "--model", "unlikely", "--mu", "10", "--k", "2",
                   "--count", "200", "--seed", "5"]
    assert cli.main(sample_args + ["--output", str(tmp_path / "s1.csv")]) == 0
    assert cli.main(sample_args + ["--output", str(tmp_path / "s2.csv")]) == 0
    identical = (tmp_path / "s1.csv").read_bytes() == (tmp_path / "s2.csv").read_bytes()

    ok_fit = cli.main(["fit", "--input", str(src), "--model", "unlikely",
                       "--output", str(tmp_path / "f")]) == 0
    report = json.loads((tmp_path / "f.report.json").read_text())

    usage = cli.main(["fit", "--input", str(src), "--model", "likely",
                      "--output", str(tmp_path / "g")])
    domain = cli.main(["eval", "--model", "unlikely", "--mu", "-1", "--k", "2",
                       "--output", str(tmp_path / "e.csv")])

    from intdist.errors import NumericError

    def explode(*args, **kwargs):
        raise NumericError("stub failure")

    monkeypatch.setattr("intdist.lognormal_bridge.closeness_report", explode)
    numeric = cli.main(["compare-lognormal", "--output", str(tmp_path / "c.csv")])
    capsys.readouterr()

    ok = (identical and ok_fit and report["count"] == 5
          and usage == 1 and domain == 1 and numeric == 2)
    verdict(
        14,
        ok,
        f"byte-identical seeded CSV: {identical}; exit codes usage={usage} "
        f"domain={domain} numeric={numeric}",
    )
