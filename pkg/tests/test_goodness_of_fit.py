"""Histogram construction, PP series, and identity-line R squared."""

import numpy as np
import pytest

from intdist import NormalParams, UnlikelyParams, quantile
from intdist.errors import DegenerateDataError, DomainError
from intdist.estimation import Dataset
from intdist.goodness_of_fit import (
    PPSeries,
    build_histogram,
    pp_series,
    r_squared_identity,
    r_squared_pp,
)
from intdist.sampling import SampleRequest, sample

UNLIKELY = UnlikelyParams(mu=10.0, k=2.0)


def test_build_histogram_explicit_bins():
    hist = build_histogram(Dataset([0.0, 1.0, 2.0, 3.0]), bins=2)
    assert np.allclose(hist.edges, [0.0, 1.5, 3.0])
    assert list(hist.counts) == [2, 2]
    assert np.allclose(hist.densities, [1.0 / 3.0, 1.0 / 3.0])
    assert hist.total == 4


def test_histogram_densities_integrate_to_one():
    rng = np.random.Generator(np.random.Philox(key=50))
    for _ in range(50):
        n = int(rng.integers(10, 500))
        vals = rng.lognormal(0.0, 0.7, size=n)
        hist = build_histogram(Dataset(vals))
        assert abs(float(np.sum(hist.densities * hist.widths)) - 1.0) < 1e-12


def test_histogram_default_bin_count_clamped():
    rng = np.random.Generator(np.random.Philox(key=51))
    small = build_histogram(Dataset(rng.normal(0.0, 1.0, size=8)))
    assert 5 <= small.counts.size <= 200
    big = build_histogram(Dataset(rng.normal(0.0, 1.0, size=200_000)))
    assert 5 <= big.counts.size <= 200


def test_histogram_rejects_constant_data():
    with pytest.raises(DegenerateDataError):
        build_histogram(Dataset([2.0, 2.0, 2.0]))


def test_histogram_tracks_density_within_poisson_band():
    """Bin densities follow the sampling law: a 3 sigma Poisson band holds
    for at least 95% of default-rule bins at 10^5 draws."""
    from intdist import pdf

    xs = sample(SampleRequest(model="unlikely", params=UNLIKELY, count=100_000, seed=900))
    hist = build_histogram(Dataset(xs))
    dens = pdf("unlikely", UNLIKELY, hist.midpoints)
    n = hist.total
    expected = dens * n * hist.widths
    band = 3.0 * np.sqrt(np.maximum(expected, 1e-300)) / (n * hist.widths)
    frac = float(np.mean(np.abs(hist.densities - dens) <= band))
    assert frac >= 0.95


def test_pp_series_lattice():
    series = pp_series(Dataset([4.0, 2.0, 8.0, 6.0]), "unlikely", UNLIKELY)
    assert np.allclose(series.p_exp, [0.125, 0.375, 0.625, 0.875])
    assert np.all(np.diff(series.p_exp) > 0.0)
    assert np.all((series.p_theo >= 0.0) & (series.p_theo <= 1.0))


def test_pp_series_quantile_construction_is_diagonal():
    n = 64
    lattice = (np.arange(1, n + 1) - 0.5) / n
    xs = [quantile("unlikely", UNLIKELY, q) for q in lattice]
    series = pp_series(Dataset(xs), "unlikely", UNLIKELY)
    assert np.max(np.abs(series.p_theo - series.p_exp)) < 1e-6


def test_pp_series_ties_keep_lattice():
    series = pp_series(Dataset([2.0, 2.0, 2.0, 5.0]), "unlikely", UNLIKELY)
    assert np.allclose(series.p_exp, [0.125, 0.375, 0.625, 0.875])
    assert series.p_theo[0] == series.p_theo[1] == series.p_theo[2]


def test_pp_series_names_offending_value():
    with pytest.raises(DomainError, match="-3"):
        pp_series(Dataset([1.0, -3.0]), "unlikely", UNLIKELY)


def test_r_squared_pp_perfect_and_flat():
    lattice = (np.arange(1, 10) - 0.5) / 9
    perfect = PPSeries(p_exp=lattice, p_theo=lattice.copy())
    assert r_squared_pp(perfect) == pytest.approx(1.0)
    flat = PPSeries(p_exp=lattice, p_theo=np.full(9, 0.5))
    assert r_squared_pp(flat) == pytest.approx(0.0, abs=1e-12)


def test_r_squared_pp_needs_three_points():
    two = PPSeries(p_exp=np.array([0.25, 0.75]), p_theo=np.array([0.2, 0.8]))
    with pytest.raises(DomainError):
        r_squared_pp(two)


def test_r_squared_identity_basic():
    x = np.array([1.0, 2.0, 3.0, 4.0])
    assert r_squared_identity(x, x) == pytest.approx(1.0)
    assert r_squared_identity(x, x + 0.1) < 1.0


def test_wrong_model_scores_lower():
    xs = sample(SampleRequest(model="unlikely", params=UNLIKELY, count=5000, seed=601))
    data = Dataset(xs)
    right = r_squared_pp(pp_series(data, "unlikely", UNLIKELY))
    matched = NormalParams(mu=float(np.mean(xs)), sigma=float(np.std(xs, ddof=1)))
    wrong = r_squared_pp(pp_series(data, "normal", matched))
    assert right > wrong


def test_median_r_squared_nondecreasing_in_sample_size():
    medians = []
    for count in (1000, 10_000):
        vals = []
        for seed in range(610, 620):
            xs = sample(SampleRequest(model="unlikely", params=UNLIKELY, count=count, seed=seed))
            data = Dataset(xs)
            vals.append(r_squared_pp(pp_series(data, "unlikely", UNLIKELY)))
        medians.append(float(np.median(vals)))
    assert medians[1] >= medians[0]
