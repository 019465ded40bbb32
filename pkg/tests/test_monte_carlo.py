import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import gamma as gamma_dist

from coopmac.analytic_bounds import averaged_bounds
from coopmac.channel_model import ChannelParams, g_joint, p_success_direct
from coopmac.monte_carlo import (
    CONTOUR_DEFAULT_RK,
    DENSITY_GRID,
    ExperimentConfig,
    SimEstimate,
    contour_grid,
    estimate_throughput,
    reproduce_figure,
)

PARAMS = ChannelParams()


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(densities=(-0.001,))
    with pytest.raises(ValueError):
        ExperimentConfig(scheme="greedy")
    with pytest.raises(ValueError):
        ExperimentConfig(regime="E")
    with pytest.raises(ValueError):
        ExperimentConfig(estimator_mode="exact")
    with pytest.raises(ValueError):
        ExperimentConfig(k=0)


def test_density_grid_matches_sweep():
    assert DENSITY_GRID[0] == 0.0005
    assert DENSITY_GRID[-1] == 0.005
    assert len(DENSITY_GRID) == 10


def test_determinism_across_runs_and_workers():
    config = ExperimentConfig(densities=(0.002, 0.004), scheme="both", regime="C", trials=6000, base_seed=17)
    a = estimate_throughput(config)
    b = estimate_throughput(config)
    c = estimate_throughput(config, workers=2)
    assert a == b == c


def test_chunk_size_does_not_change_uncached_layout():
    # same seed, different chunking -> different but statistically equal
    base = ExperimentConfig(densities=(0.002,), regime="C", trials=8000, base_seed=3)
    alt = ExperimentConfig(densities=(0.002,), regime="C", trials=8000, base_seed=3, chunk_size=2000)
    ea = estimate_throughput(base)[0]
    eb = estimate_throughput(alt)[0]
    assert abs(ea.mean - eb.mean) < 3 * np.hypot(ea.stderr, eb.stderr)


def test_stderr_scaling():
    small = estimate_throughput(ExperimentConfig(densities=(0.002,), regime="C", trials=5000, base_seed=1))[0]
    big = estimate_throughput(ExperimentConfig(densities=(0.002,), regime="C", trials=20000, base_seed=2))[0]
    assert big.stderr == pytest.approx(small.stderr / 2, rel=0.2)


def test_analytic_and_sampled_means_agree():
    an = estimate_throughput(ExperimentConfig(densities=(0.003,), regime="C", trials=40000, base_seed=5))[0]
    sa = estimate_throughput(
        ExperimentConfig(densities=(0.003,), regime="C", trials=40000, base_seed=6, estimator_mode="sampled")
    )[0]
    assert abs(an.mean - sa.mean) < 3 * np.hypot(an.stderr, sa.stderr)


def _direct_average(a, b, rate):
    w = lambda r: 2 * r / (b * b - a * a)
    v, _ = quad(lambda r: float(p_success_direct(r)) * rate * w(r), max(a, 1e-9), b)
    return v


def test_direct_only_classes_match_quadrature():
    for regime, a, b, rate in (("A", 0.0, 48.2, 11.0), ("B", 48.2, 67.1, 5.5)):
        est = estimate_throughput(
            ExperimentConfig(densities=(0.002,), regime=regime, trials=40000, base_seed=4)
        )[0]
        expected = _direct_average(a, b, rate)
        assert abs(est.mean - expected) < 4 * est.stderr


def test_vanishing_density_collapses_to_direct():
    est = estimate_throughput(
        ExperimentConfig(densities=(1e-7,), regime="C", trials=30000, base_seed=4)
    )[0]
    expected = _direct_average(67.1, 74.7, 2.0)
    assert abs(est.mean - expected) < 4 * max(est.stderr, 1e-6)


def test_proposed_beats_conventional():
    config = ExperimentConfig(densities=(0.001, 0.005), scheme="both", regime="C", trials=20000, base_seed=21)
    ests = {(e.density, e.scheme): e for e in estimate_throughput(config)}
    for lam in (0.001, 0.005):
        p = ests[(lam, "proposed")]
        c = ests[(lam, "conventional")]
        assert p.mean - c.mean > 3 * np.hypot(p.stderr, c.stderr)


def test_k_conditioned_estimates_bracketed():
    # normalize the band partial expectation to compare with the
    # band-conditional simulation mean
    k, lam = 20, 0.001
    a, b = 67.1, 74.7
    mass = gamma_dist.cdf(lam * np.pi * b * b, k) - gamma_dist.cdf(lam * np.pi * a * a, k)
    pair = averaged_bounds("C", lam, k=k)
    est = estimate_throughput(
        ExperimentConfig(densities=(lam,), regime="C", trials=30000, base_seed=8, k=k)
    )[0]
    assert pair.lower / mass - 3 * est.stderr <= est.mean <= pair.upper / mass + 3 * est.stderr


# ---------------------------------------------------------------- contour_grid

def test_contour_values_respect_rate_ceilings():
    grid = contour_grid("C", params=PARAMS)
    v = grid["throughput"]
    t = grid["tier"]
    assert np.nanmax(v) <= 5.5
    assert np.all(v[t == 2][~np.isnan(v[t == 2])] <= 11 / 3 + 1e-9)
    assert np.all(v[t == 3][~np.isnan(v[t == 3])] <= 2.75 + 1e-9)
    assert np.all(np.isnan(v[t == 0]))


def test_contour_max_at_midpoint_for_type_c():
    grid = contour_grid("C", r_k=70.0, resolution=0.25, params=PARAMS)
    v = grid["throughput"]
    i, j = np.unravel_index(np.nanargmax(v), v.shape)
    assert grid["x"][j] == pytest.approx(35.0, abs=0.5)
    assert grid["y"][i] == pytest.approx(0.0, abs=0.5)
    assert np.nanmax(v) == pytest.approx(float(g_joint(35, 35)) * 5.5, abs=1e-3)


def test_contour_default_rk_and_validation():
    grid = contour_grid("D2")
    assert grid["r_k"] == CONTOUR_DEFAULT_RK["D2"]
    with pytest.raises(ValueError):
        contour_grid("C", r_k=80.0)
    with pytest.raises(ValueError):
        contour_grid("X")
    with pytest.raises(ValueError):
        contour_grid("C", resolution=0.0)


# ------------------------------------------------------------ reproduce_figure

def test_reproduce_unknown_figure():
    with pytest.raises(ValueError, match="fig7"):
        reproduce_figure("fig11")


def test_reproduce_fig7_small_run():
    rows = reproduce_figure("fig7", densities=(0.001, 0.004), trials=3000, base_seed=2)
    assert len(rows) == 2
    for row in rows:
        assert row["regime"] == "C"
        assert row["upper"] >= row["lower"]
        assert set(row) >= {"density", "upper", "proposed", "conventional", "lower"}


def test_reproduce_fig9_covers_both_regimes():
    rows = reproduce_figure("fig9", densities=(0.002,), trials=2000, base_seed=2)
    assert {row["regime"] for row in rows} == {"D1", "D2"}


def test_reproduce_contour_rows():
    rows = reproduce_figure("contour_c")
    assert rows
    assert all(set(r) == {"x", "y", "throughput", "tier"} for r in rows)
    assert max(r["throughput"] for r in rows) <= 5.5
