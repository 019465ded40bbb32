"""Seeded Monte-Carlo estimation of cooperative throughput.

Each trial places a source at the origin and a destination at a distance
drawn from the link-class band (uniform-area law by default), drops a PPP
of helpers around the link, runs the selection scheme, and scores the
trial's throughput.  Trials are generated in fixed-size chunks whose rng
streams are derived from (base seed, cell, chunk index), so results are
bit-identical for a given seed regardless of how chunks are distributed
across workers.

Throughput scoring follows the rate-times-success-probability metric: in
analytic mode a trial contributes rate * G(d_SH, d_HD) of the selected
helper (or rate * Ps(r) for direct fallback); sampled mode replaces the
probability with a Bernoulli draw of the same mean.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.stats import gamma as _gamma_dist

from .channel_model import ChannelParams, g_joint, p_success_direct
from .stochastic_geometry import BAND_11, BAND_2, BAND_55, MAX_RANGE, tier_index
from .protocol import TIER_RATES
from .analytic_bounds import REGIMES

_BANDS = {
    "A": (0.0, BAND_11),
    "B": (BAND_11, BAND_55),
    "C": REGIMES["C"][:2],
    "D1": REGIMES["D1"][:2],
    "D2": REGIMES["D2"][:2],
    "all": (0.0, MAX_RANGE),
}

# helpers are only useful within 74.7 m of both endpoints
_HELPER_REACH = BAND_2

_TIER_RATE_ARR = np.array([0.0] + [TIER_RATES[t] for t in (1, 2, 3, 4, 5)])

# r_k used for the contour figures when not overridden: class-range midpoint
CONTOUR_DEFAULT_RK = {"C": 70.9, "D1": 85.55, "D2": 98.2}

DENSITY_GRID = tuple(round(0.0005 * i, 6) for i in range(1, 11))


@dataclass(frozen=True)
class ExperimentConfig:
    """One Monte-Carlo experiment: density sweep x scheme x link regime."""

    densities: tuple = (0.001,)
    scheme: str = "proposed"  # proposed | conventional | both
    regime: str = "C"  # A | B | C | D1 | D2 | all
    trials: int = 200_000
    estimator_mode: str = "analytic"  # analytic | sampled
    base_seed: int = 0
    channel: ChannelParams = field(default_factory=ChannelParams)
    k: Optional[int] = None  # None -> ppp conditioning
    chunk_size: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "densities", tuple(float(d) for d in np.atleast_1d(self.densities)))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(d <= 0 for d in self.densities):
            raise ValueError("densities must be positive")
        if self.scheme not in ("proposed", "conventional", "both"):
            raise ValueError("unknown scheme %r" % (self.scheme,))
        if self.regime not in _BANDS:
            raise ValueError("regime must be one of %s" % (sorted(_BANDS),))
        if self.estimator_mode not in ("analytic", "sampled"):
            raise ValueError("estimator_mode must be 'analytic' or 'sampled'")
        if self.k is not None and not (isinstance(self.k, (int, np.integer)) and self.k >= 1):
            raise ValueError("k must be an integer >= 1 or None")


@dataclass(frozen=True)
class SimEstimate:
    mean: float
    stderr: float
    trials: int
    density: float
    scheme: str
    regime: str
    seed: int


def _draw_link_distance(rng, n, band, density, k):
    """Per-trial S-D distance: area law on the band, or truncated kth-NN law."""
    a, b = band
    u = rng.uniform(size=n)
    if k is None:
        r = np.sqrt(a * a + u * (b * b - a * a))
    else:
        # lam*pi*r^2 is Gamma(k, 1) distributed; invert its CDF on the band
        lo = _gamma_dist.cdf(density * np.pi * a * a, k)
        hi = _gamma_dist.cdf(density * np.pi * b * b, k)
        r = np.sqrt(_gamma_dist.ppf(lo + u * (hi - lo), k) / (density * np.pi))
    return np.maximum(r, 1e-9)


def _direct_rate(r):
    return np.select([r < BAND_11, r < BAND_55, r < BAND_2], [11.0, 5.5, 2.0], default=1.0)


def _helper_points(rng, r_elig, density, k):
    """Candidate-helper positions for each eligible trial.

    PPP conditioning restricts the process to the bounding box of the two
    74.7 m reach disks (exact: a PPP restricted to a box is a PPP).
    k-nearest conditioning places the k-1 nearer neighbors uniformly in
    the disk of radius r around the source.
    """
    W = _HELPER_REACH
    if k is None:
        box_area = (r_elig + 2 * W) * (2 * W)
        counts = rng.poisson(density * box_area)
        tid = np.repeat(np.arange(r_elig.size), counts)
        total = int(counts.sum())
        x = rng.uniform(size=total) * (r_elig[tid] + 2 * W) - W
        y = (rng.uniform(size=total) * 2.0 - 1.0) * W
    else:
        counts = np.full(r_elig.size, k - 1)
        tid = np.repeat(np.arange(r_elig.size), counts)
        total = tid.size
        rad = r_elig[tid] * np.sqrt(rng.uniform(size=total))
        ang = rng.uniform(size=total) * 2.0 * np.pi
        x = rad * np.cos(ang)
        y = rad * np.sin(ang)
    return tid, x, y


def _chunk_throughput(regime, density, scheme, n, params, estimator_mode, k, rng):
    """Vectorized simulation of n trials; returns the throughput samples."""
    r = _draw_link_distance(rng, n, _BANDS[regime], density, k)
    ps_r = p_success_direct(r, params)
    rate = _direct_rate(r)
    success_p = ps_r.copy()

    elig = np.flatnonzero(r >= BAND_55)  # classes C and D benefit from helpers
    if elig.size:
        tid, x, y = _helper_points(rng, r[elig], density, k)
        d_sh = np.hypot(x, y)
        d_hd = np.hypot(x - r[elig][tid], y)
        tier = tier_index(d_sh, d_hd, "D")
        # Type-C links have no tier-4/5 rows
        tier[(r[elig][tid] < BAND_2) & (tier > 3)] = 0
        keep = tier > 0
        if np.any(keep):
            tid_k = tid[keep]
            tier_k = tier[keep]
            d_sh_k = d_sh[keep]
            g = g_joint(d_sh_k, d_hd[keep], params)
            if scheme == "proposed":
                order = np.lexsort((d_sh_k, -g, tier_k, tid_k))
            elif scheme == "conventional":
                order = np.lexsort((rng.uniform(size=g.size), tid_k))
            else:
                raise ValueError("unknown scheme %r" % (scheme,))
            winners, first = np.unique(tid_k[order], return_index=True)
            sel = order[first]
            chosen = elig[winners]
            rate[chosen] = _TIER_RATE_ARR[tier_k[sel]]
            success_p[chosen] = g[sel]

    if estimator_mode == "sampled":
        return rate * (rng.uniform(size=n) < success_p)
    return rate * success_p


def _run_chunk(args):
    (regime, density, scheme, n, params, estimator_mode, k, base_seed, cell, chunk) = args
    rng = np.random.default_rng(np.random.SeedSequence(entropy=base_seed, spawn_key=(cell, chunk)))
    t = _chunk_throughput(regime, density, scheme, n, params, estimator_mode, k, rng)
    return float(t.sum()), float(np.dot(t, t))


def estimate_throughput(config: ExperimentConfig, workers: int = 1) -> List[SimEstimate]:
    """Run the experiment and return one estimate per (density, scheme) cell.

    Deterministic for a fixed base seed at any worker count: every chunk's
    rng stream depends only on (seed, cell index, chunk index) and the
    reduction is exactly-rounded summation in chunk order.
    """
    schemes = ("proposed", "conventional") if config.scheme == "both" else (config.scheme,)
    cells = [(d, s) for d in config.densities for s in schemes]

    jobs = []
    for cell_idx, (density, scheme) in enumerate(cells):
        left = config.trials
        chunk_idx = 0
        while left > 0:
            n = min(config.chunk_size, left)
            jobs.append(
                (
                    config.regime,
                    density,
                    scheme,
                    n,
                    config.channel,
                    config.estimator_mode,
                    config.k,
                    config.base_seed,
                    cell_idx,
                    chunk_idx,
                )
            )
            left -= n
            chunk_idx += 1

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_chunk, jobs, chunksize=4))
    else:
        results = [_run_chunk(j) for j in jobs]

    out = []
    for cell_idx, (density, scheme) in enumerate(cells):
        sums = [res[0] for job, res in zip(jobs, results) if job[8] == cell_idx]
        sqs = [res[1] for job, res in zip(jobs, results) if job[8] == cell_idx]
        n = config.trials
        total = math.fsum(sums)
        mean = total / n
        if n > 1:
            var = max(math.fsum(sqs) - n * mean * mean, 0.0) / (n - 1)
            stderr = math.sqrt(var / n)
        else:
            stderr = 0.0
        out.append(
            SimEstimate(
                mean=mean,
                stderr=stderr,
                trials=n,
                density=density,
                scheme=scheme,
                regime=config.regime,
                seed=config.base_seed,
            )
        )
    return out


def contour_grid(regime: str, r_k: Optional[float] = None, resolution: float = 0.5,
                 params: ChannelParams = ChannelParams()):
    """Cooperative-throughput map over helper positions for one link.

    The source sits at (0, 0) and the destination at (r_k, 0).  Each grid
    node inside a helper-tier region gets R_coop(tier) * G(d_SH, d_HD);
    nodes outside every tier region are NaN.  Returns a dict with 1-D
    ``x``/``y`` axes and a 2-D ``throughput`` array (y rows, x columns).
    """
    if regime not in ("C", "D1", "D2"):
        raise ValueError("regime must be C, D1 or D2")
    if r_k is None:
        r_k = CONTOUR_DEFAULT_RK[regime]
    lo, hi = _BANDS[regime]
    if not lo <= r_k <= hi:
        raise ValueError("r_k=%r outside the %s range" % (r_k, regime))
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    link_class = "C" if regime == "C" else "D"
    reach = BAND_55 if link_class == "C" else BAND_2
    x = np.arange(-reach, r_k + reach + resolution, resolution)
    y = np.arange(-reach, reach + resolution, resolution)
    xx, yy = np.meshgrid(x, y)
    d_sh = np.hypot(xx, yy)
    d_hd = np.hypot(xx - r_k, yy)
    tier = tier_index(d_sh, d_hd, link_class)
    value = np.full(xx.shape, np.nan)
    mask = tier > 0
    value[mask] = _TIER_RATE_ARR[tier[mask]] * g_joint(np.maximum(d_sh[mask], 1e-9), np.maximum(d_hd[mask], 1e-9), params)
    return {"x": x, "y": y, "throughput": value, "tier": tier, "r_k": float(r_k), "regime": regime}


def reproduce_figure(
    figure: str,
    densities=DENSITY_GRID,
    trials: int = 200_000,
    base_seed: int = 0,
    params: ChannelParams = ChannelParams(),
    k: Optional[int] = None,
    workers: int = 1,
):
    """Tabular dataset behind one of the headline figures.

    ``fig7``: Type-C density sweep (upper/proposed/conventional/lower).
    ``fig9``: Type-D sweep, one row group per regime (D1 and D2).
    ``fig10``: network-total sweep (all link classes combined).
    ``contour_c`` / ``contour_d1`` / ``contour_d2``: throughput maps.
    """
    from .analytic_bounds import averaged_bounds, total_throughput_bounds

    if figure in ("contour_c", "contour_d1", "contour_d2"):
        grid = contour_grid(figure.split("_", 1)[1].upper(), params=params)
        rows = []
        yy, xx = np.nonzero(~np.isnan(grid["throughput"]))
        for i, j in zip(yy, xx):
            rows.append({"x": float(grid["x"][j]), "y": float(grid["y"][i]),
                         "throughput": float(grid["throughput"][i, j]),
                         "tier": int(grid["tier"][i, j])})
        return rows
    if figure not in ("fig7", "fig9", "fig10"):
        raise ValueError(
            "unknown figure %r; valid ids: fig7, fig9, fig10, contour_c, contour_d1, contour_d2" % (figure,)
        )

    regimes = {"fig7": ("C",), "fig9": ("D1", "D2"), "fig10": ("all",)}[figure]
    rows = []
    for regime in regimes:
        config = ExperimentConfig(
            densities=tuple(densities),
            scheme="both",
            regime=regime,
            trials=trials,
            base_seed=base_seed,
            channel=params,
            k=k,
        )
        estimates = estimate_throughput(config, workers=workers)
        by_cell = {(e.density, e.scheme): e for e in estimates}
        for d in config.densities:
            if regime == "all":
                pair = total_throughput_bounds(d, k=k, params=params)
            else:
                pair = averaged_bounds(regime, d, k=k, params=params)
            row = {
                "density": d,
                "regime": regime,
                "upper": pair.upper,
                "proposed": by_cell[(d, "proposed")].mean,
                "conventional": by_cell[(d, "conventional")].mean,
                "lower": pair.lower,
                "proposed_stderr": by_cell[(d, "proposed")].stderr,
                "conventional_stderr": by_cell[(d, "conventional")].stderr,
            }
            rows.append(row)
    return rows
