import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import gamma as gamma_dist

from coopmac.analytic_bounds import (
    BoundPair,
    averaged_bounds,
    h_integral,
    link_bounds_at_distance,
    tier_bound_pair,
    tier_probabilities,
    total_throughput_bounds,
    type_ab_throughput,
)
from coopmac.channel_model import ChannelParams, g_joint, p_success_direct
from coopmac.stochastic_geometry import nn_distance_pdf, tier_region_areas

PARAMS = ChannelParams()


# ------------------------------------------------------------------ BoundPair

def test_bound_pair_orders_fields():
    with pytest.raises(ValueError):
        BoundPair(lower=2.0, upper=1.0)
    with pytest.raises(ValueError):
        BoundPair(lower=-0.5, upper=1.0)


# ------------------------------------------------------------------ h_integral

def test_h_integral_empty_interval():
    assert h_integral(10.0, 10.0, 1, 0.005) == 0.0


def test_h_integral_validation():
    with pytest.raises(ValueError):
        h_integral(-1.0, 10.0, 1, 0.005)
    with pytest.raises(ValueError):
        h_integral(10.0, 5.0, 1, 0.005)


def test_h_integral_bracketed_by_endpoint_probabilities():
    # the integrand is Ps(r) * f(r) with Ps decreasing, so the value lies
    # between Ps(r_max) and Ps(r_min) times the interval mass
    k, lam = 1, 0.005
    mass = gamma_dist.cdf(lam * np.pi * 48.2**2, k)
    val = h_integral(0.0, 48.2, k, lam)
    assert float(p_success_direct(48.2)) * mass < val < mass


def test_h_integral_against_trapezoid_oracle():
    k, lam = 3, 0.002
    r = np.linspace(1e-6, 67.1, 100_001)
    integrand = p_success_direct(r) * nn_distance_pdf(k, lam, r)
    expected = np.trapezoid(integrand, r)
    assert h_integral(0.0, 67.1, k, lam) == pytest.approx(expected, abs=1e-6)


def test_degenerate_channel_reduces_to_interval_mass():
    # with the success probability replaced by 1, the integral is just the
    # kth-neighbor interval probability; emulate by integrating the pdf
    k, lam = 4, 0.001
    from coopmac.quadrature import adaptive_simpson

    mass = adaptive_simpson(lambda r: nn_distance_pdf(k, lam, r), 48.2, 67.1)
    expected = gamma_dist.cdf(lam * np.pi * 67.1**2, k) - gamma_dist.cdf(lam * np.pi * 48.2**2, k)
    assert mass == pytest.approx(expected, abs=1e-8)


# ---------------------------------------------------------- type_ab_throughput

def test_type_ab_throughput_is_h_times_rate():
    k, lam = 2, 0.003
    assert type_ab_throughput("A", k, lam) == pytest.approx(h_integral(0, 48.2, k, lam) * 11.0)
    assert type_ab_throughput("B", k, lam) == pytest.approx(h_integral(48.2, 67.1, k, lam) * 5.5)
    with pytest.raises(ValueError):
        type_ab_throughput("C", k, lam)


# --------------------------------------------------------- tier_probabilities

def test_tier_probs_sum_to_one_random_tuples():
    rng = np.random.default_rng(6)
    for _ in range(100):
        link_class = "C" if rng.random() < 0.5 else "D"
        lo, hi = (67.1, 74.7) if link_class == "C" else (74.7, 100.0)
        r_k = rng.uniform(lo, hi)
        if rng.random() < 0.5:
            vec = tier_probabilities(link_class, r_k, density=float(rng.uniform(1e-4, 1e-2)))
        else:
            vec = tier_probabilities(link_class, r_k, k=int(rng.integers(1, 40)))
        total = sum(vec.probs.values()) + vec.residual
        assert total == pytest.approx(1.0, abs=1e-12)
        assert all(0.0 <= p <= 1.0 for p in vec.probs.values())


def test_tier_probs_k1_all_zero():
    vec = tier_probabilities("C", 70.0, k=1)
    assert all(p == 0.0 for p in vec.probs.values())
    assert vec.residual == 1.0


def test_tier_probs_ppp_value():
    areas = tier_region_areas("C", 70.0)
    vec = tier_probabilities("C", 70.0, density=0.005)
    expected = 1.0 - np.exp(-0.005 * areas.area(1))
    assert vec.probs[1] == pytest.approx(expected, abs=1e-12)
    assert vec.probs[1] == pytest.approx(0.9976, abs=5e-4)


def test_tier_probs_d_tier1_zero_past_96_4():
    vec = tier_probabilities("D", 97.0, density=0.005)
    assert vec.probs[1] == 0.0


def test_tier_probs_validation():
    with pytest.raises(ValueError):
        tier_probabilities("C", 80.0, density=0.001)
    with pytest.raises(ValueError):
        tier_probabilities("C", 70.0)
    with pytest.raises(ValueError):
        tier_probabilities("C", 70.0, density=0.001, k=3)


def test_tier_probs_match_simulation_frequency():
    # independent oracle: greedy tier-priority selection over PPP draws
    from coopmac.stochastic_geometry import sample_ppp, tier_index

    lam, r_k = 0.002, 70.0
    hits = np.zeros(4)  # tiers 1..3 plus residual
    n = 4000
    for s in range(n):
        real = sample_ppp(lam, (-70, -70, 140, 70), seed=31000 + s)
        tiers = tier_index(
            np.hypot(real.nodes[:, 0], real.nodes[:, 1]),
            np.hypot(real.nodes[:, 0] - r_k, real.nodes[:, 1]),
            "C",
        )
        present = tiers[tiers > 0]
        hits[int(present.min()) - 1 if present.size else 3] += 1
    vec = tier_probabilities("C", r_k, density=lam)
    for tier in (1, 2, 3):
        p = vec.probs[tier]
        stderr = np.sqrt(max(p * (1 - p), 1e-6) / n)
        assert abs(hits[tier - 1] / n - p) < 4 * stderr


# ------------------------------------------------------------ tier_bound_pair

def test_c_tier1_bounds_at_70():
    pair = tier_bound_pair("C", 1, 70.0, PARAMS)
    assert pair.lower == pytest.approx(float(g_joint(48.2, 48.2)) * 5.5, abs=1e-12)
    assert pair.lower == pytest.approx(4.4018, abs=1e-4)
    assert pair.upper == pytest.approx(float(g_joint(35, 35)) * 5.5, abs=1e-12)
    assert pair.upper == pytest.approx(5.2198, abs=1e-4)


def test_c_tier3_bounds():
    pair = tier_bound_pair("C", 3, 72.0, PARAMS)
    assert pair.lower == pytest.approx(float(g_joint(67.1, 67.1)) * 2.75, abs=1e-12)
    assert pair.lower == pytest.approx(1.3591, abs=1e-4)
    assert pair.upper == pytest.approx(float(g_joint(48.2, 48.2)) * 2.75, abs=1e-12)
    assert pair.upper == pytest.approx(2.2009, abs=1e-4)


def test_d1_tier5_bounds():
    pair = tier_bound_pair("D1", 5, 90.0, PARAMS)
    rate = 5.5 * 2 / 7.5
    assert pair.lower == pytest.approx(float(g_joint(67.1, 74.7)) * rate, abs=1e-12)
    assert pair.upper == pytest.approx(float(g_joint(48.2, 67.1)) * rate, abs=1e-12)


def test_d2_tier3_upper_uses_midpoint():
    pair = tier_bound_pair("D2", 3, 98.0, PARAMS)
    assert pair.upper == pytest.approx(float(g_joint(49, 49)) * 2.75, abs=1e-12)


def test_tier_bound_pair_errors():
    with pytest.raises(ValueError):
        tier_bound_pair("D2", 1, 98.0, PARAMS)
    with pytest.raises(ValueError):
        tier_bound_pair("C", 4, 70.0, PARAMS)
    with pytest.raises(ValueError):
        tier_bound_pair("C", 1, 80.0, PARAMS)


def test_tier2_upper_dominates_lower_everywhere():
    for r in np.linspace(67.2, 74.6, 20):
        pair = tier_bound_pair("C", 2, float(r), PARAMS)
        assert pair.lower <= pair.upper


# ---------------------------------------------------- link_bounds_at_distance

def test_link_bounds_collapse_without_helpers():
    pair = link_bounds_at_distance("C", 70.0, k=1)
    expected = float(p_success_direct(70.0)) * 2.0
    assert pair.lower == pytest.approx(expected)
    assert pair.upper == pytest.approx(expected)


def test_link_bounds_dense_limit_is_tier1_pair():
    pair = link_bounds_at_distance("C", 70.0, density=10.0)
    tier1 = tier_bound_pair("C", 1, 70.0, PARAMS)
    assert pair.lower == pytest.approx(tier1.lower, abs=1e-9)
    assert pair.upper == pytest.approx(tier1.upper, abs=1e-9)


def test_link_bounds_ordered_random():
    rng = np.random.default_rng(13)
    for _ in range(30):
        regime = rng.choice(["C", "D1", "D2"])
        lo, hi = {"C": (67.1, 74.7), "D1": (74.7, 96.4), "D2": (96.4, 100.0)}[regime]
        pair = link_bounds_at_distance(regime, float(rng.uniform(lo, hi)), density=float(rng.uniform(1e-4, 6e-3)))
        assert 0.0 <= pair.lower <= pair.upper


# ------------------------------------------------------------- averaged_bounds

def test_averaged_bounds_against_scipy_quad():
    lam = 0.005
    a, b = 67.1, 74.7
    w = lambda r: 2 * r / (b * b - a * a)
    lo_expected, _ = quad(lambda r: link_bounds_at_distance("C", r, density=lam).lower * w(r), a, b)
    hi_expected, _ = quad(lambda r: link_bounds_at_distance("C", r, density=lam).upper * w(r), a, b)
    pair = averaged_bounds("C", lam)
    assert pair.lower == pytest.approx(lo_expected, abs=1e-6)
    assert pair.upper == pytest.approx(hi_expected, abs=1e-6)


def test_averaged_bounds_quadrature_self_check():
    lam = 0.002
    coarse = averaged_bounds("D1", lam, tol=1e-8)
    fine = averaged_bounds("D1", lam, tol=5e-9)
    assert abs(coarse.lower - fine.lower) < 1e-6
    assert abs(coarse.upper - fine.upper) < 1e-6


def test_averaged_bounds_monotone_in_density():
    grid = [0.0005 * i for i in range(1, 11)]
    for regime in ("C", "D1", "D2"):
        pairs = [averaged_bounds(regime, lam) for lam in grid]
        lowers = [p.lower for p in pairs]
        uppers = [p.upper for p in pairs]
        assert all(a <= b + 1e-9 for a, b in zip(lowers, lowers[1:]))
        assert all(a <= b + 1e-9 for a, b in zip(uppers, uppers[1:]))


def test_averaged_bounds_k_conditioning_partial_expectation():
    # with k-nearest conditioning the average is weighted by the literal
    # kth-neighbor distance pdf (unnormalized over the class band)
    k, lam = 25, 0.001
    a, b = 67.1, 74.7
    lo_expected, _ = quad(
        lambda r: link_bounds_at_distance("C", r, k=k).lower * nn_distance_pdf(k, lam, r), a, b
    )
    pair = averaged_bounds("C", lam, k=k)
    assert pair.lower == pytest.approx(lo_expected, abs=1e-6)


# ----------------------------------------------------- total_throughput_bounds

def test_total_bounds_ppp_against_quad_oracle():
    lam = 0.005
    w = lambda r: 2 * r / 100.0**2

    def direct(a, b, rate):
        v, _ = quad(lambda r: float(p_success_direct(r)) * rate * w(r), max(a, 1e-9), b)
        return v

    expected_lo = direct(0, 48.2, 11.0) + direct(48.2, 67.1, 5.5)
    expected_hi = expected_lo
    for regime, (a, b) in {"C": (67.1, 74.7), "D1": (74.7, 96.4), "D2": (96.4, 100.0)}.items():
        lo, _ = quad(lambda r: link_bounds_at_distance(regime, r, density=lam).lower * w(r), a, b)
        hi, _ = quad(lambda r: link_bounds_at_distance(regime, r, density=lam).upper * w(r), a, b)
        expected_lo += lo
        expected_hi += hi
    pair = total_throughput_bounds(lam)
    assert pair.lower == pytest.approx(expected_lo, abs=1e-5)
    assert pair.upper == pytest.approx(expected_hi, abs=1e-5)


def test_total_bounds_k_conditioning_is_sum_of_parts():
    k, lam = 10, 0.001
    parts_lo = parts_hi = 0.0
    for regime in ("C", "D1", "D2"):
        p = averaged_bounds(regime, lam, k=k)
        parts_lo += p.lower
        parts_hi += p.upper
    ta = type_ab_throughput("A", k, lam)
    tb = type_ab_throughput("B", k, lam)
    pair = total_throughput_bounds(lam, k=k)
    assert pair.lower == pytest.approx(parts_lo + ta + tb, abs=1e-9)
    assert pair.upper == pytest.approx(parts_hi + ta + tb, abs=1e-9)
