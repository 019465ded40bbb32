"""Closed-form throughput expressions and lower/upper bounds.

For a class C or D link the average cooperative throughput is a mixture
over helper tiers: with probability P_i the best available helper sits in
tier i (contributing tier-rate x joint success probability), and with the
residual probability no beneficial helper exists and the link falls back
to direct transmission.  The per-tier success probability is bracketed by
evaluating the two-hop success G at the extremal helper positions inside
the tier region, which yields computable lower/upper bounds on the mean
throughput.

Two conditionings are supported for the tier probabilities:

- ``ppp`` (default): the helper field is an unconditioned PPP, so the
  probability that a region of area S is empty is exp(-density*S).
- ``k``-nearest: the destination is the kth nearest neighbor of the
  source, leaving k-1 nodes uniform in the disk of radius r_k, giving
  (1 - cum_area/(pi r_k^2))**(k-1) telescoping differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel_model import ChannelParams, g_joint, p_success_direct
from .quadrature import adaptive_simpson
from .stochastic_geometry import (
    BAND_11,
    BAND_2,
    BAND_55,
    MAX_RANGE,
    TIER1_MAX_SEPARATION,
    _areas_c,
    _areas_d,
    nn_distance_pdf,
)
from .protocol import TIER_RATES

# regime -> (r_k range, direct rate Mbps).  D splits at 96.4 m, beyond
# which no tier-1 helper can exist.
REGIMES = {
    "C": (BAND_55, BAND_2, 2.0),
    "D1": (BAND_2, TIER1_MAX_SEPARATION, 1.0),
    "D2": (TIER1_MAX_SEPARATION, MAX_RANGE, 1.0),
}


@dataclass(frozen=True)
class BoundPair:
    """Lower/upper throughput bounds in Mbps, with provenance context."""

    lower: float
    upper: float
    context: tuple = ()

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper + 1e-12):
            raise ValueError("bounds out of order: %r > %r" % (self.lower, self.upper))


@dataclass(frozen=True)
class TierProbabilityVector:
    """Probability that helper selection settles on each tier.

    `probs` maps tier index to probability; `residual` is the
    no-beneficial-helper (direct transmission) probability.  Entries and
    residual sum to 1.
    """

    link_class: str
    r_k: float
    probs: dict
    residual: float
    conditioning: tuple  # ("ppp", density) or ("k", k)


def _regime_info(regime: str):
    regime = str(regime).upper()
    if regime == "D":
        raise ValueError("use 'D1' or 'D2' to pick the Type-D regime")
    if regime not in REGIMES:
        raise ValueError("regime must be one of %s, got %r" % (sorted(REGIMES), regime))
    return regime, REGIMES[regime]


def _check_regime_distance(regime: str, r_k: float):
    regime, (lo, hi, rate) = _regime_info(regime)
    if not lo <= r_k <= hi:
        raise ValueError("r_k=%r outside the %s range [%s, %s]" % (r_k, regime, lo, hi))
    return regime, lo, hi, rate


def h_integral(r_min: float, r_max: float, k: int, density: float, params: ChannelParams = ChannelParams()) -> float:
    """Integral of Q(nu + mu*log10 r) against the kth-NN distance PDF.

    The building block of the Type A/B throughput expressions: the
    probability that the kth neighbor lies in [r_min, r_max] *and* a
    direct transmission to it succeeds.
    """
    if r_min < 0 or r_max < r_min:
        raise ValueError("need 0 <= r_min <= r_max")
    if r_min == r_max:
        return 0.0

    def integrand(r):
        if r <= 0.0:
            return 0.0
        return float(p_success_direct(r, params)) * nn_distance_pdf(k, density, r)

    return adaptive_simpson(integrand, r_min, r_max)


def type_ab_throughput(link_class: str, k: int, density: float, params: ChannelParams = ChannelParams()) -> float:
    """Average direct throughput (Mbps) of a class A or B link.

    Class A: H(0, 48.2) x 11; class B: H(48.2, 67.1) x 5.5, where H
    weighs the direct success probability by the kth-NN distance law.
    """
    link_class = str(link_class).upper()
    if link_class == "A":
        return h_integral(0.0, BAND_11, k, density, params) * 11.0
    if link_class == "B":
        return h_integral(BAND_11, BAND_55, k, density, params) * 5.5
    raise ValueError("link_class must be 'A' or 'B', got %r" % (link_class,))


def _tier_areas(link_class: str, r_k: float):
    if link_class == "C":
        return _areas_c(r_k), (1, 2, 3)
    return _areas_d(r_k), (1, 2, 3, 4, 5)


def tier_probabilities(
    link_class: str,
    r_k: float,
    density: Optional[float] = None,
    k: Optional[int] = None,
) -> TierProbabilityVector:
    """Selection probability of each helper tier for a link of length r_k.

    Exactly one of `density` (PPP void-probability form) or `k` (k-nearest
    conditioning: k-1 nodes uniform in the disk of radius r_k) must be
    given.  Tiers are claimed greedily in priority order, so the tier-i
    probability is the probability that regions 1..i-1 are empty and
    region i is not.
    """
    link_class = str(link_class).upper()
    if link_class == "C":
        lo, hi = BAND_55, BAND_2
    elif link_class == "D":
        lo, hi = BAND_2, MAX_RANGE
    else:
        raise ValueError("link_class must be 'C' or 'D', got %r" % (link_class,))
    if not lo <= r_k <= hi:
        raise ValueError("r_k=%r outside the class %s range [%s, %s]" % (r_k, link_class, lo, hi))
    if (density is None) == (k is None):
        raise ValueError("give exactly one of density (ppp) or k (k-nearest)")

    areas, tiers = _tier_areas(link_class, float(r_k))
    cum = np.concatenate(([0.0], np.cumsum(areas)))
    if density is not None:
        if not density > 0:
            raise ValueError("density must be positive")
        empty = np.exp(-density * cum)  # P{regions 1..i all void}
        conditioning = ("ppp", float(density))
    else:
        if not (isinstance(k, (int, np.integer)) and k >= 1):
            raise ValueError("k must be an integer >= 1")
        disk = math.pi * r_k ** 2
        empty = (1.0 - cum / disk) ** (k - 1)
        conditioning = ("k", int(k))
    p = empty[:-1] - empty[1:]
    probs = {t: float(pi) for t, pi in zip(tiers, p)}
    return TierProbabilityVector(
        link_class=link_class,
        r_k=float(r_k),
        probs=probs,
        residual=float(empty[-1]),
        conditioning=conditioning,
    )


def tier_bound_pair(regime: str, tier: int, r_k: float, params: ChannelParams = ChannelParams()) -> BoundPair:
    """Lower/upper throughput bounds (Mbps) for one tier of a given link.

    The bounds evaluate the joint success probability G at the worst and
    best helper positions admitted by the tier region: e.g. a tier-1
    helper is best at the S-D midpoint and worst at a corner where both
    hops stretch to 48.2 m.  Tier 1 does not exist in the D2 regime
    (r_k > 96.4 m).
    """
    regime, lo, hi, _ = _check_regime_distance(regime, r_k)
    r = float(r_k)
    g = lambda a, b: float(g_joint(a, b, params))
    if tier == 1:
        if regime == "D2":
            raise ValueError("tier 1 is infeasible for D2 links (r_k > 96.4)")
        pair = (g(BAND_11, BAND_11), g(r / 2, r / 2))
    elif tier == 2:
        pair = (g(BAND_11, BAND_55), g(BAND_11, r - BAND_11))
    elif tier == 3:
        best = g(r / 2, r / 2) if regime == "D2" else g(BAND_11, BAND_11)
        pair = (g(BAND_55, BAND_55), best)
    elif tier == 4 and regime in ("D1", "D2"):
        pair = (g(BAND_11, BAND_2), g(BAND_55, r - BAND_55))
    elif tier == 5 and regime in ("D1", "D2"):
        pair = (g(BAND_55, BAND_2), g(BAND_11, BAND_55))
    else:
        raise ValueError("tier %r is not defined for regime %s" % (tier, regime))
    rate = TIER_RATES[tier]
    return BoundPair(pair[0] * rate, pair[1] * rate, context=(regime, tier, r))


def link_bounds_at_distance(
    regime: str,
    r_k: float,
    density: Optional[float] = None,
    k: Optional[int] = None,
    params: ChannelParams = ChannelParams(),
) -> BoundPair:
    """Throughput bounds for a single link of length r_k.

    Probability-weighted mixture of the per-tier bound pairs plus the
    residual direct-transmission term Ps(r_k) x direct rate.
    """
    regime, lo, hi, direct_rate = _check_regime_distance(regime, r_k)
    link_class = "C" if regime == "C" else "D"
    vec = tier_probabilities(link_class, r_k, density=density, k=k)
    lower = upper = vec.residual * float(p_success_direct(r_k, params)) * direct_rate
    for tier, p in vec.probs.items():
        if p == 0.0:
            continue
        if tier == 1 and regime == "D2":
            # geometry guarantees p == 0 here up to round-off
            continue
        pair = tier_bound_pair(regime, tier, r_k, params)
        lower += p * pair.lower
        upper += p * pair.upper
    return BoundPair(lower, upper, context=(regime, "mixture", float(r_k), vec.conditioning))


def averaged_bounds(
    regime: str,
    density: float,
    k: Optional[int] = None,
    params: ChannelParams = ChannelParams(),
    tol: float = 1e-8,
) -> BoundPair:
    """Class-averaged throughput bounds over the regime's distance band.

    With the default PPP conditioning the link distance is weighted by
    the uniform-area law 2r/(b^2-a^2) on the band (normalized, i.e. the
    average is conditional on the link falling in this class).  With
    k-nearest conditioning the weight is the kth-NN distance PDF as
    printed in the closed-form expressions (unnormalized partial
    expectation over the band).
    """
    regime, (a, b, _) = _regime_info(regime)

    if k is None:
        weight = lambda r: 2.0 * r / (b * b - a * a)
    else:
        weight = lambda r: nn_distance_pdf(k, density, r)

    def make(which):
        def f(r):
            pair = link_bounds_at_distance(regime, r, density=None if k is not None else density, k=k, params=params)
            return getattr(pair, which) * weight(r)

        return f

    lower = adaptive_simpson(make("lower"), a, b, tol=tol)
    upper = adaptive_simpson(make("upper"), a, b, tol=tol)
    conditioning = ("k", k) if k is not None else ("ppp", density)
    return BoundPair(lower, upper, context=(regime, "averaged", conditioning))


def total_throughput_bounds(
    density: float,
    k: Optional[int] = None,
    params: ChannelParams = ChannelParams(),
) -> BoundPair:
    """Network-total bound: D2 + D1 + C class averages plus A/B throughput.

    With k-nearest conditioning this is the literal closed-form sum of the
    per-band partial expectations under the kth-NN distance law.  With PPP
    conditioning the same sum is taken under the uniform-area law
    2r/100^2 over the whole 100 m disk, i.e. the unconditional mean
    throughput of a random in-range pair.
    """
    if k is not None:
        lower = upper = 0.0
        for regime in ("D2", "D1", "C"):
            pair = averaged_bounds(regime, density, k=k, params=params)
            lower += pair.lower
            upper += pair.upper
        ta = type_ab_throughput("A", k, density, params)
        tb = type_ab_throughput("B", k, density, params)
        return BoundPair(lower + ta + tb, upper + ta + tb, context=("total", ("k", k)))

    weight = lambda r: 2.0 * r / MAX_RANGE ** 2

    def band(which, regime, a, b):
        def f(r):
            pair = link_bounds_at_distance(regime, r, density=density, params=params)
            return getattr(pair, which) * weight(r)

        return adaptive_simpson(f, a, b)

    def direct(a, b, rate):
        return adaptive_simpson(lambda r: float(p_success_direct(r, params)) * rate * weight(r), max(a, 1e-9), b)

    lower = upper = direct(0.0, BAND_11, 11.0) + direct(BAND_11, BAND_55, 5.5)
    for regime in ("C", "D1", "D2"):
        a, b, _ = REGIMES[regime]
        lower += band("lower", regime, a, b)
        upper += band("upper", regime, a, b)
    return BoundPair(lower, upper, context=("total", ("ppp", density)))
