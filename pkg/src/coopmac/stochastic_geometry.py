"""Poisson point process sampling and helper-tier geometry.

The helper tiers of a source-destination (S-D) link are defined by distance
bands on the two hop lengths (d_SH, d_HD).  The band edges 48.2 / 67.1 /
74.7 m are the rate breakpoints of the 11/5.5/2 Mbps link classes; each
tier region is an intersection of two annuli centered on S and D, so its
area reduces to differences of two-circle lens areas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln

# Distance band edges shared by link classification and tier geometry (m).
BAND_11 = 48.2   # below: 11 Mbps hop
BAND_55 = 67.1   # below: 5.5 Mbps hop
BAND_2 = 74.7    # below: 2 Mbps hop
MAX_RANGE = 100.0

_BAND_EDGES = np.array([BAND_11, BAND_55, BAND_2])

# tier index by (hop band, hop band); 0 = helper not beneficial.
# Bands: 0 -> [0,48.2), 1 -> [48.2,67.1), 2 -> [67.1,74.7), 3 -> beyond.
_TIER_C = np.zeros((4, 4), dtype=np.int8)
_TIER_C[0, 0] = 1
_TIER_C[0, 1] = _TIER_C[1, 0] = 2
_TIER_C[1, 1] = 3

_TIER_D = _TIER_C.copy()
_TIER_D[0, 2] = _TIER_D[2, 0] = 4
_TIER_D[1, 2] = _TIER_D[2, 1] = 5

# Source-destination separation beyond which the tier-1 region (both hops
# under 48.2 m) is empty.
TIER1_MAX_SEPARATION = 2 * BAND_11  # 96.4 m


@dataclass(frozen=True)
class NetworkRealization:
    """One sampled PPP: density, observation window, node coordinates.

    `window` is (xmin, ymin, xmax, ymax) in meters; `nodes` is an (n, 2)
    float array.  Immutable after construction.
    """

    density: float
    window: tuple
    nodes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", np.asarray(self.nodes, dtype=float).reshape(-1, 2))
        self.nodes.setflags(write=False)


@dataclass(frozen=True)
class RegionAreas:
    """Per-tier region areas (m^2) for one link, indexed by tier."""

    link_class: str
    r_k: float
    areas: tuple  # areas[i] is the tier-(i+1) region area

    def area(self, tier: int) -> float:
        return self.areas[tier - 1]

    @property
    def total(self) -> float:
        return float(sum(self.areas))


def sample_ppp(density: float, window, seed) -> NetworkRealization:
    """Sample a homogeneous PPP of the given density on a rectangle.

    Parameters
    ----------
    density : nodes per square meter (> 0)
    window : (xmin, ymin, xmax, ymax) in meters
    seed : int or numpy Generator

    The node count is Poisson(density * area) and positions are i.i.d.
    uniform; the draw is deterministic for a fixed integer seed.
    """
    if not density > 0:
        raise ValueError("density must be positive, got %r" % (density,))
    xmin, ymin, xmax, ymax = map(float, window)
    if not (xmax > xmin and ymax > ymin):
        raise ValueError("window must be a non-degenerate rectangle")
    rng = np.random.default_rng(seed)
    area = (xmax - xmin) * (ymax - ymin)
    n = rng.poisson(density * area)
    xy = np.column_stack(
        (rng.uniform(xmin, xmax, n), rng.uniform(ymin, ymax, n))
    )
    return NetworkRealization(density=density, window=(xmin, ymin, xmax, ymax), nodes=xy)


def lens_area(r1, r2, separation):
    """Intersection area of two circles of radii r1, r2 (m^2).

    Uses the standard lens formula; separations beyond r1+r2 give 0 and
    separations below |r1-r2| give the full smaller circle.  `separation`
    may be an array.
    """
    r1 = float(r1)
    r2 = float(r2)
    if r1 <= 0 or r2 <= 0:
        raise ValueError("circle radii must be positive")
    d = np.asarray(separation, dtype=float)
    scalar = d.ndim == 0
    d = np.atleast_1d(d)
    if np.any(d < 0):
        raise ValueError("separation must be non-negative")

    out = np.empty_like(d)
    full = d <= abs(r1 - r2)
    none = d >= r1 + r2
    mid = ~(full | none)
    out[full] = np.pi * min(r1, r2) ** 2
    out[none] = 0.0
    dm = d[mid]
    # clip guards the arccos arguments against round-off at the tangency edges
    a1 = r1 ** 2 * np.arccos(np.clip((dm ** 2 + r1 ** 2 - r2 ** 2) / (2 * dm * r1), -1.0, 1.0))
    a2 = r2 ** 2 * np.arccos(np.clip((dm ** 2 + r2 ** 2 - r1 ** 2) / (2 * dm * r2), -1.0, 1.0))
    tri = 0.5 * np.sqrt(
        np.maximum((-dm + r1 + r2) * (dm + r1 - r2) * (dm - r1 + r2) * (dm + r1 + r2), 0.0)
    )
    out[mid] = a1 + a2 - tri
    return float(out[0]) if scalar else out


def _areas_c(r: float):
    """Tier-1..3 region areas for a Type-C link of length r (no validation)."""
    s1 = lens_area(BAND_11, BAND_11, r)
    s2 = 2.0 * (lens_area(BAND_55, BAND_11, r) - s1)
    s3 = lens_area(BAND_55, BAND_55, r) - s2 - s1
    return (s1, s2, s3)


def _areas_d(r: float):
    """Tier-1..5 region areas for a Type-D link of length r (no validation)."""
    s1 = lens_area(BAND_11, BAND_11, r)  # 0 for r > 96.4
    s2 = 2.0 * (lens_area(BAND_11, BAND_55, r) - s1)
    s3 = lens_area(BAND_55, BAND_55, r) - s2 - s1
    s4 = 2.0 * (lens_area(BAND_11, BAND_2, r) - s1) - s2
    s5 = 2.0 * (lens_area(BAND_55, BAND_2, r) - lens_area(BAND_55, BAND_55, r)) - s4
    return (s1, s2, s3, s4, s5)


def tier_region_areas(link_class: str, r_k: float) -> RegionAreas:
    """Analytic tier-region areas for a class C or D link of length r_k.

    Type C returns three areas, Type D five; the tier-1 area of a Type-D
    link vanishes for r_k > 96.4 m (the two 48.2 m circles no longer
    intersect).
    """
    link_class = str(link_class).upper()
    if link_class == "C":
        if not BAND_55 <= r_k < BAND_2:
            raise ValueError("Type C requires 67.1 <= r_k < 74.7, got %r" % (r_k,))
        areas = _areas_c(float(r_k))
    elif link_class == "D":
        if not BAND_2 <= r_k <= MAX_RANGE:
            raise ValueError("Type D requires 74.7 <= r_k <= 100, got %r" % (r_k,))
        areas = _areas_d(float(r_k))
    else:
        raise ValueError("link_class must be 'C' or 'D', got %r" % (link_class,))
    return RegionAreas(link_class=link_class, r_k=float(r_k), areas=areas)


def _tier_table(link_class: str) -> np.ndarray:
    link_class = str(link_class).upper()
    if link_class == "C":
        return _TIER_C
    if link_class == "D":
        return _TIER_D
    raise ValueError("link_class must be 'C' or 'D', got %r" % (link_class,))


def tier_index(d_sh, d_hd, link_class: str):
    """Vectorized tier lookup; 0 means the helper is not beneficial."""
    table = _tier_table(link_class)
    b1 = np.searchsorted(_BAND_EDGES, np.asarray(d_sh, dtype=float), side="right")
    b2 = np.searchsorted(_BAND_EDGES, np.asarray(d_hd, dtype=float), side="right")
    return table[b1, b2]


def classify_helper_tier(d_sh: float, d_hd: float, link_class: str) -> Optional[int]:
    """Tier of a helper with hop distances (d_sh, d_hd), or None.

    Distance bands are half-open ([0,48.2), [48.2,67.1), [67.1,74.7)), so a
    hop of exactly 48.2 m falls in the 5.5 Mbps band.
    """
    if d_sh < 0 or d_hd < 0:
        raise ValueError("hop distances must be non-negative")
    t = int(tier_index(d_sh, d_hd, link_class))
    return t if t else None


def nn_distance_pdf(k: int, density: float, r):
    """PDF of the distance to the kth nearest PPP neighbor.

    f(r) = 2 * exp(-lam*pi*r^2) * (lam*pi*r^2)^k / (r * (k-1)!), with
    f(r) = 0 for r <= 0.  Vectorized in r; uses log-gamma for stability at
    large k.
    """
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError("k must be an integer >= 1, got %r" % (k,))
    if not density > 0:
        raise ValueError("density must be positive")
    r = np.asarray(r, dtype=float)
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    out = np.zeros_like(r)
    pos = r > 0
    x = density * np.pi * r[pos] ** 2
    out[pos] = 2.0 * np.exp(-x + k * np.log(x) - gammaln(k)) / r[pos]
    return float(out[0]) if scalar else out
