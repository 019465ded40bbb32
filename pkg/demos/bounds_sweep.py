"""Closed-form throughput bounds across the node-density sweep.

Run: python demos/bounds_sweep.py
"""
from coopmac import averaged_bounds, tier_probabilities, total_throughput_bounds
from coopmac.monte_carlo import DENSITY_GRID

print("Tier selection probabilities, Type-C link of 70 m (PPP conditioning):")
for lam in (0.0005, 0.002, 0.005):
    vec = tier_probabilities("C", 70.0, density=lam)
    probs = "  ".join("P%d=%.4f" % (t, p) for t, p in vec.probs.items())
    print("  lambda=%.4f: %s  direct=%.4f" % (lam, probs, vec.residual))

print("\nClass-averaged bounds (Mbps) over the density sweep:")
print("  lambda     C lower/upper      D1 lower/upper     D2 lower/upper")
for lam in DENSITY_GRID:
    c = averaged_bounds("C", lam)
    d1 = averaged_bounds("D1", lam)
    d2 = averaged_bounds("D2", lam)
    print("  %.4f   %.4f / %.4f    %.4f / %.4f    %.4f / %.4f"
          % (lam, c.lower, c.upper, d1.lower, d1.upper, d2.lower, d2.upper))

print("\nNetwork total (random in-range pair, all link classes):")
for lam in (0.0005, 0.005):
    pair = total_throughput_bounds(lam)
    print("  lambda=%.4f: %.4f .. %.4f Mbps" % (lam, pair.lower, pair.upper))

print("\nSame totals under k-nearest conditioning (k=10):")
for lam in (0.0005, 0.005):
    pair = total_throughput_bounds(lam, k=10)
    print("  lambda=%.4f: %.4f .. %.4f Mbps" % (lam, pair.lower, pair.upper))
