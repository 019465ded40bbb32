"""Walk through the link budget and the helper-tier geometry.

Run: python demos/channel_and_geometry.py
"""
import numpy as np

from coopmac import ChannelParams, g_joint, lens_area, p_success_direct, tier_region_areas

params = ChannelParams()
print("Channel defaults: Pt=%g dBm, threshold=%g dBm, alpha=%g, sigma=%g dB, K=%g dB"
      % (params.pt, params.pth, params.alpha, params.sigma_sh, params.k_const))
print("Derived nu=%.4f, mu=%.4f\n" % (params.nu, params.mu))

print("Direct success probability vs distance:")
for d in (20, 48.2, 67.1, 74.7, 100):
    print("  Ps(%5.1f m) = %.4f" % (d, p_success_direct(d, params)))

print("\nTwo-hop joint success (relay at the midpoint of a 70 m link):")
print("  G(35, 35) = %.4f  vs direct Ps(70) = %.4f"
      % (g_joint(35, 35, params), p_success_direct(70, params)))

print("\nLens areas (intersection of the two 48.2 m rate circles):")
for sep in (0, 40, 70, 96.4):
    print("  separation %5.1f m -> %9.1f m^2" % (sep, lens_area(48.2, 48.2, sep)))

print("\nTier-region areas of a 70 m Type-C link:")
areas = tier_region_areas("C", 70.0)
for tier, a in enumerate(areas.areas, start=1):
    print("  tier %d: %8.1f m^2" % (tier, a))
print("  total %8.1f m^2 (= 67.1 m lens %8.1f m^2)"
      % (sum(areas.areas), lens_area(67.1, 67.1, 70.0)))

print("\nType-D link at 97 m: tier-1 area = %.1f (the 48.2 m circles no longer meet)"
      % tier_region_areas("D", 97.0).area(1))
