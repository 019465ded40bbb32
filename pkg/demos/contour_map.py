"""Coarse ASCII rendering of the helper-position throughput map.

Run: python demos/contour_map.py
"""
import numpy as np

from coopmac import contour_grid

for regime in ("C", "D2"):
    grid = contour_grid(regime, resolution=4.0)
    v = grid["throughput"]
    print("Regime %s, link length %.1f m: throughput by helper position" % (regime, grid["r_k"]))
    print("  peak %.2f Mbps at the best tier-%d spot\n"
          % (np.nanmax(v), grid["tier"].flat[np.nanargmax(v)]))
    levels = " .:-=+*#@"
    vmax = np.nanmax(v)
    for row in v[::2]:
        line = "".join(
            " " if np.isnan(x) else levels[min(int(x / vmax * (len(levels) - 1)), len(levels) - 1)]
            for x in row
        )
        print("  " + line)
    print()
