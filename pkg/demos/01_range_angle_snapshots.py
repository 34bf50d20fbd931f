"""Range-angle snapshots of the moving focus.

With constant frequency offsets the beampattern focuses at a single (r, theta)
point at each instant, and that point travels outward at the wave speed c.
This script renders the pattern at t = 0 and t = 30 ns and marks the global
argmax: it sits at r = 15 m at t = 0 and at r = 24 m at t = 30 ns, both on
the theta = -30 deg steering line.

Run from the repository root:

    python3 demos/01_range_angle_snapshots.py
"""

import math
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fdasim import load_config, sweep_range_angle

HERE = pathlib.Path(__file__).resolve().parent
OUT = HERE / "output"
OUT.mkdir(exist_ok=True)

cfg = load_config(HERE.parent / "configs" / "moving-focus.json")

fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=True)
for ax, t in zip(axes, (0.0, 30e-9)):
    grid = sweep_range_angle(cfg.sim, cfg.r_axis, cfg.theta_axis, t, workers=4)
    r = grid.axis1.values()
    theta_deg = np.degrees(grid.axis2.values())
    im = ax.pcolormesh(theta_deg, r, grid.values, cmap="jet", shading="nearest")
    i, j = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    ax.plot(theta_deg[j], r[i], "w+", markersize=14, markeredgewidth=2)
    ax.set_title(f"t = {t * 1e9:.0f} ns, peak at r = {r[i]:.2f} m, "
                 f"theta = {theta_deg[j]:.1f} deg")
    ax.set_xlabel("angle [deg]")
    print(f"t = {t * 1e9:5.1f} ns: argmax at r = {r[i]:.2f} m, "
          f"theta = {theta_deg[j]:.1f} deg")

axes[0].set_ylabel("range [m]")
fig.colorbar(im, ax=axes, label="normalized power [dB]")
path = OUT / "range_angle_snapshots.png"
fig.savefig(path, dpi=150)
print(f"wrote {path}")
