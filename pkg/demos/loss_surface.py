"""
Total loss over frequency and distance
======================================

The total loss surface at 23 degC and 50 % relative humidity, clamped to
150 dB for display. The clamp is applied to the output only.
"""
import numpy as np

from thzlos import Environment, FrequencyGrid, loss_surface

grid = FrequencyGrid(100e9, 450e9, 1e9)
distances = np.logspace(0, 3, 7)
surf = loss_surface(grid, distances, Environment(23.0, 50.0), cap_db=150.0)

print(f"surface {surf.total_db.shape[0]} distances x {surf.total_db.shape[1]} frequencies,"
      f" capped={surf.capped}")
cols = [k for k in range(0, len(grid), 50)]
print("d [m] \\ f [GHz] " + "".join(f"{surf.frequencies[k] / 1e9:8.0f}" for k in cols))
for d, row in zip(surf.distances, surf.total_db):
    print(f"{d:15.1f} " + "".join(f"{row[k]:8.1f}" for k in cols))

# share of the band below the clamp, per distance
for d, row in zip(surf.distances, surf.total_db):
    print(f"{d:8.1f} m: {np.mean(row < 150.0) * 100:5.1f} % of 100-450 GHz below 150 dB")
