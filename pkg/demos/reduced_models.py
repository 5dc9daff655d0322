"""
Reduced line sets for sub-bands
===============================

Only the lines near the band of interest need to be evaluated, as long as
the continuum term stays in. Here the D band preset (lines 1 and 2) and the
275-325 GHz preset (line 3) are compared with the full model.
"""
import numpy as np

from thzlos import D_BAND, FULL, THZ_WINDOW, Environment, LineSet, absorption_loss_db, mixing_ratio

mu = mixing_ratio(Environment(25.0, 50.0))
d = 1000.0

cases = [
    ("D band, 110-170 GHz", np.linspace(110e9, 170e9, 61), D_BAND),
    ("275-325 GHz", np.linspace(275e9, 325e9, 51), THZ_WINDOW),
    ("lines 3+4, 200-390 GHz", np.linspace(200e9, 390e9, 191), LineSet.of(3, 4)),
]

for name, f, lines in cases:
    full = absorption_loss_db(f, mu, d, FULL)
    reduced = absorption_loss_db(f, mu, d, lines)
    err = full - reduced
    print(f"{name:24s} lines={lines.label():11s} max |full - reduced| = {err.max():.3f} dB "
          f"(full model spans {full.min():.2f}..{full.max():.2f} dB)")

###############################################################################
# The gap grows toward the lines that were left out.

f = np.linspace(110e9, 275e9, 12)
gap = absorption_loss_db(f, mu, d, FULL) - absorption_loss_db(f, mu, d, D_BAND)
for fi, gi in zip(f, gap):
    print(f"{fi / 1e9:6.1f} GHz   {gi:8.3f} dB")
