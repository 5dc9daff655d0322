"""
Absorption loss over a 1 km link at three humidities
====================================================

Molecular absorption between 100 and 450 GHz at 25 degC for 10, 50 and
90 % relative humidity, the same conditions used to benchmark the model
against line-by-line calculations. The strong water lines at 183, 325,
380 and 448 GHz dominate; the oxygen line at 119 GHz is the only one that
survives in dry air.
"""
import numpy as np

from thzlos import Environment, FrequencyGrid, LinkConfig, mixing_ratio, sweep_frequency

grid = FrequencyGrid(100e9, 450e9, 100e6)
link = LinkConfig(distance=1000.0)

###############################################################################
# The water-vapor mixing ratio is the only atmospheric input of the model.

for rh in (10, 50, 90):
    env = Environment(temperature=25.0, relative_humidity=rh)
    print(f"RH {rh:3d} %  ->  mu = {mixing_ratio(env):.4f}")

###############################################################################
# Sweep the band and report the loss at a few landmark frequencies.

landmarks_ghz = [119, 183, 250, 325, 350, 380, 415, 448]
print("\nabsorption loss [dB] at 1 km")
print("f [GHz] " + "".join(f"{rh:>10d}%" for rh in (10, 50, 90)))
curves = {}
for rh in (10, 50, 90):
    res = sweep_frequency(link, grid, Environment(25.0, rh))
    curves[rh] = np.array([r.absorption_db for r in res])
f_ghz = grid.points() / 1e9
for fl in landmarks_ghz:
    k = int(np.argmin(np.abs(f_ghz - fl)))
    print(f"{f_ghz[k]:7.1f} " + "".join(f"{curves[rh][k]:11.2f}" for rh in (10, 50, 90)))

###############################################################################
# Optional plot, if matplotlib is around.

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    for rh, loss in curves.items():
        ax.semilogy(f_ghz, loss, label=f"{rh} % RH")
    ax.set_xlabel("frequency [GHz]")
    ax.set_ylabel("absorption loss [dB]")
    ax.legend()
    fig.savefig("absorption_vs_humidity.png", dpi=120)
