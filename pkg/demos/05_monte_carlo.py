# %% [markdown]
# # Monte-Carlo under-approximation
#
# Random piecewise-constant inputs give trajectories that must fall inside
# any valid over-approximation. Samples are reproducible from the seed.

# %%
import numpy as np

from cfreach import fixture, generate_coefficients, reach_envelope
from cfreach.oracle import run_samples

lv = fixture("lotka-volterra")
samples = run_samples(lv.system, lv.box, segments=10, count=200, seed=7, T=1.0, steps=1000)
t = samples.t_grid
env = reach_envelope(generate_coefficients(lv.system, 0, 6), lv.box, t)
print("empirical range at t=1:", samples.lower[0, -1], samples.upper[0, -1])
print("envelope at t=1:       ", env.lower[0, -1], env.upper[0, -1])

# %% [markdown]
# Plot if matplotlib is installed.

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(t, samples.trajectories[:40, 0].T, color="0.7", lw=0.5)
    ax.plot(t, env.lower[0], "b", t, env.upper[0], "b")
    ax.set_xlabel("t")
    ax.set_ylabel("y")
    fig.savefig("monte_carlo.png", dpi=120)
    print("wrote monte_carlo.png")
