# %% [markdown]
# # Reach envelopes
#
# Each word contributes its coefficient times an interval power, scaled by
# t**k / k!. Summing lower and upper endpoints gives two curves that bound
# the truncated series for every admissible input.

# %%
import numpy as np

from cfreach import fixture, generate_coefficients, reach_envelope

spec = fixture("ferfera")
t = np.linspace(0, 1, 11)
for N in (3, 10, 40):
    env = reach_envelope(generate_coefficients(spec.system, 0, N), spec.box, t)
    print(f"N={N:2d}  lower(1)={env.lower[0, -1]:.10f}  upper(1)={env.upper[0, -1]:.10f}")
print("exact       ", np.e, np.exp(2.8))

# %% [markdown]
# With growth constants the truncated envelope can be widened by a bound on
# all longer words. The widening is small at short horizons and blows up
# as (m+1) M R t grows.

# %%
lv = fixture("lotka-volterra")
t = np.linspace(0, 0.3, 7)
series = generate_coefficients(lv.system, 0, 3)
plain = reach_envelope(series, lv.box, t)
tail = reach_envelope(series, lv.box, t, growth=lv.growth)
for k in range(t.size):
    print(f"t={t[k]:.2f}  [{plain.lower[0, k]:.4f}, {plain.upper[0, k]:.4f}]"
          f"  widened [{tail.lower[0, k]:.4f}, {tail.upper[0, k]:.4f}]")
