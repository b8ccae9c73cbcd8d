# %% [markdown]
# # Interval powers
#
# The envelope treats each input factor as independent, so the power of an
# interval is the n-fold product of independent copies. For an interval
# straddling zero this is wider than the set of true powers.

# %%
import numpy as np

from cfreach import Interval, interval_pow

I = Interval(-2.0, 1.0)
for n in range(5):
    print(n, interval_pow(I, n))

# %% [markdown]
# Compare with the functional square, the set of y**2 for y in I.

# %%
y = np.linspace(I.lo, I.hi, 1001)
print("relaxed   ", interval_pow(I, 2))
print("functional", Interval(float((y**2).min()), float((y**2).max())))

# %% [markdown]
# Positive intervals need no relaxation: both powers agree.

# %%
print(interval_pow(Interval(1.0, 2.8), 3), 2.8**3)
