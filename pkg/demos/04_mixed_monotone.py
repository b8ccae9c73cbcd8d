# %% [markdown]
# # Mixed-monotone baseline
#
# The embedding system propagates the two corners of a state box. For the
# scalar system the corners are the constant-input solutions, so the
# high-order envelope and the embedding should agree.

# %%
import numpy as np

from cfreach import fixture, generate_coefficients, integrate_embedding, reach_envelope

spec = fixture("ferfera")
s = spec.system
t = np.linspace(0, 1, 1001)
traj = integrate_embedding(s, s.z0, s.z0, [spec.box.a], [spec.box.b], t)
lo, hi = traj.output_box(s)
env = reach_envelope(generate_coefficients(s, 0, 40), spec.box, t)
print("max gap lower", np.abs(env.lower[0] - lo[0]).max())
print("max gap upper", np.abs(env.upper[0] - hi[0]).max())

# %% [markdown]
# On the predator-prey model the two methods differ. The box decomposition
# function is found by grid search, so it is a comparison, not a certificate.

# %%
lv = fixture("lotka-volterra")
s = lv.system
t = np.linspace(0, 1, 201)
box = integrate_embedding(s, s.z0, s.z0, [lv.box.a] * 2, [lv.box.b] * 2, t).output_box(s)
env = reach_envelope(generate_coefficients(s, 0, 3), lv.box, t)
for k in range(0, 201, 50):
    print(f"t={t[k]:.2f}  mm [{box[0][0, k]:.4f}, {box[1][0, k]:.4f}]"
          f"  envelope [{env.lower[0, k]:.4f}, {env.upper[0, k]:.4f}]")
