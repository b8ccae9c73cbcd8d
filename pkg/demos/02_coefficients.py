# %% [markdown]
# # Generating series from a state-space model
#
# The coefficient of a word is an iterated Lie derivative of the output
# evaluated at the initial state. Subtrees whose polynomial is zero are
# dropped, so sparse systems stay cheap at high order.

# %%
from cfreach import fixture, generate_coefficients

scalar = fixture("ferfera").system
c = generate_coefficients(scalar, 0, 6)
for w, v in c.items():
    print(f"{str(w):>14}  {v:g}")

# %% [markdown]
# The two-species predator-prey model has denser support.

# %%
lv = fixture("lotka-volterra").system
c = generate_coefficients(lv, 0, 3)
print(len(c.support()), "nonzero words up to length 3")
for w, v in list(c.items())[:10]:
    print(f"{str(w):>10}  {v:+.6f}")
