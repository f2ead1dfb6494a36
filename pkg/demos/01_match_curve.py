# %% [markdown]
# # The match curve and its tails
#
# A candidate's chance at a post falls off as a Gaussian in the distance
# between their skill and the post's requirement. Most of the mass sits
# within two widths; pushing out to four adds very little.

# %%
import numpy as np

from appfee import MatchModel, gaussian_mass_within, marginal_mass, recruitment_probability

m = MatchModel(sigma=1.0, peak_probability=0.5)
for d in np.arange(0, 4.5, 0.5):
    print(f"distance {d:3.1f}  p = {recruitment_probability(0.0, d, m):.4f}")

# %%
for k in (1, 2, 3, 4):
    print(f"mass within +/-{k} sigma: {gaussian_mass_within(k):.5f}")
print(f"gain from 2 to 4 sigma: {marginal_mass(2, 4):.5f}")
