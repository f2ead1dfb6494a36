# %% [markdown]
# # Budget and coverage
#
# Two candidates face the same grid of posts at a fee of 1. One can pay
# for the posts within two widths of their skill, the other for four.
# The richer one reaches further out, but the posts out there rarely hire.

# %%
import numpy as np

from appfee import Candidate, JobPost, MatchModel, marginal_mass, select_applications

m = MatchModel(sigma=1.0, peak_probability=0.5, probability_cutoff=0.0)
skills = np.arange(-7, 7.01, 0.5)
posts = [JobPost(f"p{j:02d}", float(r), fee=1.0) for j, r in enumerate(skills)]
by_id = {p.id: p.required_skill for p in posts}


def show(label, budget):
    plan = select_applications(Candidate(label, 0.0, 1e6, budget=budget), 0.0, posts, m)
    radius = max(abs(by_id[i]) for i in plan.post_ids)
    print(f"{label}: {len(plan.post_ids):2d} applications, radius {radius:.1f}, chance {plan.believed_overall_chance:.5f}")
    return plan


poor = show("poor", int(np.sum(np.abs(skills) <= 2)))
rich = show("rich", int(np.sum(np.abs(skills) <= 4)))
print(f"extra chance {rich.believed_overall_chance - poor.believed_overall_chance:.5f}, "
      f"p_max * gain = {m.peak_probability * marginal_mass(2, 4):.5f}")

# %% [markdown]
# With a small peak probability and tightly packed posts the extra chance
# can exceed that back-of-envelope figure, since many weak shots add up:

# %%
m = MatchModel(sigma=1.0, peak_probability=0.06, probability_cutoff=0.0)
skills = np.arange(-7, 7, 0.12)
posts = [JobPost(f"p{j:03d}", float(r), fee=1.0) for j, r in enumerate(skills)]
by_id = {p.id: p.required_skill for p in posts}
poor = show("poor", int(np.sum(np.abs(skills) <= 2)))
rich = show("rich", int(np.sum(np.abs(skills) <= 4)))
print(f"extra chance {rich.believed_overall_chance - poor.believed_overall_chance:.5f}, "
      f"p_max * gain = {m.peak_probability * marginal_mass(2, 4):.5f}")
