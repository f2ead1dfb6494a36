# %% [markdown]
# # A fee thins out poorly matched applications
#
# The reference market has 1000 candidates and 20 posts. We ask for the
# smallest uniform fee that cuts volume to a fifth and compare the
# charged market with the free one, using the same random draws.

# %%
from pathlib import Path

from appfee import FeePolicy, expected_applications, load_scenario, run_comparison

scenario = load_scenario(Path(__file__).resolve().parents[1] / "scenarios" / "reference.json")
free_volume = expected_applications(scenario.with_uniform_fee(0.0), 0.0)
report = run_comparison(scenario, FeePolicy.target_volume(0.2 * free_volume))

# %%
b, t = report.baseline, report.treated
print(f"fee charged       {next(iter(report.fees.values())):.4f}")
print(f"applications      {b.total_applications} -> {t.total_applications}")
print(f"screening cost    {b.total_screening_cost:g} -> {t.total_screening_cost:g}")
print(f"hires             {b.n_hires} -> {t.n_hires}")
print(f"mean mismatch     {b.mean_hire_mismatch:.4f} -> {t.mean_hire_mismatch:.4f}")

# %% [markdown]
# Hires and match quality hold up while screening work drops by 80%.
# The applications that disappear were long shots to begin with.

# %%
for fee in (0, 1, 2, 5, 10, 20):
    print(f"fee {fee:>3}: {expected_applications(scenario, fee):>7.0f} applications")
