# %% [markdown]
# # Free submission vs a tilted supply curve
#
# With free submission supply is flat at price zero and the quantity is
# wherever demand hits the axis. Once applicants pay, supply slopes up,
# the price turns positive and fewer applications clear.

# %%
from appfee import LinearCurve, compare_equilibria, solve_equilibrium
from appfee.equilibrium import FREE_SUPPLY

demand = LinearCurve(intercept=10, slope=-1)
tilted = LinearCurve(intercept=2, slope=1)

e0 = solve_equilibrium(demand, FREE_SUPPLY)
e1 = solve_equilibrium(demand, tilted)
print("free:   ", e0)
print("charged:", e1)
print(compare_equilibria(e0, e1))
