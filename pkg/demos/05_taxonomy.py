# %% [markdown]
# # Markets and prices
#
# Whether a discovery mechanism exists and whether a price is charged
# place a setting in one of four quadrants.

# %%
from appfee import classify_market, price_dispersion

for market in (True, False):
    for price in (0.0, 12.0):
        print(f"market={market!s:5}  price={price:4}  ->  {classify_market(market, price)}")

# %% [markdown]
# Price dispersion is the coefficient of variation, so it ignores units.

# %%
prices = [9.5, 10.0, 12.0, 8.0]
print(price_dispersion(prices), price_dispersion([p * 100 for p in prices]))
