import pytest
from hypothesis import given, strategies as st

from appfee import LinearCurve, solve_equilibrium, compare_equilibria, Equilibrium
from appfee.equilibrium import FREE_SUPPLY, InfeasibleMarketError, NoIntersectionError, residuals

DEMAND = LinearCurve(10.0, -1.0)


def test_free_submission_equilibrium():
    # 10 - q = 0  =>  q = 10 at price 0
    assert solve_equilibrium(DEMAND, FREE_SUPPLY) == Equilibrium(0.0, 10.0)


def test_charged_equilibrium():
    # 10 - q = 2 + q  =>  q = 4, p = 6
    e = solve_equilibrium(DEMAND, LinearCurve(2.0, 1.0))
    assert (e.price, e.quantity) == (6.0, 4.0)


def test_parallel_curves():
    with pytest.raises(NoIntersectionError):
        solve_equilibrium(DEMAND, LinearCurve(5.0, -1.0))


def test_supply_above_demand_is_infeasible():
    with pytest.raises(InfeasibleMarketError):
        solve_equilibrium(DEMAND, LinearCurve(12.0, 1.0))


@pytest.mark.parametrize("demand, supply", [(LinearCurve(10, 1), LinearCurve(0, 2)), (DEMAND, LinearCurve(0, -2))])
def test_slope_preconditions(demand, supply):
    with pytest.raises(ValueError):
        solve_equilibrium(demand, supply)


def test_compare_examples():
    r = compare_equilibria(Equilibrium(0, 10), Equilibrium(6, 4))
    assert (r.price_rose, r.quantity_fell, r.price_change, r.quantity_change) == (True, True, 6, -6)
    same = compare_equilibria(Equilibrium(0, 10), Equilibrium(0, 10))
    assert (same.price_rose, same.quantity_fell, same.price_change, same.quantity_change) == (False, False, 0, 0)
    assert compare_equilibria(Equilibrium(0, 10), Equilibrium(1e-12, 10)).price_rose


pos = st.floats(0.01, 1e3)


@given(pos, pos)
def test_flat_supply_gives_zero_price(a, b):
    e = solve_equilibrium(LinearCurve(a, -b), FREE_SUPPLY)
    assert e.price == 0
    assert e.quantity == pytest.approx(a / b, rel=1e-12)


@given(pos, pos, st.floats(0, 0.999), pos)
def test_tilted_supply_raises_price_and_cuts_quantity(a, b, frac, d):
    c = a * frac
    demand, supply = LinearCurve(a, -b), LinearCurve(c, d)
    e1 = solve_equilibrium(demand, supply)
    e0 = solve_equilibrium(demand, FREE_SUPPLY)
    assert e1.price > 0
    assert e1.quantity < e0.quantity
    assert e1.quantity == pytest.approx((a - c) / (b + d), rel=1e-9)
    assert max(map(abs, residuals(e1, demand, supply))) < 1e-9
