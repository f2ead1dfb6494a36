"""Linear supply and demand, their intersection, and comparative statics.

A curve is ``price = intercept + slope * quantity``. Free submission is the
flat supply ``LinearCurve(0, 0)``; charging turns it into an upward line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class NoIntersectionError(ValueError):
    pass


class InfeasibleMarketError(ValueError):
    pass


@dataclass(frozen=True)
class LinearCurve:
    intercept: float
    slope: float

    def price_at(self, quantity: float) -> float:
        return self.intercept + self.slope * quantity


FREE_SUPPLY = LinearCurve(0.0, 0.0)


@dataclass(frozen=True)
class Equilibrium:
    price: float
    quantity: float


@dataclass(frozen=True)
class EquilibriumComparison:
    price_rose: bool
    quantity_fell: bool
    price_change: float
    quantity_change: float


def solve_equilibrium(demand: LinearCurve, supply: LinearCurve) -> Equilibrium:
    for name, curve in (("demand", demand), ("supply", supply)):
        if not (math.isfinite(curve.intercept) and math.isfinite(curve.slope)):
            raise ValueError(f"{name} curve has non-finite coefficients: {curve}")
    if demand.slope == supply.slope:
        raise NoIntersectionError(f"parallel curves (slope {demand.slope}) have no unique intersection")
    if not demand.slope < 0:
        raise ValueError(f"demand must slope downward, got slope {demand.slope}")
    if not supply.slope >= 0:
        raise ValueError(f"supply must not slope downward, got slope {supply.slope}")

    q = (demand.intercept - supply.intercept) / (supply.slope - demand.slope)
    if q < 0:
        raise InfeasibleMarketError(
            f"curves intersect at negative quantity {q:g}; supply starts above demand"
        )
    # the flat free-submission supply pins the price exactly at its level
    p = supply.intercept if supply.slope == 0 else supply.price_at(q)
    return Equilibrium(price=p, quantity=q)


def residuals(e: Equilibrium, demand: LinearCurve, supply: LinearCurve) -> tuple[float, float]:
    return demand.price_at(e.quantity) - e.price, supply.price_at(e.quantity) - e.price


def compare_equilibria(e0: Equilibrium, e1: Equilibrium) -> EquilibriumComparison:
    return EquilibriumComparison(
        price_rose=e1.price > e0.price,
        quantity_fell=e1.quantity < e0.quantity,
        price_change=e1.price - e0.price,
        quantity_change=e1.quantity - e0.quantity,
    )
