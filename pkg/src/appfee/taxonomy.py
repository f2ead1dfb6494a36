"""Market/price quadrant classification and a price-dispersion diagnostic."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class Quadrant(str, enum.Enum):
    I = "I"  # market and price
    II = "II"  # market, no price (free job applications)
    III = "III"  # neither
    IV = "IV"  # price, no market (realtor commissions)


_QUADRANTS = {
    (True, True): Quadrant.I,
    (True, False): Quadrant.II,
    (False, False): Quadrant.III,
    (False, True): Quadrant.IV,
}


@dataclass(frozen=True)
class QuadrantLabel:
    quadrant: Quadrant
    market_present: bool
    price_present: bool

    def __str__(self):
        return f"Quadrant {self.quadrant.value}"


def classify_market(market_present: bool, price: float) -> QuadrantLabel:
    """Place a competition in its quadrant. A zero (or negative) price counts as no price."""
    if not math.isfinite(price):
        raise ValueError(f"price must be finite, got {price!r}")
    market_present = bool(market_present)
    price_present = price > 0
    return QuadrantLabel(_QUADRANTS[market_present, price_present], market_present, price_present)


def price_dispersion(prices: Sequence[float]) -> float:
    """Coefficient of variation (population std / mean) of offered prices."""
    arr = np.asarray(prices, dtype=float)
    if arr.size and not np.all(arr > 0):
        raise ValueError("price dispersion needs strictly positive prices")
    if arr.size < 2:
        return 0.0
    return float(arr.std() / arr.mean())
