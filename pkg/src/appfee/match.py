"""Gaussian recruitment-chance curve and its tail-mass arithmetic.

The chance that an application succeeds falls off with the distance
between the candidate's skill and the post's requirement::

    p(r) = p_max * exp(-(r - mu)**2 / (2 * sigma**2))

Outcomes of separate applications are modelled as independent, so the
chance of at least one success is ``1 - prod(1 - p_i)``. That reading is a
modelling assumption, and it is what makes the candidate's objective
submodular.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .types import MatchModel


def recruitment_probability(candidate_skill: float, required_skill: float, m: MatchModel) -> float:
    z = (required_skill - candidate_skill) / m.sigma
    return m.peak_probability * math.exp(-0.5 * z * z)


def recruitment_probabilities(candidate_skill: float, required_skills, m: MatchModel) -> np.ndarray:
    """Vectorised :func:`recruitment_probability` over many posts."""
    z = (np.asarray(required_skills, dtype=float) - candidate_skill) / m.sigma
    return m.peak_probability * np.exp(-0.5 * z * z)


def gaussian_mass_within(k: float) -> float:
    """Fraction of a normal distribution's mass inside ``mean +/- k*sd``.

    Evaluated as ``erf(k / sqrt(2))`` with the C library's erf, which is
    accurate to a few ulps (far inside 1e-10).
    """
    if not k >= 0:
        raise ValueError(f"k must be >= 0, got {k!r}")
    return math.erf(k / math.sqrt(2.0))


def marginal_mass(k_low: float, k_high: float) -> float:
    """Mass gained by widening the band from ``+/- k_low`` to ``+/- k_high`` sd."""
    if not 0 <= k_low <= k_high:
        raise ValueError(f"need 0 <= k_low <= k_high, got ({k_low!r}, {k_high!r})")
    return gaussian_mass_within(k_high) - gaussian_mass_within(k_low)


def combined_probability(probs: Iterable[float]) -> float:
    """Chance that at least one of several independent applications succeeds."""
    probs = list(probs)
    for p in probs:
        if not 0 <= p <= 1:
            raise ValueError(f"probabilities must be in [0, 1], got {p!r}")
    # sorting makes the float product independent of argument order
    miss = math.prod(1.0 - p for p in sorted(probs))
    return 1.0 - miss
