"""Recruiter-side fee setting and fee accounting.

``expected_applications`` is the agent-grounded counterpart of a supply
curve: how many applications the market produces when every post charges
the same fee. It is nonincreasing in the fee, which is what lets
``fee_for_target`` bisect for the fee that brings volume down to a target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .strategy import perceive_skill, select_applications
from .types import FeeDisposition, JobPost, MarketScenario, validate_scenario

DEFAULT_NOISE_DRAWS = 32
BISECTION_TOL = 1e-6
BISECTION_MAX_ITER = 200
DEFAULT_REPLICATIONS = 8

# spawn keys of the seed sequences derived from a scenario seed
PERCEPTION_STREAM = 0
HIRING_STREAM = 1
EXPECTATION_STREAM = 2


class UnreachableTargetError(ValueError):
    pass


@dataclass(frozen=True)
class FeeGrid:
    low: float
    high: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"grid step must be > 0, got {self.step!r}")
        if not self.low <= self.high:
            raise ValueError(f"grid low {self.low!r} exceeds high {self.high!r}")

    def points(self) -> list[float]:
        n = int(math.floor((self.high - self.low) / self.step + 1e-9)) + 1
        return [self.low + i * self.step for i in range(n)]


@dataclass(frozen=True)
class FeePolicy:
    """How recruiters set fees: one fixed fee, a target volume, or a grid optimum per post."""

    mode: str = "fixed"
    fee: float = 0.0
    target: Optional[float] = None
    grid: Optional[FeeGrid] = None
    disposition: FeeDisposition = FeeDisposition.KEPT

    def __post_init__(self):
        if self.mode not in ("fixed", "target_volume", "optimize"):
            raise ValueError(f"unknown fee policy mode {self.mode!r}")
        if self.mode == "target_volume" and not (self.target is not None and self.target >= 0):
            raise ValueError(f"target volume must be >= 0, got {self.target!r}")
        if self.mode == "optimize" and self.grid is None:
            raise ValueError("optimize mode needs a fee grid")
        object.__setattr__(self, "disposition", FeeDisposition(self.disposition))

    @classmethod
    def fixed(cls, fee, disposition=FeeDisposition.KEPT):
        return cls("fixed", fee=fee, disposition=disposition)

    @classmethod
    def target_volume(cls, target, disposition=FeeDisposition.KEPT):
        return cls("target_volume", target=target, disposition=disposition)

    @classmethod
    def optimize(cls, grid: FeeGrid, disposition=FeeDisposition.KEPT):
        return cls("optimize", grid=grid, disposition=disposition)


def expected_applications(scenario: MarketScenario, fee: float, noise_draws: int = DEFAULT_NOISE_DRAWS) -> float:
    """Total applications when every post charges ``fee``.

    Without assessment noise candidates see their true skill and the count is
    exact. With noise it is the mean over ``noise_draws`` perception draws,
    seeded from the scenario seed and shared across fees.
    """
    validate_scenario(scenario)
    posts = scenario.with_uniform_fee(fee).posts
    m = scenario.match_model
    if all(c.assessment_noise == 0 for c in scenario.candidates):
        return float(sum(len(select_applications(c, c.true_skill, posts, m)) for c in scenario.candidates))
    total = 0
    for d in range(noise_draws):
        rng = np.random.default_rng(np.random.SeedSequence(scenario.seed, spawn_key=(EXPECTATION_STREAM, d)))
        for c in scenario.candidates:
            total += len(select_applications(c, perceive_skill(c, rng), posts, m))
    return total / noise_draws


def pricing_out_fee(scenario: MarketScenario) -> float:
    """A uniform fee at which no candidate applies anywhere."""
    peak = scenario.match_model.peak_probability
    return max((peak * c.reward_value for c in scenario.candidates), default=0.0)


def fee_for_target(
    scenario: MarketScenario,
    target: float,
    tol: float = BISECTION_TOL,
    noise_draws: int = DEFAULT_NOISE_DRAWS,
) -> float:
    """Smallest uniform fee (to within ``tol``) bringing volume down to ``target``.

    Volume is a step function of the fee, so a whole interval of fees gives
    the same count; the left end of the first interval meeting the target
    is returned.
    """
    if not target >= 0:
        raise ValueError(f"target must be >= 0, got {target!r}")
    free = expected_applications(scenario, 0.0, noise_draws)
    if target > free:
        raise UnreachableTargetError(
            f"target {target:g} exceeds the {free:g} applications made at zero fee; "
            "a fee can only reduce volume"
        )
    if free <= target:
        return 0.0
    lo, hi = 0.0, pricing_out_fee(scenario)
    if hi <= 0:
        hi = tol
    for _ in range(BISECTION_MAX_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if expected_applications(scenario, mid, noise_draws) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def recruiter_net_value(post: JobPost, n_applications: int, filled, fee: float, d: FeeDisposition) -> float:
    """Recruiter's value from one post: hires minus screening plus retained fees.

    ``filled`` is a bool for a single seat or the number of seats filled.
    """
    if n_applications < 0:
        raise ValueError("n_applications must be >= 0")
    return (
        post.hire_value * filled
        - post.screening_cost_per_application * n_applications
        + fee * n_applications * FeeDisposition(d).recruiter_multiplier
    )


@dataclass(frozen=True)
class OptimalFee:
    fee: float
    net_value: float
    table: tuple[tuple[float, float, float], ...]  # (fee, mean net value, mean applications)
    replications: int
    base_seed: int

    def __iter__(self):
        return iter((self.fee, self.net_value))


def optimal_fee(
    post: JobPost,
    scenario: MarketScenario,
    grid: FeeGrid | Sequence[float],
    replications: int = DEFAULT_REPLICATIONS,
    base_seed: Optional[int] = None,
) -> OptimalFee:
    """Grid-search the fee for one post, other posts' fees held fixed.

    Each grid fee is scored by the mean recruiter net value over
    ``replications`` simulated rounds with seeds derived from ``base_seed``
    (the scenario seed by default); the same seeds are used at every grid
    point. Ties go to the lowest fee.
    """
    from .simulator import replication_seed, run_round

    fees = sorted(grid.points() if isinstance(grid, FeeGrid) else grid)
    if not fees:
        raise ValueError("empty fee grid")
    if replications < 1:
        raise ValueError("replications must be >= 1")
    base_seed = scenario.seed if base_seed is None else base_seed
    seeds = [replication_seed(base_seed, i) for i in range(replications)]

    table = []
    best = None
    for f in fees:
        priced = scenario.with_fees({post.id: f})
        this_post = next(p for p in priced.posts if p.id == post.id)
        nets, apps = [], []
        for seed in seeds:
            metrics = run_round(replace(priced, seed=seed))
            n = metrics.applications_per_post[post.id]
            filled = sum(1 for _, pid in metrics.hires if pid == post.id)
            nets.append(recruiter_net_value(this_post, n, filled, f, priced.fee_disposition))
            apps.append(n)
        mean_net = math.fsum(nets) / len(nets)
        table.append((f, mean_net, math.fsum(apps) / len(apps)))
        if best is None or mean_net > best[1]:
            best = (f, mean_net)
    return OptimalFee(best[0], best[1], tuple(table), replications, base_seed)


def resolve_fees(policy: FeePolicy, scenario: MarketScenario, noise_draws: int = DEFAULT_NOISE_DRAWS) -> dict[str, float]:
    """Per-post fees a policy produces on a scenario."""
    if policy.mode == "fixed":
        return {p.id: policy.fee for p in scenario.posts}
    if policy.mode == "target_volume":
        f = fee_for_target(scenario, policy.target, noise_draws=noise_draws)
        return {p.id: f for p in scenario.posts}
    scenario = replace(scenario, fee_disposition=policy.disposition)
    return {p.id: optimal_fee(p, scenario, policy.grid).fee for p in scenario.posts}
