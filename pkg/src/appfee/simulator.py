"""One market round end to end, plus replications and fee comparisons.

A round runs in five steps: candidates estimate their own skill, each picks
where to apply, fees are paid and passed on per the disposition, recruiters
hire, and the metrics are assembled. All randomness comes from independent
streams spawned off the scenario seed, so a round is a pure function of the
scenario.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .fees import (
    DEFAULT_NOISE_DRAWS,
    HIRING_STREAM,
    PERCEPTION_STREAM,
    FeePolicy,
    recruiter_net_value,
    resolve_fees,
)
from .match import recruitment_probability
from .strategy import ApplicationPlan, perceive_skill, select_applications
from .types import (
    SCALAR_METRICS,
    HiringMode,
    MarketScenario,
    SimulationMetrics,
    WelfareLedger,
    validate_scenario,
)


@dataclass(frozen=True)
class Event:
    kind: str  # application | fee_payment | charity_transfer | hire
    candidate_id: str
    post_id: str
    amount: float = 0.0


@dataclass(frozen=True)
class RoundResult:
    scenario: MarketScenario
    perceived: tuple[float, ...]
    plans: tuple[ApplicationPlan, ...]
    events: tuple[Event, ...]
    metrics: SimulationMetrics


def stream(seed: int, key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(key,)))


def replication_seed(base_seed: int, index: int) -> int:
    """Seed of replication ``index``, an independent 64-bit draw off ``base_seed``."""
    ss = np.random.SeedSequence(base_seed, spawn_key=(index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def play_round(scenario: MarketScenario) -> RoundResult:
    validate_scenario(scenario)
    m = scenario.match_model
    cands = scenario.candidates
    posts = scenario.posts
    post_index = {p.id: j for j, p in enumerate(posts)}
    disposition = scenario.fee_disposition

    rng = stream(scenario.seed, PERCEPTION_STREAM)
    perceived = tuple(perceive_skill(c, rng) for c in cands)
    plans = tuple(select_applications(c, mu, posts, m) for c, mu in zip(cands, perceived))

    events: list[Event] = []
    applicants: list[list[int]] = [[] for _ in posts]
    for i, (c, plan) in enumerate(zip(cands, plans)):
        for pid in plan.post_ids:
            post = posts[post_index[pid]]
            applicants[post_index[pid]].append(i)
            events.append(Event("application", c.id, pid))
            events.append(Event("fee_payment", c.id, pid, post.fee))
            if disposition.charity_multiplier:
                events.append(Event("charity_transfer", c.id, pid, post.fee * disposition.charity_multiplier))

    hires = _hire(scenario, applicants)
    for i, j in hires:
        events.append(Event("hire", cands[i].id, posts[j].id, posts[j].hire_value))

    counts = [len(a) for a in applicants]
    hired_per_post = [0] * len(posts)
    for _, j in hires:
        hired_per_post[j] += 1
    fees_by_candidate = [math.fsum(posts[post_index[pid]].fee for pid in plan.post_ids) for plan in plans]
    hired_candidates = {i for i, _ in hires}

    candidate_surplus = math.fsum(
        (c.reward_value if i in hired_candidates else 0.0) - fees_by_candidate[i] for i, c in enumerate(cands)
    )
    recruiter_surplus = math.fsum(
        recruiter_net_value(p, counts[j], hired_per_post[j], p.fee, disposition) for j, p in enumerate(posts)
    )
    charity = math.fsum(p.fee * counts[j] * disposition.charity_multiplier for j, p in enumerate(posts))
    mismatches = [abs(cands[i].true_skill - posts[j].required_skill) for i, j in hires]

    metrics = SimulationMetrics(
        applications_per_post={p.id: counts[j] for j, p in enumerate(posts)},
        total_applications=sum(counts),
        total_fees_paid=math.fsum(fees_by_candidate),
        total_screening_cost=math.fsum(p.screening_cost_per_application * counts[j] for j, p in enumerate(posts)),
        hires=tuple((cands[i].id, posts[j].id) for i, j in hires),
        mean_hire_mismatch=math.fsum(mismatches) / len(mismatches) if mismatches else 0.0,
        welfare=WelfareLedger(candidate_surplus, recruiter_surplus, charity),
    )
    return RoundResult(scenario, perceived, plans, tuple(events), metrics)


def _hire(scenario: MarketScenario, applicants: list[list[int]]) -> list[tuple[int, int]]:
    cands, posts = scenario.candidates, scenario.posts
    hires = []
    if scenario.hiring_mode is HiringMode.PAPER_LITERAL:
        # one uniform per (candidate, post) pair whether or not they applied,
        # so runs that differ only in who applied share their draws
        u = stream(scenario.seed, HIRING_STREAM).random((len(cands), len(posts)))
        for j, post in enumerate(posts):
            for i in applicants[j]:
                if u[i, j] < recruitment_probability(cands[i].true_skill, post.required_skill, scenario.match_model):
                    hires.append((i, j))
        hires.sort(key=lambda ij: (cands[ij[0]].id, posts[ij[1]].id))
        return hires

    # capacity_ranked: posts in id order, best true match first,
    # a hired candidate leaves the market
    taken = set()
    for j in sorted(range(len(posts)), key=lambda j: posts[j].id):
        post = posts[j]
        ranked = sorted(
            (i for i in applicants[j] if i not in taken),
            key=lambda i: (abs(cands[i].true_skill - post.required_skill), cands[i].id),
        )
        for i in ranked[: post.capacity]:
            taken.add(i)
            hires.append((i, j))
    return hires


def run_round(scenario: MarketScenario) -> SimulationMetrics:
    return play_round(scenario).metrics


def ledger_from_events(result: RoundResult) -> WelfareLedger:
    """Rebuild the welfare ledger from the event log alone."""
    cands = {c.id: c for c in result.scenario.candidates}
    posts = {p.id: p for p in result.scenario.posts}
    paid, charity, received, hire_value, screening = [], [], [], [], []
    hired = set()
    for e in result.events:
        if e.kind == "application":
            screening.append(posts[e.post_id].screening_cost_per_application)
        elif e.kind == "fee_payment":
            paid.append(e.amount)
            received.append(e.amount)
        elif e.kind == "charity_transfer":
            charity.append(e.amount)
        elif e.kind == "hire":
            hire_value.append(e.amount)
            hired.add(e.candidate_id)
    rewards = [cands[cid].reward_value for cid in sorted(hired)]
    return WelfareLedger(
        candidate_surplus=math.fsum(rewards) - math.fsum(paid),
        recruiter_surplus=math.fsum(hire_value) - math.fsum(screening) + math.fsum(received) - math.fsum(charity),
        charity_transfers=math.fsum(charity),
    )


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    std: float
    min: float
    max: float


@dataclass(frozen=True)
class ReplicationSummary:
    n: int
    base_seed: int
    seeds: tuple[int, ...]
    stats: dict[str, MetricSummary]
    runs: tuple[SimulationMetrics, ...]


def map_ordered(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def run_replications(
    scenario: MarketScenario, n: int, base_seed: Optional[int] = None, workers: int = 1
) -> ReplicationSummary:
    """Run ``n`` rounds on independent seeds and summarise every scalar metric.

    Replication ``i`` runs with ``replication_seed(base_seed, i)``. Results are
    reduced in index order, so the summary does not depend on ``workers``.
    """
    if n < 1:
        raise ValueError("need at least one replication")
    validate_scenario(scenario)
    base_seed = scenario.seed if base_seed is None else base_seed
    seeds = tuple(replication_seed(base_seed, i) for i in range(n))
    runs = tuple(map_ordered(lambda s: run_round(replace(scenario, seed=s)), seeds, workers))
    return ReplicationSummary(n, base_seed, seeds, summarize(runs), runs)


def summarize(runs) -> dict[str, MetricSummary]:
    stats = {}
    for name in SCALAR_METRICS:
        values = [float(r.scalars()[name]) for r in runs]
        # statistics works in exact arithmetic: identical runs give std exactly 0
        stats[name] = MetricSummary(
            mean=statistics.fmean(values),
            std=statistics.pstdev(values),
            min=min(values),
            max=max(values),
        )
    return stats


@dataclass(frozen=True)
class ComparisonReport:
    baseline: SimulationMetrics
    treated: SimulationMetrics
    fees: dict[str, float]
    deltas: dict[str, float]


def run_comparison(
    scenario: MarketScenario, policy: FeePolicy, noise_draws: int = DEFAULT_NOISE_DRAWS
) -> ComparisonReport:
    """Free-submission baseline against the same market under ``policy``.

    Both arms use the same seed, hence identical skill perceptions and
    hiring draws, so the deltas isolate the effect of the fee.
    """
    validate_scenario(scenario)
    scenario = replace(scenario, fee_disposition=policy.disposition)
    free = scenario.with_uniform_fee(0.0)
    fees = resolve_fees(policy, free, noise_draws=noise_draws)
    baseline = run_round(free)
    treated = run_round(free.with_fees(fees))
    b, t = baseline.scalars(), treated.scalars()
    return ComparisonReport(baseline, treated, fees, {k: t[k] - b[k] for k in b})
