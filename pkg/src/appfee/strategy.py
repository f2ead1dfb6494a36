"""The rational candidate: noisy self-assessment and choice of where to apply.

A candidate with reward ``R`` for being recruited picks the set of posts ``S``
maximising::

    U(S) = R * (1 - prod_{i in S} (1 - p_i)) - sum_{i in S} fee_i

subject to ``sum_{i in S} max(fee_i, 0) <= budget``. The chances ``p_i`` come
from the candidate's *perceived* skill, not the true one.

Ties between plans of equal utility go to the smaller total fee, then to the
larger set (a free application that cannot hurt is still submitted), then to
the lexicographically smallest tuple of post ids.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .match import combined_probability, recruitment_probability
from .types import Candidate, JobPost, MatchModel

EXHAUSTIVE_LIMIT = 18
ORACLE_LIMIT = 20


@dataclass(frozen=True)
class ApplicationPlan:
    candidate_id: str
    post_ids: tuple[str, ...]
    total_fee: float
    believed_overall_chance: float
    expected_utility: float

    def __len__(self):
        return len(self.post_ids)


def perceive_skill(c: Candidate, rng: np.random.Generator) -> float:
    """Draw the candidate's estimate of their own skill.

    Always consumes exactly one standard normal from ``rng`` so that streams
    stay aligned between runs that differ only in fees.
    """
    return c.true_skill + c.assessment_noise * float(rng.standard_normal())


def application_ev(p: float, reward: float, fee: float) -> float:
    """Expected value of a single application considered on its own."""
    return p * reward - fee


def relevant_posts(perceived: float, posts: Sequence[JobPost], m: MatchModel) -> list[tuple[JobPost, float]]:
    """Posts whose believed chance reaches the cutoff, ordered by post id."""
    out = []
    for post in posts:
        p = recruitment_probability(perceived, post.required_skill, m)
        if p >= m.probability_cutoff:
            out.append((post, p))
    out.sort(key=lambda pair: pair[0].id)
    return out


def _spend(chosen) -> float:
    return math.fsum(max(post.fee, 0.0) for post, _ in chosen)


def _make_plan(c: Candidate, chosen) -> ApplicationPlan:
    chosen = sorted(chosen, key=lambda pair: pair[0].id)
    chance = combined_probability(p for _, p in chosen)
    fee = math.fsum(post.fee for post, _ in chosen)
    return ApplicationPlan(
        candidate_id=c.id,
        post_ids=tuple(post.id for post, _ in chosen),
        total_fee=fee,
        believed_overall_chance=chance,
        expected_utility=c.reward_value * chance - fee,
    )


def _rank(plan: ApplicationPlan):
    return (-plan.expected_utility, plan.total_fee, -len(plan.post_ids), plan.post_ids)


def empty_plan(c: Candidate) -> ApplicationPlan:
    return ApplicationPlan(c.id, (), 0.0, 0.0, 0.0)


def select_applications_exhaustive(
    c: Candidate, perceived: float, posts: Sequence[JobPost], m: MatchModel
) -> ApplicationPlan:
    """Brute force over every subset of the relevant posts.

    Kept deliberately naive: it is the reference the fast selector is
    checked against.
    """
    cands = relevant_posts(perceived, posts, m)
    if len(cands) > ORACLE_LIMIT:
        raise ValueError(f"{len(cands)} relevant posts is too many for exhaustive search (limit {ORACLE_LIMIT})")
    best = empty_plan(c)
    for r in range(1, len(cands) + 1):
        for combo in itertools.combinations(cands, r):
            if _spend(combo) > c.budget:
                continue
            plan = _make_plan(c, combo)
            if _rank(plan) < _rank(best):
                best = plan
    return best


def select_applications(
    c: Candidate, perceived: float, posts: Sequence[JobPost], m: MatchModel
) -> ApplicationPlan:
    """Utility-maximising application set for one candidate.

    Free or paying posts (fee <= 0) never lower utility and are always in the
    optimum. A positive-fee post with ``R * p <= fee`` can never pay for itself,
    and neither can one the budget cannot cover, so both are dropped. The rest
    is solved exactly when at most ``EXHAUSTIVE_LIMIT`` posts remain and
    greedily (marginal gain per unit fee) otherwise.
    """
    cands = relevant_posts(perceived, posts, m)
    base = [(post, p) for post, p in cands if post.fee <= 0]
    paid = [
        (post, p)
        for post, p in cands
        if post.fee > 0 and post.fee <= c.budget and c.reward_value * p > post.fee
    ]
    if not paid:
        return _make_plan(c, base) if base else empty_plan(c)
    if len(paid) <= EXHAUSTIVE_LIMIT:
        return _enumerate(c, base, paid)
    return _greedy(c, base, paid)


def _enumerate(c: Candidate, base, paid) -> ApplicationPlan:
    # subset index bit j <=> paid[j] chosen; arrays are built by doubling
    base_miss = math.prod(1.0 - p for _, p in base)
    base_fee = math.fsum(post.fee for post, _ in base)
    miss = np.array([base_miss])
    spend = np.zeros(1)
    for post, p in paid:
        miss = np.concatenate([miss, miss * (1.0 - p)])
        spend = np.concatenate([spend, spend + post.fee])
    utility = c.reward_value * (1.0 - miss) - (base_fee + spend)
    slack = 1e-12 * (1.0 + abs(c.budget)) if math.isfinite(c.budget) else 0.0
    feasible = spend <= c.budget + slack
    top = utility[feasible].max()
    tol = 1e-9 * (1.0 + abs(c.reward_value) + abs(base_fee) + spend[-1])
    near = np.flatnonzero(feasible & (utility >= top - tol))

    best = None
    for idx in near:
        chosen = base + [paid[j] for j in range(len(paid)) if idx >> j & 1]
        if _spend(chosen) > c.budget:
            continue
        plan = _make_plan(c, chosen)
        if best is None or _rank(plan) < _rank(best):
            best = plan
    return best if best is not None else _make_plan(c, base) if base else empty_plan(c)


def _greedy(c: Candidate, base, paid) -> ApplicationPlan:
    chosen = list(base)
    miss = math.prod(1.0 - p for _, p in base)
    left = c.budget
    remaining = sorted(paid, key=lambda pair: pair[0].id)
    while remaining:
        best_j, best_ratio = None, 0.0
        for j, (post, p) in enumerate(remaining):
            if post.fee > left:
                continue
            ratio = (c.reward_value * p * miss - post.fee) / post.fee
            if ratio > best_ratio:
                best_j, best_ratio = j, ratio
        if best_j is None:
            break
        post, p = remaining.pop(best_j)
        chosen.append((post, p))
        miss *= 1.0 - p
        left -= post.fee

    plan = _make_plan(c, chosen)
    # the classic knapsack-greedy safeguard: a single expensive post can
    # beat a chain of cheap ones
    for pair in paid:
        single = _make_plan(c, base + [pair])
        if _rank(single) < _rank(plan):
            plan = single
    return plan
