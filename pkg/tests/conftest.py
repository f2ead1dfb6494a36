import math

import numpy as np
import pytest
from hypothesis import strategies as st

from appfee import Candidate, JobPost, MarketScenario, MatchModel
from appfee.types import FeeDisposition, HiringMode

SEED = 20240601


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def random_instance(rng, n_posts, fee_high=30.0, cutoff=1e-4):
    """One candidate and ``n_posts`` posts that all survive pruning."""
    sigma = rng.uniform(0.5, 2.0)
    m = MatchModel(sigma=sigma, peak_probability=rng.uniform(0.1, 1.0), probability_cutoff=cutoff)
    mu = rng.uniform(0, 10)
    # stay well inside the cutoff radius so every post is relevant
    radius = sigma * math.sqrt(2 * math.log(m.peak_probability / cutoff)) * 0.9
    posts = [
        JobPost(f"p{j:02d}", float(mu + rng.uniform(-radius, radius)), fee=float(rng.uniform(0, fee_high)))
        for j in range(n_posts)
    ]
    c = Candidate("c", float(mu), reward_value=float(rng.uniform(10, 150)), budget=float(rng.uniform(0, 80)))
    return c, posts, m


def random_scenario(rng, n_candidates=None, n_posts=None, noise=False, mode=None, disposition=None):
    n_candidates = int(rng.integers(1, 30)) if n_candidates is None else n_candidates
    n_posts = int(rng.integers(1, 10)) if n_posts is None else n_posts
    m = MatchModel(sigma=float(rng.uniform(0.5, 2.0)), peak_probability=float(rng.uniform(0.1, 1.0)))
    cands = tuple(
        Candidate(
            f"c{i:03d}",
            float(rng.uniform(0, 10)),
            reward_value=float(rng.uniform(1, 100)),
            budget=float(rng.uniform(0, 60)),
            assessment_noise=float(rng.uniform(0, 1)) if noise else 0.0,
        )
        for i in range(n_candidates)
    )
    posts = tuple(
        JobPost(
            f"p{j:02d}",
            float(rng.uniform(0, 10)),
            fee=float(rng.uniform(-2, 20)),
            screening_cost_per_application=float(rng.uniform(0, 3)),
            capacity=int(rng.integers(1, 4)),
            hire_value=float(rng.uniform(0, 100)),
        )
        for j in range(n_posts)
    )
    mode = mode or (HiringMode.PAPER_LITERAL if rng.random() < 0.5 else HiringMode.CAPACITY_RANKED)
    disposition = disposition or list(FeeDisposition)[int(rng.integers(0, 3))]
    return MarketScenario(cands, posts, m, disposition, mode, int(rng.integers(0, 2**63)))


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


# ---------------------------------------------------------------------------
# Every round simulated anywhere in the suite is checked for a balanced fee
# ledger; the acceptance module reports the tally.

ROUND_AUDIT = {"rounds": 0, "worst_gap": 0.0}


def audit_round(result):
    from appfee.simulator import ledger_from_events

    m = result.metrics
    w, rebuilt = m.welfare, ledger_from_events(result)
    d = result.scenario.fee_disposition
    fee_revenue = math.fsum(e.amount for e in result.events if e.kind == "fee_payment")
    recruiter_fee_share = fee_revenue * d.recruiter_multiplier
    gap = max(
        abs(w.candidate_surplus - rebuilt.candidate_surplus),
        abs(w.recruiter_surplus - rebuilt.recruiter_surplus),
        abs(w.charity_transfers - rebuilt.charity_transfers),
        # every fee paid ends up with the recruiter or a charity
        abs(m.total_fees_paid - (recruiter_fee_share + w.charity_transfers)),
    )
    ROUND_AUDIT["rounds"] += 1
    ROUND_AUDIT["worst_gap"] = max(ROUND_AUDIT["worst_gap"], gap)
    assert gap <= 1e-9, f"fee ledger out of balance by {gap:g}"


def _install_audit():
    # patched at import so test modules importing play_round get the audited one
    from appfee import simulator

    original = simulator.play_round

    def play_round(scenario):
        result = original(scenario)
        audit_round(result)
        return result

    simulator.play_round = play_round


_install_audit()


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title}: {detail}")
