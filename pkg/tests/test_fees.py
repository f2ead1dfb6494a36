import math
from dataclasses import replace

import numpy as np
import pytest

from appfee import (
    Candidate,
    FeeDisposition,
    FeeGrid,
    FeePolicy,
    JobPost,
    MarketScenario,
    MatchModel,
    UnreachableTargetError,
    expected_applications,
    fee_for_target,
    optimal_fee,
    recruiter_net_value,
)
from appfee.fees import pricing_out_fee, resolve_fees
from appfee.strategy import relevant_posts

from conftest import random_scenario

M = MatchModel(sigma=1.0, peak_probability=0.5)


def distance_for(p, m=M):
    """Skill distance at which the recruitment chance equals ``p``."""
    return m.sigma * math.sqrt(2 * math.log(m.peak_probability / p))


def grid_scan(scenario, target, step=1e-3):
    f = 0.0
    while expected_applications(scenario, f) > target:
        f += step
    return f


def small_market(seed, n_candidates=100, reward=(1.0, 4.0)):
    rng = np.random.default_rng(seed)
    cands = tuple(
        Candidate(f"c{i:03d}", float(rng.uniform(0, 10)), float(rng.uniform(*reward)), float(rng.uniform(0, 5)))
        for i in range(n_candidates)
    )
    posts = tuple(JobPost(f"p{j:02d}", float(r)) for j, r in enumerate(np.linspace(0, 10, 8)))
    return MarketScenario(cands, posts, M, seed=seed)


def test_prohibitive_fee_means_no_applications():
    s = small_market(1)
    fee = M.peak_probability * max(c.reward_value for c in s.candidates) * 1.01
    assert expected_applications(s, fee) == 0


def test_zero_fee_is_mass_application():
    s = small_market(2)
    relevant = sum(len(relevant_posts(c.true_skill, s.posts, M)) for c in s.candidates)
    assert expected_applications(s, 0.0) == relevant


def test_hand_worked_three_post_example():
    # p = 0.5, 0.3, 0.01; budget covers two fee-5 applications:
    # {1,2}: 100*(1 - .5*.7) - 10 = 55 beats {1,3}: 40.5 and {2,3}: 20.7
    c = Candidate("c", 0.0, reward_value=100.0, budget=10.0)
    posts = tuple(JobPost(f"p{k}", distance_for(p)) for k, p in enumerate([0.5, 0.3, 0.01]))
    s = MarketScenario((c,), posts, M)
    assert expected_applications(s, 5.0) == 2


def test_noisy_expectation_is_seeded_mean():
    s = small_market(3, n_candidates=10)
    s = replace(s, candidates=tuple(replace(c, assessment_noise=0.5) for c in s.candidates))
    a = expected_applications(s, 0.3, noise_draws=8)
    assert a == expected_applications(s, 0.3, noise_draws=8)
    assert a * 8 == int(a * 8)


def test_target_equal_to_free_volume_needs_no_fee():
    s = small_market(4, n_candidates=20)
    assert fee_for_target(s, expected_applications(s, 0.0)) == 0.0


def test_zero_target_prices_everyone_out():
    # a candidate standing exactly on a post is only priced out at p_max * R
    s = small_market(5, n_candidates=20)
    s = replace(s, candidates=s.candidates + (Candidate("on_post", 10.0, reward_value=4.5, budget=10.0),))
    assert fee_for_target(s, 0) == pricing_out_fee(s) == 0.5 * 4.5


def test_unreachable_target():
    s = small_market(6, n_candidates=5)
    with pytest.raises(UnreachableTargetError):
        fee_for_target(s, expected_applications(s, 0.0) + 1)
    with pytest.raises(ValueError):
        fee_for_target(s, -1)


def test_bisection_agrees_with_grid_scan():
    s = small_market(7, n_candidates=100, reward=(1.0, 2.0))
    target = 0.4 * expected_applications(s, 0.0)
    f = fee_for_target(s, target)
    g = grid_scan(s, target)
    assert expected_applications(s, f) <= target
    assert abs(f - g) <= 1e-3 + 1e-6


def test_bisection_is_tight():
    for seed in range(10):
        s = small_market(100 + seed, n_candidates=15)
        target = math.floor(expected_applications(s, 0.0) * 0.5)
        f = fee_for_target(s, target)
        assert expected_applications(s, f) <= target
        assert f - 1e-6 < 0 or expected_applications(s, f - 1e-6) > target


def test_expected_applications_nonincreasing(rng):
    for _ in range(40):
        s = random_scenario(rng, noise=bool(rng.random() < 0.3))
        f1, f2 = sorted(rng.uniform(-5, 40, 2))
        assert expected_applications(s, f2, noise_draws=4) <= expected_applications(s, f1, noise_draws=4)


def test_net_value_examples():
    post = JobPost("p", 0.0, screening_cost_per_application=10.0, hire_value=1000.0)
    assert recruiter_net_value(post, 0, False, 20.0, FeeDisposition.KEPT) == 0
    assert recruiter_net_value(post, 50, True, 20.0, FeeDisposition.KEPT) == 1500
    assert recruiter_net_value(post, 50, True, 20.0, FeeDisposition.DONATED) == 500
    assert recruiter_net_value(post, 50, True, 20.0, FeeDisposition.DOUBLE_DONATED) == -500


def test_fee_grid_points():
    assert FeeGrid(-1, 1, 0.5).points() == [-1, -0.5, 0, 0.5, 1]
    assert len(FeeGrid(0, 2, 0.1).points()) == 21
    with pytest.raises(ValueError):
        FeeGrid(0, 1, 0)
    with pytest.raises(ValueError):
        FeeGrid(2, 1, 0.1)


def test_policy_validation():
    with pytest.raises(ValueError):
        FeePolicy.target_volume(-1)
    with pytest.raises(ValueError):
        FeePolicy("auction")


def _one_post_market(hire_value, screening=0.0, capacity=1):
    c = Candidate("c", 0.0, reward_value=10.0, budget=100.0)
    post = JobPost("p", 0.5, screening_cost_per_application=screening, capacity=capacity, hire_value=hire_value)
    return MarketScenario((c,), (post,), M), post


def test_singleton_grid():
    s, post = _one_post_market(5.0)
    assert optimal_fee(post, s, [3.25]).fee == 3.25
    with pytest.raises(ValueError):
        optimal_fee(post, s, [])


def test_free_screening_kept_fees_charge_up_to_last_applicant():
    s, post = _one_post_market(0.0)
    grid = FeeGrid(0, 6, 0.25)
    result = optimal_fee(post, s, grid)
    # enumerate the grid: highest fee at which the candidate still applies
    applying = [f for f, _, apps in result.table if apps >= 1]
    assert result.fee == max(applying)
    assert result.net_value == max(applying)


@pytest.mark.parametrize("hire_value, picks_negative", [(10.0, True), (1.0, False)])
def test_negative_fee_only_when_it_pays(hire_value, picks_negative):
    # at positive fees nobody applies; paying 2 per applicant fills the seat
    s, post = _one_post_market(hire_value, screening=0.5)
    result = optimal_fee(post, s, [-2.0, 5.0, 8.0])
    nets = {f: net for f, net, _ in result.table}
    assert nets[5.0] == nets[8.0] == 0
    assert nets[-2.0] == pytest.approx(hire_value - 0.5 - 2.0)
    assert (result.fee == -2.0) is picks_negative
    if not picks_negative:
        assert result.fee == 5.0  # ties go to the lowest fee


def test_optimal_fee_reports_its_seeds():
    s, post = _one_post_market(3.0)
    r = optimal_fee(post, s, [1.0, 2.0], replications=3, base_seed=11)
    assert (r.replications, r.base_seed) == (3, 11)
    fee, net = r
    assert fee == r.fee and net == r.net_value


def test_resolve_fees():
    s = small_market(8, n_candidates=20)
    assert set(resolve_fees(FeePolicy.fixed(1.5), s).values()) == {1.5}
    target = resolve_fees(FeePolicy.target_volume(10), s)
    assert len(set(target.values())) == 1
    opt = resolve_fees(FeePolicy.optimize(FeeGrid(0, 1, 0.5)), s)
    assert set(opt) == {p.id for p in s.posts}
