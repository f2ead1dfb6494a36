import itertools
import math

import mpmath
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from appfee import MatchModel, combined_probability, gaussian_mass_within, marginal_mass, recruitment_probability

M = MatchModel(sigma=1.0, peak_probability=0.5)


def normal_mass_by_quadrature(k):
    pdf = lambda x: math.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)
    value, _ = quad(pdf, -k, k, epsabs=1e-13, epsrel=1e-13)
    return value


def test_peak_at_match():
    assert recruitment_probability(5.0, 5.0, M) == 0.5


def test_one_sigma_away():
    # 0.5 * exp(-1/2) evaluated with mpmath at 40 digits
    assert recruitment_probability(5.0, 6.0, M) == pytest.approx(0.30326532985631671180, rel=1e-15)


def test_ten_sigma_tail_is_negligible():
    mpmath.mp.dps = 40
    oracle = float(mpmath.mpf("0.5") * mpmath.e ** -50)  # 9.6437e-23
    p = recruitment_probability(5.0, 15.0, M)
    assert p < 1e-21
    assert p == pytest.approx(oracle, rel=1e-12)


@pytest.mark.parametrize("k, frozen", [(0, 0.0), (2, 0.9544997361036416), (4, 0.9999366575163341)])
def test_mass_within(k, frozen):
    # frozen values come from adaptive quadrature of the standard normal pdf
    assert gaussian_mass_within(k) == pytest.approx(frozen, abs=1e-12)
    assert gaussian_mass_within(k) == pytest.approx(normal_mass_by_quadrature(k), abs=1e-6)


@pytest.mark.parametrize("k", [0.5, 1, 2, 3, 4])
def test_mass_matches_brute_force_integration(k):
    # rectangle rule on a fine grid, independent of both erf and quad
    n = 200_000
    h = 2 * k / n
    total = sum(math.exp(-0.5 * (-k + (i + 0.5) * h) ** 2) for i in range(n)) * h / math.sqrt(2 * math.pi)
    assert gaussian_mass_within(k) == pytest.approx(total, abs=1e-6)


def test_negative_k_is_an_error():
    with pytest.raises(ValueError):
        gaussian_mass_within(-0.1)


@given(st.floats(0, 10), st.floats(0, 10))
def test_mass_strictly_increasing(a, b):
    if a < b and b - a > 1e-9 and a < 6:
        assert gaussian_mass_within(a) < gaussian_mass_within(b)


def test_mass_tends_to_one():
    assert 1 - gaussian_mass_within(8) < 1e-14


def test_marginal_mass():
    assert marginal_mass(2, 2) == 0
    assert marginal_mass(2, 4) == pytest.approx(0.04543692141269219, abs=1e-12)
    assert marginal_mass(0, 2) == pytest.approx(0.9544997361036416, abs=1e-12)
    with pytest.raises(ValueError):
        marginal_mass(4, 2)


def test_combined_probability_examples():
    assert combined_probability([]) == 0
    assert combined_probability([1.0, 0.2]) == 1.0
    # enumerate the four joint outcomes of two fair applications
    outcomes = itertools.product([True, False], repeat=2)
    assert combined_probability([0.5, 0.5]) == sum(0.25 for o in outcomes if any(o)) == 0.75


def test_combined_probability_rejects_bad_input():
    with pytest.raises(ValueError):
        combined_probability([0.5, 1.2])
    with pytest.raises(ValueError):
        combined_probability([-0.1])


probs = st.lists(st.floats(0, 1), max_size=12)


@given(probs, st.randoms())
def test_combined_is_order_independent(ps, random):
    shuffled = list(ps)
    random.shuffle(shuffled)
    assert combined_probability(shuffled) == combined_probability(ps)


@given(probs, st.floats(0, 1))
def test_combined_monotone_and_bounded(ps, extra):
    base = combined_probability(ps)
    assert 0 <= base <= 1
    assert base <= min(1.0, sum(ps)) + 1e-12
    assert combined_probability(ps + [extra]) >= base - 1e-15


@given(st.floats(-50, 50), st.floats(0, 20), st.floats(0.1, 5), st.floats(0.01, 1))
def test_symmetric_about_skill(mu, d, sigma, peak):
    m = MatchModel(sigma, peak)
    assert recruitment_probability(mu, mu + d, m) == pytest.approx(recruitment_probability(mu, mu - d, m), rel=1e-9, abs=1e-300)
    assert 0 <= recruitment_probability(mu, mu + d, m) <= peak


@given(st.floats(0, 10), st.floats(0, 10), st.floats(0.1, 5))
def test_decays_with_distance(d1, d2, sigma):
    m = MatchModel(sigma, 0.5)
    lo, hi = sorted((d1, d2))
    if hi - lo > 1e-6 and hi / sigma < 30:
        assert recruitment_probability(0.0, lo, m) > recruitment_probability(0.0, hi, m)


def test_fast_diminishing_tail():
    m = MatchModel(sigma=1.7, peak_probability=0.8)
    assert recruitment_probability(1.0, 1.0 + 4 * 1.7, m) / 0.8 < 0.00034
