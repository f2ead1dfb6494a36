"""Domain model shared by every part of the simulator.

All records are frozen dataclasses. Construction never validates; call
:func:`validate_scenario` to check a whole scenario and get every violated
invariant at once.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Mapping


class FeeDisposition(str, enum.Enum):
    """What a recruiter does with collected submission fees."""

    KEPT = "kept"
    DONATED = "donated"
    DOUBLE_DONATED = "double_donated"

    @property
    def recruiter_multiplier(self) -> int:
        # kept: recruiter pockets fees; donated: passes them on;
        # double_donated: passes them on and matches them from its own pocket
        return {"kept": 1, "donated": 0, "double_donated": -1}[self.value]

    @property
    def charity_multiplier(self) -> int:
        return {"kept": 0, "donated": 1, "double_donated": 2}[self.value]


class HiringMode(str, enum.Enum):
    PAPER_LITERAL = "paper_literal"
    CAPACITY_RANKED = "capacity_ranked"


@dataclass(frozen=True)
class Candidate:
    id: str
    true_skill: float
    reward_value: float
    budget: float = math.inf
    assessment_noise: float = 0.0


@dataclass(frozen=True)
class JobPost:
    id: str
    required_skill: float
    fee: float = 0.0
    screening_cost_per_application: float = 0.0
    capacity: int = 1
    hire_value: float = 0.0


@dataclass(frozen=True)
class MatchModel:
    """Gaussian recruitment-chance curve.

    ``sigma`` is the width in skill units, ``peak_probability`` the chance
    of recruitment when the post requirement equals the candidate's skill,
    and posts whose chance falls below ``probability_cutoff`` are never
    considered by a candidate.
    """

    sigma: float
    peak_probability: float = 0.5
    probability_cutoff: float = 1e-4


@dataclass(frozen=True)
class MarketScenario:
    candidates: tuple[Candidate, ...] = ()
    posts: tuple[JobPost, ...] = ()
    match_model: MatchModel = field(default_factory=lambda: MatchModel(sigma=1.0))
    fee_disposition: FeeDisposition = FeeDisposition.KEPT
    hiring_mode: HiringMode = HiringMode.CAPACITY_RANKED
    seed: int = 0

    def __post_init__(self):
        # lists are accepted for convenience but stored as tuples so the
        # scenario stays hashable and immutable
        object.__setattr__(self, "candidates", tuple(self.candidates))
        object.__setattr__(self, "posts", tuple(self.posts))

    def with_uniform_fee(self, fee: float) -> "MarketScenario":
        return replace(self, posts=tuple(replace(p, fee=fee) for p in self.posts))

    def with_fees(self, fees: Mapping[str, float]) -> "MarketScenario":
        """Copy of the scenario with the fee of each post in ``fees`` replaced."""
        return replace(
            self,
            posts=tuple(replace(p, fee=fees.get(p.id, p.fee)) for p in self.posts),
        )


@dataclass(frozen=True)
class WelfareLedger:
    candidate_surplus: float = 0.0
    recruiter_surplus: float = 0.0
    charity_transfers: float = 0.0

    @property
    def total(self) -> float:
        return self.candidate_surplus + self.recruiter_surplus + self.charity_transfers


@dataclass(frozen=True)
class SimulationMetrics:
    applications_per_post: Mapping[str, int] = field(default_factory=dict)
    total_applications: int = 0
    total_fees_paid: float = 0.0
    total_screening_cost: float = 0.0
    hires: tuple[tuple[str, str], ...] = ()
    mean_hire_mismatch: float = 0.0
    welfare: WelfareLedger = field(default_factory=WelfareLedger)

    @property
    def n_hires(self) -> int:
        return len(self.hires)

    def scalars(self) -> dict[str, float]:
        """Flat numeric view used by replications, deltas and CSV output."""
        return {
            "total_applications": self.total_applications,
            "total_fees_paid": self.total_fees_paid,
            "total_screening_cost": self.total_screening_cost,
            "n_hires": self.n_hires,
            "mean_hire_mismatch": self.mean_hire_mismatch,
            "candidate_surplus": self.welfare.candidate_surplus,
            "recruiter_surplus": self.welfare.recruiter_surplus,
            "charity_transfers": self.welfare.charity_transfers,
        }


SCALAR_METRICS = tuple(SimulationMetrics().scalars())


class ScenarioValidationError(ValueError):
    """Raised with the full list of ``(path, message)`` problems found."""

    def __init__(self, errors: list[tuple[str, str]]):
        self.errors = list(errors)
        lines = "\n".join(f"  {path}: {msg}" for path, msg in self.errors)
        super().__init__(f"{len(self.errors)} invalid field(s):\n{lines}")


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _check_real(errors, path, value, *, finite=True, minimum=None):
    if not _is_number(value) or math.isnan(value):
        errors.append((path, f"must be a number, got {value!r}"))
        return
    if finite and math.isinf(value):
        errors.append((path, f"must be finite, got {value!r}"))
        return
    if minimum is not None and value < minimum:
        errors.append((path, f"must be >= {minimum}, got {value!r}"))


def scenario_errors(s: MarketScenario) -> list[tuple[str, str]]:
    """Every violated invariant of ``s`` as ``(field path, message)`` pairs."""
    errors: list[tuple[str, str]] = []

    seen: dict[str, int] = {}
    for i, c in enumerate(s.candidates):
        path = f"candidates[{i}]"
        if not isinstance(c.id, str) or not c.id:
            errors.append((f"{path}.id", "must be a non-empty string"))
        elif c.id in seen:
            errors.append((f"{path}.id", f"duplicate candidate id {c.id!r} (first at candidates[{seen[c.id]}])"))
        else:
            seen[c.id] = i
        _check_real(errors, f"{path}.true_skill", c.true_skill)
        _check_real(errors, f"{path}.reward_value", c.reward_value, minimum=0)
        _check_real(errors, f"{path}.budget", c.budget, finite=False, minimum=0)
        _check_real(errors, f"{path}.assessment_noise", c.assessment_noise, minimum=0)

    seen = {}
    for i, p in enumerate(s.posts):
        path = f"posts[{i}]"
        if not isinstance(p.id, str) or not p.id:
            errors.append((f"{path}.id", "must be a non-empty string"))
        elif p.id in seen:
            errors.append((f"{path}.id", f"duplicate post id {p.id!r} (first at posts[{seen[p.id]}])"))
        else:
            seen[p.id] = i
        _check_real(errors, f"{path}.required_skill", p.required_skill)
        _check_real(errors, f"{path}.fee", p.fee)
        _check_real(errors, f"{path}.screening_cost_per_application", p.screening_cost_per_application, minimum=0)
        _check_real(errors, f"{path}.hire_value", p.hire_value, minimum=0)
        if not isinstance(p.capacity, int) or isinstance(p.capacity, bool) or p.capacity < 1:
            errors.append((f"{path}.capacity", f"must be an integer >= 1, got {p.capacity!r}"))

    m = s.match_model
    n_before = len(errors)
    _check_real(errors, "match_model.sigma", m.sigma)
    if len(errors) == n_before and m.sigma <= 0:
        errors.append(("match_model.sigma", f"must be > 0, got {m.sigma!r}"))
    n_before = len(errors)
    _check_real(errors, "match_model.peak_probability", m.peak_probability)
    peak_ok = len(errors) == n_before and 0 < m.peak_probability <= 1
    if len(errors) == n_before and not peak_ok:
        errors.append(("match_model.peak_probability", f"must be in (0, 1], got {m.peak_probability!r}"))
    n_before = len(errors)
    _check_real(errors, "match_model.probability_cutoff", m.probability_cutoff)
    if len(errors) == n_before:
        if not 0 <= m.probability_cutoff < 1:
            errors.append(("match_model.probability_cutoff", f"must be in [0, 1), got {m.probability_cutoff!r}"))
        elif peak_ok and m.probability_cutoff >= m.peak_probability:
            errors.append(("match_model.probability_cutoff", "must be below peak_probability"))

    if not isinstance(s.fee_disposition, FeeDisposition):
        errors.append(("fee_disposition", f"unknown disposition {s.fee_disposition!r}"))
    if not isinstance(s.hiring_mode, HiringMode):
        errors.append(("hiring_mode", f"unknown hiring mode {s.hiring_mode!r}"))
    if not isinstance(s.seed, int) or isinstance(s.seed, bool) or not 0 <= s.seed < 2**64:
        errors.append(("seed", f"must be an unsigned 64-bit integer, got {s.seed!r}"))
    return errors


def validate_scenario(s: MarketScenario) -> MarketScenario:
    """Return ``s`` unchanged if it is valid, else raise ScenarioValidationError."""
    errors = scenario_errors(s)
    if errors:
        raise ScenarioValidationError(errors)
    return s
