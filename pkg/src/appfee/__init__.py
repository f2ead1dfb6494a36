"""Agent-based simulator of a job-application market with submission fees."""

__version__ = "0.1.0"

from .equilibrium import (
    Equilibrium,
    InfeasibleMarketError,
    LinearCurve,
    NoIntersectionError,
    compare_equilibria,
    solve_equilibrium,
)
from .fees import (
    FeeGrid,
    FeePolicy,
    UnreachableTargetError,
    expected_applications,
    fee_for_target,
    optimal_fee,
    recruiter_net_value,
)
from .match import (
    combined_probability,
    gaussian_mass_within,
    marginal_mass,
    recruitment_probability,
)
from .scenario_io import load_scenario, write_metrics_csv
from .simulator import run_comparison, run_replications, run_round
from .strategy import (
    ApplicationPlan,
    application_ev,
    perceive_skill,
    select_applications,
    select_applications_exhaustive,
)
from .taxonomy import Quadrant, classify_market, price_dispersion
from .types import (
    Candidate,
    FeeDisposition,
    HiringMode,
    JobPost,
    MarketScenario,
    MatchModel,
    ScenarioValidationError,
    SimulationMetrics,
    validate_scenario,
)
