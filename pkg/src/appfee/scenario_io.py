"""Scenario files in, CSV tables out.

Scenario files are UTF-8 JSON::

    {
      "seed": 42,
      "match_model": {"sigma": 1.0, "peak_probability": 0.5, "probability_cutoff": 1e-4},
      "hiring_mode": "capacity_ranked",
      "fee_policy": {"mode": "fixed", "fee": 5.0, "disposition": "kept"},
      "candidates": [{"id": "c1", "true_skill": 5.0, "reward_value": 100.0,
                      "budget": 50.0, "assessment_noise": 0.0}],
      "posts": [{"id": "p1", "required_skill": 5.0, "fee": 0.0,
                 "screening_cost_per_application": 1.0, "capacity": 1,
                 "hire_value": 0.0}]
    }

``match_model.sigma``, candidate ``id``/``true_skill``/``reward_value`` and
post ``id``/``required_skill`` are required; everything else has a default.
``budget`` may be ``null`` (or omitted) for an unlimited budget.

Instead of ``candidates`` (or ``posts``) a generator block can be given::

    "candidate_generator": {"count": 1000,
                            "true_skill": {"distribution": "uniform", "low": 0, "high": 10},
                            "reward_value": 100, "budget": {"distribution": "uniform", "low": 10, "high": 100},
                            "seed": 42}
    "post_generator": {"count": 20,
                       "required_skill": {"distribution": "grid", "low": 0, "high": 10},
                       "screening_cost_per_application": 1.0}

Every field of a generated record is either a constant or a distribution:
``uniform`` (low, high), ``normal`` (mean, std) or ``grid`` (``count``
evenly spaced values from low to high inclusive). Draws come from the
block's own ``seed`` or, if absent, the scenario seed.

``fee_policy`` modes are ``fixed`` (``fee``), ``target_volume``
(``target``) and ``optimize`` (``grid``: ``{"low", "high", "step"}``).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .fees import FeeGrid, FeePolicy
from .types import (
    SCALAR_METRICS,
    Candidate,
    FeeDisposition,
    HiringMode,
    JobPost,
    MarketScenario,
    MatchModel,
    SimulationMetrics,
    validate_scenario,
)

CANDIDATE_GENERATOR_STREAM = 10
POST_GENERATOR_STREAM = 11


class ScenarioFileError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioFile:
    scenario: MarketScenario
    fee_policy: Optional[FeePolicy]


_MISSING = object()


def _get(d: dict, key: str, path: str, default=_MISSING):
    if key in d:
        return d[key]
    if default is _MISSING:
        raise ScenarioFileError(f"{path}.{key}: missing required field")
    return default


def _number(value, path: str, *, allow_null_inf=False) -> float:
    if value is None and allow_null_inf:
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioFileError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise ScenarioFileError(f"{path}: expected an integer, got {value!r}")
    return value


def _object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ScenarioFileError(f"{path}: expected an object, got {type(value).__name__}")
    return value


def _enum(cls, value, path: str):
    try:
        return cls(value)
    except ValueError:
        choices = ", ".join(v.value for v in cls)
        raise ScenarioFileError(f"{path}: {value!r} is not one of {choices}") from None


def _unknown_keys(d: dict, allowed: Iterable[str], path: str):
    extra = sorted(set(d) - set(allowed))
    if extra:
        raise ScenarioFileError(f"{path}: unknown field(s) {', '.join(extra)}")


_CANDIDATE_FIELDS = {"id": _MISSING, "true_skill": _MISSING, "reward_value": _MISSING,
                     "budget": None, "assessment_noise": 0.0}
_POST_FIELDS = {"id": _MISSING, "required_skill": _MISSING, "fee": 0.0,
                "screening_cost_per_application": 0.0, "capacity": 1, "hire_value": 0.0}


def _candidate(d, path) -> Candidate:
    d = _object(d, path)
    _unknown_keys(d, _CANDIDATE_FIELDS, path)
    cid = _get(d, "id", path)
    if not isinstance(cid, str):
        raise ScenarioFileError(f"{path}.id: expected a string, got {cid!r}")
    return Candidate(
        id=cid,
        true_skill=_number(_get(d, "true_skill", path), f"{path}.true_skill"),
        reward_value=_number(_get(d, "reward_value", path), f"{path}.reward_value"),
        budget=_number(_get(d, "budget", path, None), f"{path}.budget", allow_null_inf=True),
        assessment_noise=_number(_get(d, "assessment_noise", path, 0.0), f"{path}.assessment_noise"),
    )


def _post(d, path) -> JobPost:
    d = _object(d, path)
    _unknown_keys(d, _POST_FIELDS, path)
    pid = _get(d, "id", path)
    if not isinstance(pid, str):
        raise ScenarioFileError(f"{path}.id: expected a string, got {pid!r}")
    return JobPost(
        id=pid,
        required_skill=_number(_get(d, "required_skill", path), f"{path}.required_skill"),
        fee=_number(_get(d, "fee", path, 0.0), f"{path}.fee"),
        screening_cost_per_application=_number(
            _get(d, "screening_cost_per_application", path, 0.0), f"{path}.screening_cost_per_application"
        ),
        capacity=_int(_get(d, "capacity", path, 1), f"{path}.capacity"),
        hire_value=_number(_get(d, "hire_value", path, 0.0), f"{path}.hire_value"),
    )


def _draw(field, count: int, rng: np.random.Generator, path: str) -> list:
    if not isinstance(field, dict):
        return [field] * count
    kind = _get(field, "distribution", path)
    if kind == "uniform":
        low = _number(_get(field, "low", path), f"{path}.low")
        high = _number(_get(field, "high", path), f"{path}.high")
        return rng.uniform(low, high, count).tolist()
    if kind == "normal":
        mean = _number(_get(field, "mean", path), f"{path}.mean")
        std = _number(_get(field, "std", path), f"{path}.std")
        return rng.normal(mean, std, count).tolist()
    if kind == "grid":
        low = _number(_get(field, "low", path), f"{path}.low")
        high = _number(_get(field, "high", path), f"{path}.high")
        return np.linspace(low, high, count).tolist()
    raise ScenarioFileError(f"{path}.distribution: unknown distribution {kind!r} (uniform, normal, grid)")


def _generate(block, path, fields: dict, stream_key: int, scenario_seed: int, prefix: str) -> list[dict]:
    block = _object(block, path)
    _unknown_keys(block, set(fields) - {"id"} | {"count", "seed", "id_prefix"}, path)
    count = _int(_get(block, "count", path), f"{path}.count")
    if count < 0:
        raise ScenarioFileError(f"{path}.count: must be >= 0")
    seed = _int(_get(block, "seed", path, scenario_seed), f"{path}.seed")
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream_key,)))
    prefix = _get(block, "id_prefix", path, prefix)
    width = len(str(max(count - 1, 0)))
    columns = {}
    # draw fields in a fixed order so the materialised records never depend on
    # the key order of the JSON object
    for name in fields:
        if name == "id":
            continue
        if name in block:
            columns[name] = _draw(block[name], count, rng, f"{path}.{name}")
        elif fields[name] is _MISSING:
            raise ScenarioFileError(f"{path}.{name}: missing required field")
    records = []
    for i in range(count):
        rec = {"id": f"{prefix}{i:0{width}d}"}
        rec.update({name: col[i] for name, col in columns.items()})
        records.append(rec)
    return records


def _fee_policy(d, disposition) -> FeePolicy:
    path = "fee_policy"
    d = _object(d, path)
    _unknown_keys(d, {"mode", "fee", "target", "grid", "disposition"}, path)
    mode = _get(d, "mode", path, "fixed")
    try:
        if mode == "fixed":
            return FeePolicy.fixed(_number(_get(d, "fee", path), f"{path}.fee"), disposition)
        if mode == "target_volume":
            return FeePolicy.target_volume(_number(_get(d, "target", path), f"{path}.target"), disposition)
        if mode == "optimize":
            g = _object(_get(d, "grid", path), f"{path}.grid")
            grid = FeeGrid(*(_number(_get(g, k, f"{path}.grid"), f"{path}.grid.{k}") for k in ("low", "high", "step")))
            return FeePolicy.optimize(grid, disposition)
    except ValueError as exc:
        if isinstance(exc, ScenarioFileError):
            raise
        raise ScenarioFileError(f"{path}: {exc}") from None
    raise ScenarioFileError(f"{path}.mode: unknown mode {mode!r} (fixed, target_volume, optimize)")


_TOP_LEVEL = {"seed", "match_model", "hiring_mode", "fee_policy", "fee_disposition",
              "candidates", "candidate_generator", "posts", "post_generator"}


def parse_scenario(data: Any) -> ScenarioFile:
    data = _object(data, "scenario")
    _unknown_keys(data, _TOP_LEVEL, "scenario")
    seed = _int(_get(data, "seed", "scenario", 0), "seed")

    mm = _object(_get(data, "match_model", "scenario"), "match_model")
    _unknown_keys(mm, {"sigma", "peak_probability", "probability_cutoff"}, "match_model")
    match_model = MatchModel(
        sigma=_number(_get(mm, "sigma", "match_model"), "match_model.sigma"),
        peak_probability=_number(_get(mm, "peak_probability", "match_model", 0.5), "match_model.peak_probability"),
        probability_cutoff=_number(_get(mm, "probability_cutoff", "match_model", 1e-4), "match_model.probability_cutoff"),
    )

    policy_data = data.get("fee_policy")
    disposition_raw = data.get("fee_disposition", "kept")
    if isinstance(policy_data, dict) and "disposition" in policy_data:
        disposition_raw = policy_data["disposition"]
    disposition = _enum(FeeDisposition, disposition_raw, "fee_policy.disposition")
    policy = _fee_policy(policy_data, disposition) if policy_data is not None else None
    hiring_mode = _enum(HiringMode, data.get("hiring_mode", "capacity_ranked"), "hiring_mode")

    def records(kind, generator_key, fields, stream_key, prefix):
        if kind in data and generator_key in data:
            raise ScenarioFileError(f"scenario: give either {kind} or {generator_key}, not both")
        if generator_key in data:
            return _generate(data[generator_key], generator_key, fields, stream_key, seed, prefix)
        items = data.get(kind, [])
        if not isinstance(items, list):
            raise ScenarioFileError(f"{kind}: expected a list")
        return items

    cand_raw = records("candidates", "candidate_generator", _CANDIDATE_FIELDS, CANDIDATE_GENERATOR_STREAM, "c")
    post_raw = records("posts", "post_generator", _POST_FIELDS, POST_GENERATOR_STREAM, "p")
    candidates = tuple(_candidate(d, f"candidates[{i}]") for i, d in enumerate(cand_raw))
    posts = tuple(_post(d, f"posts[{i}]") for i, d in enumerate(post_raw))

    scenario = MarketScenario(candidates, posts, match_model, disposition, hiring_mode, seed)
    return ScenarioFile(validate_scenario(scenario), policy)


def load_scenario_file(path) -> ScenarioFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ScenarioFileError(f"{path}: no such scenario file") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFileError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_scenario(data)


def load_scenario(path) -> MarketScenario:
    """Read, materialise and validate a scenario file."""
    return load_scenario_file(path).scenario


def scenario_to_dict(s: MarketScenario, fee_policy: Optional[FeePolicy] = None) -> dict:
    """Inverse of :func:`parse_scenario` with generators materialised."""
    out = {
        "seed": s.seed,
        "match_model": {
            "sigma": s.match_model.sigma,
            "peak_probability": s.match_model.peak_probability,
            "probability_cutoff": s.match_model.probability_cutoff,
        },
        "hiring_mode": s.hiring_mode.value,
        "fee_disposition": s.fee_disposition.value,
        "candidates": [
            {
                "id": c.id,
                "true_skill": c.true_skill,
                "reward_value": c.reward_value,
                "budget": None if math.isinf(c.budget) else c.budget,
                "assessment_noise": c.assessment_noise,
            }
            for c in s.candidates
        ],
        "posts": [
            {
                "id": p.id,
                "required_skill": p.required_skill,
                "fee": p.fee,
                "screening_cost_per_application": p.screening_cost_per_application,
                "capacity": p.capacity,
                "hire_value": p.hire_value,
            }
            for p in s.posts
        ],
    }
    if fee_policy is not None:
        pol = {"mode": fee_policy.mode, "disposition": fee_policy.disposition.value}
        if fee_policy.mode == "fixed":
            pol["fee"] = fee_policy.fee
        elif fee_policy.mode == "target_volume":
            pol["target"] = fee_policy.target
        else:
            g = fee_policy.grid
            pol["grid"] = {"low": g.low, "high": g.high, "step": g.step}
        out["fee_policy"] = pol
    return out


def dump_scenario(s: MarketScenario, path, fee_policy: Optional[FeePolicy] = None) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(s, fee_policy), indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------- CSV output

METRICS_COLUMNS = ("label",) + SCALAR_METRICS
SWEEP_COLUMNS = (
    "fee",
    "total_applications",
    "screening_cost",
    "mean_hire_mismatch",
    "candidate_surplus",
    "recruiter_surplus",
    "charity_transfers",
)
EVENT_COLUMNS = ("kind", "candidate_id", "post_id", "amount")
SUMMARY_COLUMNS = ("metric", "mean", "std", "min", "max")


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if v == 0:
            return "0"  # no "-0"
        return format(v, ".9g")
    return str(v)


def write_csv(rows: Sequence[Sequence], header: Sequence[str], path) -> None:
    """Write a header and rows with RFC 4180 quoting and LF line endings."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format_value(v) for v in row])


def sweep_table(points) -> list[tuple]:
    """Rows of a fee sweep from ``(fee, SimulationMetrics)`` pairs, ascending in fee."""
    rows = []
    for fee, m in sorted(points, key=lambda fm: fm[0]):
        rows.append((
            fee,
            m.total_applications,
            m.total_screening_cost,
            m.mean_hire_mismatch,
            m.welfare.candidate_surplus,
            m.welfare.recruiter_surplus,
            m.welfare.charity_transfers,
        ))
    return rows


def write_metrics_csv(obj, path) -> None:
    """Write metrics, a comparison report or a fee sweep as CSV.

    * a ``SimulationMetrics`` gives one row labelled ``round``;
    * a sequence of metrics gives one row per element (empty: header only);
    * a ``ComparisonReport`` gives the rows ``baseline``, ``treated``, ``delta``;
    * a sequence of ``(fee, SimulationMetrics)`` pairs gives a sweep table
      with columns ``SWEEP_COLUMNS``, one row per fee in ascending order.
    """
    from .simulator import ComparisonReport

    if isinstance(obj, SimulationMetrics):
        obj = [obj]
    if isinstance(obj, ComparisonReport):
        rows = [
            ("baseline", *obj.baseline.scalars().values()),
            ("treated", *obj.treated.scalars().values()),
            ("delta", *(obj.deltas[k] for k in SCALAR_METRICS)),
        ]
        write_csv(rows, METRICS_COLUMNS, path)
        return
    obj = list(obj)
    if obj and isinstance(obj[0], tuple):
        write_csv(sweep_table(obj), SWEEP_COLUMNS, path)
        return
    rows = [(f"round{i}" if len(obj) > 1 else "round", *m.scalars().values()) for i, m in enumerate(obj)]
    write_csv(rows, METRICS_COLUMNS, path)


def write_summary_csv(stats: dict, path) -> None:
    rows = [(name, s.mean, s.std, s.min, s.max) for name, s in stats.items()]
    write_csv(rows, SUMMARY_COLUMNS, path)


def write_events_csv(events, path) -> None:
    write_csv([(e.kind, e.candidate_id, e.post_id, e.amount) for e in events], EVENT_COLUMNS, path)


def write_applications_csv(metrics: SimulationMetrics, path) -> None:
    write_csv(list(metrics.applications_per_post.items()), ("post_id", "applications"), path)
