"""Annual simulation of energy-transition pathways to mid-century.

Renewable adoption follows logistic growth toward a ceiling, driven by
policy stringency and by the cost advantage of renewables over
carbon-priced fossil generation (with learning-by-doing feeding back into
renewable cost). Emissions, investment, and jobs are reduced-form
functions of the share path; every constant lives in the scenario config
so alternative calibrations need no code change.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import appraisal
from .errors import DataDomainError, DomainError, SchemaError

__all__ = [
    "InitialState",
    "CostModel",
    "ScenarioConfig",
    "TrajectoryPoint",
    "ScenarioResult",
    "PairwiseGap",
    "ComparisonReport",
    "simulate",
    "compare",
    "load_scenario_config",
    "scenario_config_from_mapping",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class InitialState:
    """World state in the start year."""

    renewable_share: float  # percent
    emissions: float  # Gt CO2 / yr
    annual_investment: float  # trillion USD / yr
    jobs: float  # million

    def __post_init__(self):
        for name in ("renewable_share", "emissions", "annual_investment", "jobs"):
            if getattr(self, name) < 0:
                raise DataDomainError(f"initial_state.{name} must be >= 0")
        if self.renewable_share > 100:
            raise DataDomainError("initial_state.renewable_share must be <= 100")
        if self.renewable_share <= 0:
            raise DataDomainError(
                "initial_state.renewable_share must be > 0 for logistic adoption"
            )
        if self.annual_investment <= 0:
            raise DataDomainError("initial_state.annual_investment must be > 0")


@dataclass(frozen=True)
class CostModel:
    """Competitiveness block: fossil cost, renewable learning, adoption rate."""

    adoption_rate: float  # logistic rate per unit cost advantage
    fossil_cost: float  # USD per MWh, private
    fossil_emission_factor: float  # tonnes CO2 per MWh
    renewable_base_cost: float  # USD per MWh at base capacity
    base_capacity: float  # arbitrary capacity units
    deployment_scale: float  # capacity units per share-point-year of supply

    def __post_init__(self):
        if self.adoption_rate < 0:
            raise DataDomainError("cost_model.adoption_rate must be >= 0")
        if self.fossil_cost < 0 or self.renewable_base_cost <= 0:
            raise DataDomainError("cost_model costs must be positive")
        if self.fossil_emission_factor < 0:
            raise DataDomainError("cost_model.fossil_emission_factor must be >= 0")
        if self.base_capacity <= 0 or self.deployment_scale < 0:
            raise DataDomainError("cost_model capacity parameters out of range")


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    start_year: int
    end_year: int
    carbon_price_path: tuple[tuple[int, float], ...]  # (year, USD/t) anchors
    learning_rate: float
    policy_stringency: float
    initial_state: InitialState
    adoption_ceiling: float  # percent
    demand_growth: float  # percent / yr
    employment_factor: float  # million jobs per trillion USD
    stranded_asset_factor: float  # trillion USD per unit displaced fossil share
    gdp_impact_coefficient: float  # percent per trillion USD cumulative investment
    cost_model: CostModel

    def __post_init__(self):
        if self.start_year >= self.end_year:
            raise DataDomainError("start_year must precede end_year")
        if not 0 < self.adoption_ceiling <= 100:
            raise DataDomainError("adoption_ceiling must lie in (0, 100]")
        if self.initial_state.renewable_share > self.adoption_ceiling:
            raise DataDomainError(
                "initial renewable share exceeds the adoption ceiling"
            )
        if self.policy_stringency < 0:
            raise DataDomainError("policy_stringency must be >= 0")
        if not 0.0 <= self.learning_rate < 1.0:
            raise DataDomainError("learning_rate must lie in [0, 1)")
        anchors = tuple(sorted(self.carbon_price_path))
        if not anchors:
            raise DataDomainError("carbon_price_path needs at least one anchor")
        if any(p < 0 for _, p in anchors):
            raise DataDomainError("carbon prices must be >= 0")
        object.__setattr__(self, "carbon_price_path", anchors)

    def carbon_price(self, year: int) -> float:
        years = [y for y, _ in self.carbon_price_path]
        prices = [p for _, p in self.carbon_price_path]
        return float(np.interp(year, years, prices))


@dataclass(frozen=True)
class TrajectoryPoint:
    year: int
    renewable_share: float  # percent
    emissions: float  # Gt / yr
    annual_investment: float  # trillion USD / yr
    jobs: float  # million


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    trajectory: tuple[TrajectoryPoint, ...]
    cumulative_emissions: float  # Gt, trapezoidal over the horizon
    gdp_impact_pct: float  # percent of GDP at the end year
    stranded_assets: float  # trillion USD
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def end_point(self) -> TrajectoryPoint:
        return self.trajectory[-1]


def simulate(config: ScenarioConfig) -> ScenarioResult:
    """Run the annual time-stepping model; identical configs give
    bit-identical results (pure float arithmetic, no randomness)."""
    cm = config.cost_model
    curve = appraisal.LearningCurve(
        base_cost=cm.renewable_base_cost,
        learning_rate=config.learning_rate,
        base_capacity=cm.base_capacity,
    )
    years = list(range(config.start_year, config.end_year + 1))
    growth_factor = 1.0 + config.demand_growth / 100.0
    state = config.initial_state
    share0 = state.renewable_share
    fossil0 = 100.0 - share0
    capital_intensity = state.annual_investment / share0

    diagnostics: list[str] = []
    share = share0
    capacity = cm.base_capacity
    points = [
        TrajectoryPoint(
            year=years[0],
            renewable_share=share0,
            emissions=state.emissions,
            annual_investment=state.annual_investment,
            jobs=state.jobs,
        )
    ]
    for i, year in enumerate(years[1:], start=1):
        demand = growth_factor**i
        fossil_cost = appraisal.adjusted_cost(
            appraisal.CarbonCostParams(
                private_cost=cm.fossil_cost,
                carbon_price=config.carbon_price(year - 1),
                emission_factor=cm.fossil_emission_factor,
            )
        )
        renewable_cost = appraisal.learning_cost(curve, capacity)
        advantage = max(0.0, (fossil_cost - renewable_cost) / renewable_cost)
        step = (
            cm.adoption_rate
            * config.policy_stringency
            * advantage
            * share
            * (1.0 - share / config.adoption_ceiling)
        )
        if share + step > config.adoption_ceiling:
            diagnostics.append(
                f"{year}: renewable share step clamped at adoption ceiling "
                f"{config.adoption_ceiling:.2f}"
            )
            share = config.adoption_ceiling
        else:
            share += step
        capacity += cm.deployment_scale * share * demand

        emissions = state.emissions * demand * (100.0 - share) / fossil0
        investment = capital_intensity * share * demand
        jobs = config.employment_factor * investment
        points.append(
            TrajectoryPoint(
                year=year,
                renewable_share=share,
                emissions=emissions,
                annual_investment=investment,
                jobs=jobs,
            )
        )

    emission_series = np.array([p.emissions for p in points])
    cumulative = float(np.trapezoid(emission_series, np.array(years, float)))
    total_investment = float(sum(p.annual_investment for p in points))
    gdp_impact = config.gdp_impact_coefficient * total_investment
    displaced_fossil = (points[-1].renewable_share - share0) / 100.0
    stranded = config.stranded_asset_factor * displaced_fossil
    return ScenarioResult(
        name=config.name,
        trajectory=tuple(points),
        cumulative_emissions=cumulative,
        gdp_impact_pct=gdp_impact,
        stranded_assets=stranded,
        diagnostics=tuple(diagnostics),
    )


@dataclass(frozen=True)
class PairwiseGap:
    first: str
    second: str
    cumulative_emission_gap: float  # first minus second, Gt
    end_year_deltas: tuple[tuple[str, float], ...]  # metric -> first minus second


@dataclass(frozen=True)
class ComparisonReport:
    ranking: tuple[str, ...]  # ascending cumulative emissions
    cumulative_emissions: tuple[tuple[str, float], ...]
    pairs: tuple[PairwiseGap, ...]


_END_METRICS = ("renewable_share", "emissions", "annual_investment", "jobs")


def compare(results: list[ScenarioResult]) -> ComparisonReport:
    """Cross-scenario gaps and a ranking by cumulative emissions."""
    if not results:
        raise DomainError("nothing to compare")
    spans = {(r.trajectory[0].year, r.trajectory[-1].year) for r in results}
    if len(spans) > 1:
        raise DomainError(f"scenario year ranges differ: {sorted(spans)}")
    pairs = []
    for i, a in enumerate(results):
        for b in results[i + 1 :]:
            deltas = tuple(
                (m, getattr(a.end_point, m) - getattr(b.end_point, m))
                for m in _END_METRICS
            )
            pairs.append(
                PairwiseGap(
                    first=a.name,
                    second=b.name,
                    cumulative_emission_gap=a.cumulative_emissions
                    - b.cumulative_emissions,
                    end_year_deltas=deltas,
                )
            )
    ordered = sorted(results, key=lambda r: (r.cumulative_emissions, r.name))
    return ComparisonReport(
        ranking=tuple(r.name for r in ordered),
        cumulative_emissions=tuple(
            (r.name, r.cumulative_emissions) for r in ordered
        ),
        pairs=tuple(pairs),
    )


def _require(mapping, key, path, kind=None):
    if not isinstance(mapping, dict) or key not in mapping:
        raise SchemaError(f"missing configuration key {path!r}")
    value = mapping[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"configuration key {path!r} has the wrong type")
    return value


def scenario_config_from_mapping(raw: dict) -> ScenarioConfig:
    """Build a config from parsed YAML, validating the documented schema."""
    version = _require(raw, "schema_version", "schema_version", int)
    if version != SCHEMA_VERSION:
        raise SchemaError(
            f"unsupported schema_version {version} (expected {SCHEMA_VERSION})"
        )
    numeric = (int, float)
    init_raw = _require(raw, "initial_state", "initial_state", dict)
    cost_raw = _require(raw, "cost_model", "cost_model", dict)
    path_raw = _require(raw, "carbon_price_path", "carbon_price_path", dict)
    try:
        anchors = tuple(
            sorted((int(year), float(price)) for year, price in path_raw.items())
        )
    except (TypeError, ValueError):
        raise SchemaError("carbon_price_path must map years to prices") from None
    initial = InitialState(
        renewable_share=float(
            _require(init_raw, "renewable_share", "initial_state.renewable_share", numeric)
        ),
        emissions=float(_require(init_raw, "emissions", "initial_state.emissions", numeric)),
        annual_investment=float(
            _require(
                init_raw, "annual_investment", "initial_state.annual_investment", numeric
            )
        ),
        jobs=float(_require(init_raw, "jobs", "initial_state.jobs", numeric)),
    )
    cost_model = CostModel(
        adoption_rate=float(
            _require(cost_raw, "adoption_rate", "cost_model.adoption_rate", numeric)
        ),
        fossil_cost=float(
            _require(cost_raw, "fossil_cost", "cost_model.fossil_cost", numeric)
        ),
        fossil_emission_factor=float(
            _require(
                cost_raw,
                "fossil_emission_factor",
                "cost_model.fossil_emission_factor",
                numeric,
            )
        ),
        renewable_base_cost=float(
            _require(
                cost_raw, "renewable_base_cost", "cost_model.renewable_base_cost", numeric
            )
        ),
        base_capacity=float(
            _require(cost_raw, "base_capacity", "cost_model.base_capacity", numeric)
        ),
        deployment_scale=float(
            _require(cost_raw, "deployment_scale", "cost_model.deployment_scale", numeric)
        ),
    )
    return ScenarioConfig(
        name=str(_require(raw, "name", "name")),
        start_year=int(_require(raw, "start_year", "start_year", int)),
        end_year=int(_require(raw, "end_year", "end_year", int)),
        carbon_price_path=anchors,
        learning_rate=float(_require(raw, "learning_rate", "learning_rate", numeric)),
        policy_stringency=float(
            _require(raw, "policy_stringency", "policy_stringency", numeric)
        ),
        initial_state=initial,
        adoption_ceiling=float(
            _require(raw, "adoption_ceiling", "adoption_ceiling", numeric)
        ),
        demand_growth=float(_require(raw, "demand_growth", "demand_growth", numeric)),
        employment_factor=float(
            _require(raw, "employment_factor", "employment_factor", numeric)
        ),
        stranded_asset_factor=float(
            _require(raw, "stranded_asset_factor", "stranded_asset_factor", numeric)
        ),
        gdp_impact_coefficient=float(
            _require(raw, "gdp_impact_coefficient", "gdp_impact_coefficient", numeric)
        ),
        cost_model=cost_model,
    )


def load_scenario_config(path) -> ScenarioConfig:
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise SchemaError(f"scenario config {path} is not a mapping")
    return scenario_config_from_mapping(raw)
