"""Ablation of policy-technology components.

Two modes that are never mixed in one report: fixture mode takes a table
of recorded outcomes per configuration and computes percentage reductions
against the full framework; model mode wires component toggles into the
scenario engine and project appraisal, so marginal contributions come out
of actual simulation runs.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from pathlib import Path

import yaml

from . import appraisal, scenario as scenario_mod
from .errors import (
    DataDomainError,
    DomainError,
    NormalizationError,
    ParseError,
    SchemaError,
)

__all__ = [
    "COMPONENTS",
    "AblationConfiguration",
    "AblationRecord",
    "ComponentEffect",
    "AblationModel",
    "ReductionRow",
    "AblationReport",
    "Complementarity",
    "load_ablation_table",
    "run_ablation_fixture",
    "evaluate_configuration",
    "complementarity",
    "load_ablation_model",
]

COMPONENTS: tuple[str, ...] = (
    "carbon_pricing",
    "green_finance",
    "technology_support",
    "grid_integration",
    "storage_investment",
)

FULL_LABEL = "full_framework"

_METRICS = ("npv", "irr", "co2_reduction", "effectiveness")


@dataclass(frozen=True)
class AblationConfiguration:
    """A subset of enabled framework components."""

    enabled_components: frozenset[str]
    label: str

    def __post_init__(self):
        object.__setattr__(
            self, "enabled_components", frozenset(self.enabled_components)
        )
        unknown = self.enabled_components - set(COMPONENTS)
        if unknown:
            raise DataDomainError(f"unknown components: {sorted(unknown)}")


@dataclass(frozen=True)
class AblationRecord:
    """Outcome metrics for one configuration.

    npv in billion USD, irr in percent, co2_reduction and effectiveness
    as scores in [0, 100].
    """

    label: str
    npv: float
    irr: float
    co2_reduction: float
    effectiveness: float

    def __post_init__(self):
        if not 0.0 <= self.co2_reduction <= 100.0:
            raise DataDomainError(f"{self.label}: co2_reduction outside [0, 100]")
        if not 0.0 <= self.effectiveness <= 100.0:
            raise DataDomainError(f"{self.label}: effectiveness outside [0, 100]")

    def metric(self, name: str) -> float:
        return float(getattr(self, name))


@dataclass(frozen=True)
class ReductionRow:
    label: str
    reductions: tuple[tuple[str, float], ...]  # metric -> percent reduction vs full

    def reduction(self, metric: str) -> float:
        for name, value in self.reductions:
            if name == metric:
                return value
        raise KeyError(metric)


@dataclass(frozen=True)
class AblationReport:
    full: AblationRecord
    rows: tuple[ReductionRow, ...]
    npv_ranking: tuple[str, ...]  # labels by descending NPV reduction


def load_ablation_table(path) -> tuple[AblationRecord, ...]:
    """Read (label, npv_busd, irr_pct, co2_reduction_pct, effectiveness) CSV."""
    records = []
    required = {"label", "npv_busd", "irr_pct", "co2_reduction_pct", "effectiveness"}
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or not required <= set(reader.fieldnames):
            raise SchemaError(f"ablation table must have columns {sorted(required)}")
        for row_number, row in enumerate(reader, start=2):
            try:
                records.append(
                    AblationRecord(
                        label=row["label"].strip(),
                        npv=float(row["npv_busd"]),
                        irr=float(row["irr_pct"]),
                        co2_reduction=float(row["co2_reduction_pct"]),
                        effectiveness=float(row["effectiveness"]),
                    )
                )
            except ValueError:
                raise ParseError(f"row {row_number}: non-numeric metric") from None
    labels = [r.label for r in records]
    if len(labels) != len(set(labels)):
        raise DataDomainError("ablation table labels must be unique")
    return tuple(records)


def run_ablation_fixture(
    table: list[AblationRecord] | tuple[AblationRecord, ...],
    full_label: str = FULL_LABEL,
) -> AblationReport:
    """Percentage reductions of every metric relative to the full framework."""
    full = next((r for r in table if r.label == full_label), None)
    if full is None:
        raise DomainError(f"no row labeled {full_label!r} in the ablation table")
    rows = []
    for record in table:
        if record.label == full_label:
            continue
        reductions = []
        for metric in _METRICS:
            base = full.metric(metric)
            if base == 0:
                raise NormalizationError(
                    f"full-framework {metric} is zero; reduction undefined"
                )
            reductions.append((metric, (base - record.metric(metric)) / base * 100.0))
        rows.append(ReductionRow(label=record.label, reductions=tuple(reductions)))
    ranking = tuple(
        row.label
        for row in sorted(rows, key=lambda r: (-r.reduction("npv"), r.label))
    )
    return AblationReport(full=full, rows=tuple(rows), npv_ranking=ranking)


@dataclass(frozen=True)
class ComponentEffect:
    """How disabling one component degrades the model parameters."""

    carbon_price_scale: float = 1.0
    discount_rate_delta: float = 0.0
    learning_rate_scale: float = 1.0
    ceiling_delta: float = 0.0
    stringency_scale: float = 1.0


@dataclass(frozen=True)
class AblationModel:
    """Declared component-to-parameter mapping plus scoring calibration."""

    component_effects: dict[str, ComponentEffect]
    displacement_tonnes: float  # project carbon revenue per USD/t of carbon price
    outcome_uplift: float  # relative cash-flow uplift per point of CO2 reduction
    normalization_bounds: dict[str, tuple[float, float]]
    weights: tuple[float, float, float] = (1 / 3, 1 / 3, 1 / 3)

    def __post_init__(self):
        missing = set(COMPONENTS) - set(self.component_effects)
        if missing:
            raise SchemaError(f"component_effects missing {sorted(missing)}")
        for metric in ("npv", "irr", "co2_reduction"):
            if metric not in self.normalization_bounds:
                raise SchemaError(f"normalization_bounds missing {metric!r}")


def _degrade(
    config: AblationConfiguration,
    scenario: scenario_mod.ScenarioConfig,
    project: appraisal.CashFlowSchedule,
    model: AblationModel,
):
    price_scale = 1.0
    rate_delta = 0.0
    lr_scale = 1.0
    ceiling_delta = 0.0
    stringency_scale = 1.0
    for component in COMPONENTS:
        if component in config.enabled_components:
            continue
        effect = model.component_effects[component]
        price_scale *= effect.carbon_price_scale
        rate_delta += effect.discount_rate_delta
        lr_scale *= effect.learning_rate_scale
        ceiling_delta += effect.ceiling_delta
        stringency_scale *= effect.stringency_scale
    floor = scenario.initial_state.renewable_share
    new_scenario = replace(
        scenario,
        name=config.label,
        carbon_price_path=tuple(
            (year, price * price_scale) for year, price in scenario.carbon_price_path
        ),
        learning_rate=scenario.learning_rate * lr_scale,
        adoption_ceiling=min(
            100.0, max(floor, scenario.adoption_ceiling + ceiling_delta)
        ),
        policy_stringency=scenario.policy_stringency * stringency_scale,
    )
    new_project = replace(project, discount_rate=project.discount_rate + rate_delta)
    return new_scenario, new_project


def _normalize(value: float, bounds: tuple[float, float]) -> float:
    lo, hi = bounds
    if hi <= lo:
        raise SchemaError("normalization bounds must satisfy lo < hi")
    return min(1.0, max(0.0, (value - lo) / (hi - lo)))


def evaluate_configuration(
    config: AblationConfiguration,
    scenario: scenario_mod.ScenarioConfig,
    project: appraisal.CashFlowSchedule,
    model: AblationModel,
) -> AblationRecord:
    """Simulate and appraise one component subset.

    CO2 reduction is the end-year emission cut relative to the
    all-components-disabled run of the same scenario. Project cash flows
    gain carbon revenue at the (possibly degraded) carbon price and an
    uplift proportional to the achieved CO2 reduction; green finance acts
    through the discount rate. Effectiveness is the weighted mean of
    min-max normalized (npv, irr, co2_reduction), scaled to [0, 100].
    """
    degraded_scenario, degraded_project = _degrade(config, scenario, project, model)
    nothing = AblationConfiguration(enabled_components=frozenset(), label="baseline")
    baseline_scenario, _ = _degrade(nothing, scenario, project, model)

    result = scenario_mod.simulate(degraded_scenario)
    baseline = scenario_mod.simulate(baseline_scenario)
    base_emissions = baseline.end_point.emissions
    if base_emissions <= 0:
        raise NormalizationError("baseline end-year emissions are zero")
    co2_reduction = max(
        0.0,
        min(100.0, 100.0 * (base_emissions - result.end_point.emissions) / base_emissions),
    )

    years = [p.year for p in result.trajectory]
    flows = []
    for t, cf in enumerate(degraded_project.cash_flows, start=1):
        year = years[min(t, len(years) - 1)]
        carbon_revenue = model.displacement_tonnes * degraded_scenario.carbon_price(year)
        uplift = 1.0 + model.outcome_uplift * co2_reduction
        flows.append(cf * uplift + carbon_revenue)
    schedule = appraisal.CashFlowSchedule(
        initial_investment=degraded_project.initial_investment,
        cash_flows=tuple(flows),
        discount_rate=degraded_project.discount_rate,
    )
    npv_value = appraisal.npv(schedule)
    irr_value = appraisal.irr(schedule) * 100.0

    w_npv, w_irr, w_co2 = model.weights
    score = (
        w_npv * _normalize(npv_value, model.normalization_bounds["npv"])
        + w_irr * _normalize(irr_value, model.normalization_bounds["irr"])
        + w_co2 * _normalize(co2_reduction, model.normalization_bounds["co2_reduction"])
    ) / (w_npv + w_irr + w_co2)
    return AblationRecord(
        label=config.label,
        npv=npv_value,
        irr=irr_value,
        co2_reduction=co2_reduction,
        effectiveness=100.0 * score,
    )


@dataclass(frozen=True)
class Complementarity:
    synergy: float
    best_single: str
    superadditive: bool | None = None


def complementarity(
    full: AblationRecord,
    singles: list[AblationRecord] | tuple[AblationRecord, ...],
    baseline: AblationRecord | None = None,
) -> Complementarity:
    """Synergy of the integrated framework over its best single component.

    With a no-policy baseline record, also flags superadditivity: whether
    the full CO2 reduction exceeds the sum of single-component gains over
    that baseline.
    """
    if not singles:
        raise DomainError("at least one single-component record is required")
    best = max(singles, key=lambda r: r.effectiveness)
    synergy = full.effectiveness - best.effectiveness
    superadditive = None
    if baseline is not None:
        gains = sum(
            max(0.0, s.co2_reduction - baseline.co2_reduction)
            for s in singles
            if s.label != full.label
        )
        superadditive = (full.co2_reduction - baseline.co2_reduction) > gains
    return Complementarity(
        synergy=synergy, best_single=best.label, superadditive=superadditive
    )


def load_ablation_model(path) -> AblationModel:
    """Read the declared component-effect mapping and scoring calibration."""
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise SchemaError(f"ablation model config {path} is not a mapping")
    if raw.get("schema_version") != 1:
        raise SchemaError("ablation model config must declare schema_version: 1")
    effects_raw = raw.get("component_effects")
    if not isinstance(effects_raw, dict):
        raise SchemaError("missing configuration key 'component_effects'")
    effects = {}
    for component, body in effects_raw.items():
        if component not in COMPONENTS:
            raise SchemaError(f"component_effects has unknown component {component!r}")
        if not isinstance(body, dict):
            raise SchemaError(f"component_effects.{component} must be a mapping")
        unknown = set(body) - set(ComponentEffect.__dataclass_fields__)
        if unknown:
            raise SchemaError(
                f"component_effects.{component} has unknown keys {sorted(unknown)}"
            )
        effects[component] = ComponentEffect(**{k: float(v) for k, v in body.items()})
    bounds_raw = raw.get("normalization_bounds")
    if not isinstance(bounds_raw, dict):
        raise SchemaError("missing configuration key 'normalization_bounds'")
    bounds = {}
    for metric, pair in bounds_raw.items():
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) for v in pair)
        ):
            raise SchemaError(f"normalization_bounds.{metric} must be [lo, hi]")
        bounds[metric] = (float(pair[0]), float(pair[1]))
    weights_raw = raw.get("weights", [1 / 3, 1 / 3, 1 / 3])
    if not isinstance(weights_raw, (list, tuple)) or len(weights_raw) != 3:
        raise SchemaError("'weights' must be a list of three numbers")
    return AblationModel(
        component_effects=effects,
        displacement_tonnes=float(raw.get("displacement_tonnes", 0.0)),
        outcome_uplift=float(raw.get("outcome_uplift", 0.0)),
        normalization_bounds=bounds,
        weights=tuple(float(w) for w in weights_raw),
    )
