"""One-at-a-time sensitivity analysis with tornado ordering.

The sensitivity index is a symmetric two-point elasticity: relative output
variation divided by relative input variation, both normalized by their
baselines. It is dimensionless, non-negative, and invariant to rescaling
the model output.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Sequence

from . import appraisal
from .errors import DataDomainError, DomainError, NormalizationError, ParseError, SchemaError

__all__ = [
    "ParameterPerturbation",
    "SensitivityRecord",
    "sensitivity_index",
    "tornado",
    "load_perturbations",
    "project_npv_model",
    "load_npv_model",
]


@dataclass(frozen=True)
class ParameterPerturbation:
    name: str
    baseline: float
    low: float
    high: float

    def __post_init__(self):
        if not self.low < self.baseline < self.high:
            raise DataDomainError(
                f"perturbation {self.name!r} must satisfy low < baseline < high"
            )
        if self.baseline == 0:
            raise DataDomainError(
                f"perturbation {self.name!r} needs a nonzero baseline to define "
                f"relative variation"
            )


@dataclass(frozen=True)
class SensitivityRecord:
    parameter: str
    index: float
    output_low: float
    output_high: float


def sensitivity_index(
    model: Callable[[float], float], perturbation: ParameterPerturbation
) -> SensitivityRecord:
    """Ratio of relative output variation to relative input variation."""
    f_base = model(perturbation.baseline)
    if f_base == 0:
        raise NormalizationError(
            f"model output is zero at the baseline of {perturbation.name!r}; "
            f"the sensitivity index is undefined"
        )
    f_low = model(perturbation.low)
    f_high = model(perturbation.high)
    input_variation = (perturbation.high - perturbation.low) / perturbation.baseline
    output_variation = (f_high - f_low) / f_base
    return SensitivityRecord(
        parameter=perturbation.name,
        index=abs(output_variation / input_variation),
        output_low=f_low,
        output_high=f_high,
    )


def tornado(
    model: Callable[[Mapping[str, float]], float],
    perturbations: Sequence[ParameterPerturbation],
) -> tuple[SensitivityRecord, ...]:
    """Perturb each parameter alone, holding the others at baseline.

    Records are ordered by descending index; ties break on parameter name.
    """
    if not perturbations:
        raise DomainError("at least one perturbation is required")
    baselines = {p.name: p.baseline for p in perturbations}
    records = []
    for p in perturbations:

        def single(value: float, name: str = p.name) -> float:
            return model({**baselines, name: value})

        try:
            records.append(sensitivity_index(single, p))
        except NormalizationError as exc:
            raise NormalizationError(f"parameter {p.name!r}: {exc}") from exc
    return tuple(sorted(records, key=lambda r: (-r.index, r.parameter)))


def load_perturbations(path) -> tuple[ParameterPerturbation, ...]:
    """Read perturbation rows (name, baseline, low, high) from CSV."""
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        required = {"name", "baseline", "low", "high"}
        if reader.fieldnames is None or not required <= set(reader.fieldnames):
            raise SchemaError(
                f"perturbation file must have columns {sorted(required)}"
            )
        for row_number, row in enumerate(reader, start=2):
            try:
                rows.append(
                    ParameterPerturbation(
                        name=row["name"].strip(),
                        baseline=float(row["baseline"]),
                        low=float(row["low"]),
                        high=float(row["high"]),
                    )
                )
            except ValueError:
                raise ParseError(
                    f"row {row_number}: non-numeric perturbation bounds"
                ) from None
    return tuple(rows)


def project_npv_model(
    lifetime: int,
    output: float,
    emission_displacement: float,
    fixed_parameters: Mapping[str, float],
) -> Callable[[Mapping[str, float]], float]:
    """NPV of a stylized clean-energy project as a function of parameters.

    Annual revenue is output * (energy_price + policy_support +
    carbon_price * emission_displacement) minus opex, discounted at
    discount_rate over the lifetime, net of capex. Parameter mappings
    passed to the returned callable override the fixed defaults.
    """

    def evaluate(values: Mapping[str, float]) -> float:
        p = {**fixed_parameters, **values}
        try:
            revenue = output * (
                p["energy_price"]
                + p.get("policy_support", 0.0)
                + p["carbon_price"] * emission_displacement
            )
            annual = revenue - p.get("opex", 0.0)
            schedule = appraisal.CashFlowSchedule(
                initial_investment=p["capex"],
                cash_flows=(annual,) * lifetime,
                discount_rate=p["discount_rate"],
            )
        except KeyError as exc:
            raise SchemaError(f"npv model is missing parameter {exc.args[0]!r}") from None
        return appraisal.npv(schedule)

    return evaluate


def load_npv_model(path) -> Callable[[Mapping[str, float]], float]:
    """Build the NPV evaluator from a YAML model config."""
    import yaml

    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise SchemaError(f"model config {path} is not a mapping")
    if raw.get("schema_version") != 1:
        raise SchemaError("model config must declare schema_version: 1")
    project = raw.get("project")
    if not isinstance(project, dict):
        raise SchemaError("missing configuration key 'project'")
    for key in ("lifetime", "output", "emission_displacement"):
        if key not in project:
            raise SchemaError(f"missing configuration key 'project.{key}'")
    fixed = raw.get("fixed_parameters", {})
    if not isinstance(fixed, dict):
        raise SchemaError("'fixed_parameters' must be a mapping")
    return project_npv_model(
        lifetime=int(project["lifetime"]),
        output=float(project["output"]),
        emission_displacement=float(project["emission_displacement"]),
        fixed_parameters={str(k): float(v) for k, v in fixed.items()},
    )
