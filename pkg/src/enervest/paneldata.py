"""Country-year panel schema, CSV ingestion, and descriptive statistics.

The canonical on-disk format is UTF-8 CSV with a header row, '.' decimal
separator and no thousands separators. Column names can be remapped at
load time; the defaults are in :data:`CANONICAL_COLUMNS`.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, fields
from typing import IO, Mapping

import numpy as np

from .errors import (
    DataDomainError,
    DomainError,
    IntegrityError,
    ParseError,
    SchemaError,
)

__all__ = [
    "PanelObservation",
    "PanelDataset",
    "VariableStats",
    "DescriptiveStats",
    "CANONICAL_COLUMNS",
    "MEASURE_VARIABLES",
    "load_panel",
    "serialize_panel",
    "summarize",
]

# field name -> canonical CSV column
CANONICAL_COLUMNS: dict[str, str] = {
    "country_id": "country",
    "year": "year",
    "investment": "investment_busd",
    "gdp_growth": "gdp_growth_pct",
    "co2_emissions": "co2_mt",
    "carbon_price": "carbon_price_usd_t",
    "policy_index": "policy_index",
    "tech_index": "tech_index",
    "renewable_share": "renewable_share_pct",
    "energy_intensity": "energy_intensity_mj_usd",
}

MEASURE_VARIABLES: tuple[str, ...] = (
    "investment",
    "gdp_growth",
    "co2_emissions",
    "carbon_price",
    "policy_index",
    "tech_index",
    "renewable_share",
    "energy_intensity",
)


@dataclass(frozen=True)
class PanelObservation:
    """One country-year row.

    Units: investment in billion USD, gdp_growth in percent/year,
    co2_emissions in million tonnes/year, carbon_price in USD/tonne,
    policy and tech indices on [0, 100], renewable_share in percent,
    energy_intensity in MJ/USD.
    """

    country_id: str
    year: int
    investment: float
    gdp_growth: float
    co2_emissions: float
    carbon_price: float
    policy_index: float
    tech_index: float
    renewable_share: float
    energy_intensity: float

    def __post_init__(self):
        where = f"{self.country_id}, {self.year}"
        if self.investment <= 0:
            raise DataDomainError(
                f"investment must be > 0 so its logarithm is defined ({where})"
            )
        if not 0.0 <= self.policy_index <= 100.0:
            raise DataDomainError(f"policy_index outside [0, 100] ({where})")
        if not 0.0 <= self.tech_index <= 100.0:
            raise DataDomainError(f"tech_index outside [0, 100] ({where})")
        if not 0.0 <= self.renewable_share <= 100.0:
            raise DataDomainError(f"renewable_share outside [0, 100] ({where})")
        if self.carbon_price < 0:
            raise DataDomainError(f"carbon_price must be >= 0 ({where})")
        if self.co2_emissions <= 0:
            raise DataDomainError(f"co2_emissions must be > 0 ({where})")
        if self.energy_intensity <= 0:
            raise DataDomainError(f"energy_intensity must be > 0 ({where})")


class PanelDataset:
    """Immutable country-year panel in (country, year) sorted order."""

    def __init__(self, observations):
        obs = sorted(observations, key=lambda o: (o.country_id, o.year))
        seen: set[tuple[str, int]] = set()
        for o in obs:
            key = (o.country_id, o.year)
            if key in seen:
                raise IntegrityError(
                    f"duplicate observation for {o.country_id}, {o.year}"
                )
            seen.add(key)
        self._observations: tuple[PanelObservation, ...] = tuple(obs)
        countries = sorted({o.country_id for o in obs})
        years = sorted({o.year for o in obs})
        self.country_index: dict[str, int] = {c: i for i, c in enumerate(countries)}
        self.year_index: dict[int, int] = {y: i for i, y in enumerate(years)}
        self.balanced = len(obs) == len(countries) * len(years) and all(
            (c, y) in seen for c in countries for y in years
        )

    @property
    def observations(self) -> tuple[PanelObservation, ...]:
        return self._observations

    @property
    def countries(self) -> tuple[str, ...]:
        return tuple(self.country_index)

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(self.year_index)

    def __len__(self) -> int:
        return len(self._observations)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PanelDataset)
            and self._observations == other._observations
        )

    def __hash__(self):
        return hash(self._observations)

    def column(self, variable: str) -> np.ndarray:
        """Values of one variable, aligned with ``observations`` order."""
        if variable not in MEASURE_VARIABLES and variable != "year":
            raise DomainError(f"unknown panel variable {variable!r}")
        return np.array([getattr(o, variable) for o in self._observations], float)

    def country_codes(self) -> np.ndarray:
        return np.array(
            [self.country_index[o.country_id] for o in self._observations], int
        )

    def year_codes(self) -> np.ndarray:
        return np.array([self.year_index[o.year] for o in self._observations], int)


@dataclass(frozen=True)
class VariableStats:
    variable: str
    mean: float
    std: float
    minimum: float
    maximum: float
    count: int
    degenerate: bool = False


@dataclass(frozen=True)
class DescriptiveStats:
    """Per-variable summary: mean, sample std (n-1), min, max, count."""

    variables: tuple[VariableStats, ...]

    def for_variable(self, name: str) -> VariableStats:
        for v in self.variables:
            if v.variable == name:
                return v
        raise KeyError(name)


def load_panel(source, schema: Mapping[str, str] | None = None) -> PanelDataset:
    """Read a CSV stream or path into a validated :class:`PanelDataset`.

    ``schema`` maps observation field names to column names in the file;
    unmapped fields fall back to :data:`CANONICAL_COLUMNS`. Rows come out
    in (country, year) order regardless of input order.
    """
    columns = dict(CANONICAL_COLUMNS)
    if schema:
        unknown = set(schema) - set(columns)
        if unknown:
            raise SchemaError(f"schema maps unknown fields: {sorted(unknown)}")
        columns.update(schema)

    if hasattr(source, "read"):
        return _parse_panel(source, columns)
    with open(source, "r", encoding="utf-8", newline="") as handle:
        return _parse_panel(handle, columns)


def _parse_panel(stream: IO[str], columns: Mapping[str, str]) -> PanelDataset:
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        raise SchemaError("input has no header row")
    header = set(reader.fieldnames)
    for field, column in columns.items():
        if column not in header:
            raise SchemaError(f"missing column {column!r} (field {field!r})")

    observations: list[PanelObservation] = []
    numeric_fields = [f.name for f in fields(PanelObservation) if f.name != "country_id"]
    for row_number, row in enumerate(reader, start=2):
        values: dict[str, object] = {"country_id": row[columns["country_id"]].strip()}
        for field in numeric_fields:
            column = columns[field]
            raw = row[column]
            try:
                parsed = float(raw)
            except (TypeError, ValueError):
                raise ParseError(
                    f"row {row_number}, column {column!r}: could not parse {raw!r}"
                ) from None
            if field == "year":
                if parsed != int(parsed):
                    raise ParseError(
                        f"row {row_number}, column {column!r}: year must be an "
                        f"integer, got {raw!r}"
                    )
                values[field] = int(parsed)
            else:
                values[field] = parsed
        observations.append(PanelObservation(**values))
    return PanelDataset(observations)


def serialize_panel(dataset: PanelDataset) -> str:
    """Canonical CSV text; floats use full round-trip precision."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CANONICAL_COLUMNS.values())
    for o in dataset.observations:
        writer.writerow(
            [o.country_id, o.year]
            + [repr(getattr(o, field)) for field in MEASURE_VARIABLES]
        )
    return buffer.getvalue()


def summarize(dataset: PanelDataset) -> DescriptiveStats:
    """Descriptive statistics for every measure variable."""
    if len(dataset) == 0:
        raise DomainError("cannot summarize an empty dataset")
    records = []
    for variable in MEASURE_VARIABLES:
        values = dataset.column(variable)
        degenerate = len(values) == 1
        std = 0.0 if degenerate else float(np.std(values, ddof=1))
        records.append(
            VariableStats(
                variable=variable,
                mean=float(np.mean(values)),
                std=std,
                minimum=float(np.min(values)),
                maximum=float(np.max(values)),
                count=len(values),
                degenerate=degenerate,
            )
        )
    return DescriptiveStats(variables=tuple(records))
