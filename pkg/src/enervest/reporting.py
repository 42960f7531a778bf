"""Output formatting: aligned text tables and canonical CSV twins.

Human tables round to four decimals; machine CSVs carry full round-trip
precision (shortest repr), so re-parsing an emitted file and re-emitting
it reproduces identical bytes.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

from .ablation import AblationReport
from .econometrics import RegressionResult
from .paneldata import DescriptiveStats
from .scenario import ComparisonReport, ScenarioResult
from .sensitivity import SensitivityRecord

__all__ = [
    "canonical_cell",
    "render_csv",
    "text_table",
    "significance_stars",
    "regression_text",
    "regression_csv_rows",
    "descriptive_text",
    "descriptive_csv_rows",
    "trajectory_csv_rows",
    "comparison_text",
    "comparison_csv_rows",
    "tornado_csv_rows",
    "tornado_text",
    "ablation_report_text",
    "ablation_report_csv_rows",
]


def canonical_cell(value) -> str:
    """Full-precision, round-trip-stable cell text."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([canonical_cell(cell) for cell in row])
    return buffer.getvalue()


def text_table(header: Sequence[str], rows: Sequence[Sequence[str]],
               align_left: int = 1) -> str:
    """Aligned fixed-width table; first ``align_left`` columns left-justified."""
    widths = [len(h) for h in header]
    for row in rows:
        for j, cell in enumerate(row):
            widths[j] = max(widths[j], len(cell))
    def fmt(row):
        cells = []
        for j, cell in enumerate(row):
            cells.append(cell.ljust(widths[j]) if j < align_left
                         else cell.rjust(widths[j]))
        return "  ".join(cells).rstrip()
    rule = "-" * (sum(widths) + 2 * (len(widths) - 1))
    lines = [fmt(header), rule]
    lines += [fmt(row) for row in rows]
    return "\n".join(lines)


def significance_stars(p_value: float) -> str:
    if p_value < 0.01:
        return "***"
    if p_value < 0.05:
        return "**"
    if p_value < 0.10:
        return "*"
    return ""


def regression_text(results: dict[str, RegressionResult],
                    include_country_fe: bool, include_year_fe: bool) -> str:
    """Coefficient rows with parenthesized SEs beneath, one column per model."""
    labels = list(results)
    regressors = next(iter(results.values())).regressors
    header = ["", *labels]
    rows: list[list[str]] = []
    for j, name in enumerate(regressors):
        coef_row = [name]
        se_row = [""]
        for label in labels:
            r = results[label]
            stars = significance_stars(float(r.p_values[j]))
            coef_row.append(f"{r.coefficients[j]:.4f}{stars}")
            se_row.append(f"({r.std_errors[j]:.4f})")
        rows.append(coef_row)
        rows.append(se_row)
    rows.append(["Country FE"] + ["Yes" if include_country_fe else "No"] * len(labels))
    rows.append(["Year FE"] + ["Yes" if include_year_fe else "No"] * len(labels))
    rows.append(["Observations"] + [str(results[l].n_observations) for l in labels])
    rows.append(["R-squared"] + [f"{results[l].r_squared:.4f}" for l in labels])
    rows.append(["F-statistic"] + [f"{results[l].f_statistic:.4f}" for l in labels])
    table = text_table(header, rows)
    note = "Standard errors in parentheses. *** p<0.01, ** p<0.05, * p<0.1"
    return f"{table}\n{note}"


def regression_csv_rows(results: dict[str, RegressionResult]):
    header = ["model", "term", "coefficient", "std_error", "t_stat", "p_value",
              "stars"]
    rows = []
    for label, r in results.items():
        for j, name in enumerate(r.regressors):
            rows.append([
                label, name, float(r.coefficients[j]), float(r.std_errors[j]),
                float(r.t_stats[j]), float(r.p_values[j]),
                significance_stars(float(r.p_values[j])),
            ])
        rows.append([label, "n_observations", float(r.n_observations), 0.0, 0.0,
                     1.0, ""])
        rows.append([label, "r_squared", float(r.r_squared), 0.0, 0.0, 1.0, ""])
        rows.append([label, "f_statistic", float(r.f_statistic), 0.0, 0.0, 1.0, ""])
    return header, rows


def descriptive_text(stats: DescriptiveStats) -> str:
    header = ["Variable", "Mean", "Std. Dev.", "Min", "Max", "N"]
    rows = [
        [v.variable, f"{v.mean:.4f}", f"{v.std:.4f}", f"{v.minimum:.4f}",
         f"{v.maximum:.4f}", str(v.count)]
        for v in stats.variables
    ]
    return text_table(header, rows)


def descriptive_csv_rows(stats: DescriptiveStats):
    header = ["variable", "mean", "std", "min", "max", "count"]
    rows = [
        [v.variable, v.mean, v.std, v.minimum, v.maximum, v.count]
        for v in stats.variables
    ]
    return header, rows


def trajectory_csv_rows(result: ScenarioResult):
    header = ["year", "renewable_share_pct", "emissions_gt",
              "investment_tusd", "jobs_millions"]
    rows = [
        [p.year, p.renewable_share, p.emissions, p.annual_investment, p.jobs]
        for p in result.trajectory
    ]
    return header, rows


def comparison_text(report: ComparisonReport) -> str:
    lines = ["Ranking by cumulative emissions (lowest first):"]
    for name, value in report.cumulative_emissions:
        lines.append(f"  {name}: {value:.4f} Gt")
    lines.append("")
    lines.append("Pairwise gaps (first minus second):")
    for pair in report.pairs:
        lines.append(
            f"  {pair.first} vs {pair.second}: cumulative emissions "
            f"{pair.cumulative_emission_gap:+.4f} Gt"
        )
        for metric, delta in pair.end_year_deltas:
            lines.append(f"    end-year {metric}: {delta:+.4f}")
    return "\n".join(lines)


def comparison_csv_rows(report: ComparisonReport):
    header = ["first", "second", "cumulative_emission_gap",
              "d_renewable_share", "d_emissions", "d_annual_investment", "d_jobs"]
    rows = []
    for pair in report.pairs:
        deltas = dict(pair.end_year_deltas)
        rows.append([
            pair.first, pair.second, pair.cumulative_emission_gap,
            deltas["renewable_share"], deltas["emissions"],
            deltas["annual_investment"], deltas["jobs"],
        ])
    return header, rows


def tornado_csv_rows(records: Sequence[SensitivityRecord]):
    header = ["parameter", "index", "output_low", "output_high"]
    rows = [[r.parameter, r.index, r.output_low, r.output_high] for r in records]
    return header, rows


def tornado_text(records: Sequence[SensitivityRecord]) -> str:
    header = ["Parameter", "Index", "Output (low)", "Output (high)"]
    rows = [
        [r.parameter, f"{r.index:.4f}", f"{r.output_low:.4f}",
         f"{r.output_high:.4f}"]
        for r in records
    ]
    return text_table(header, rows)


def ablation_report_text(report: AblationReport) -> str:
    header = ["Configuration", "NPV red. %", "IRR red. %", "CO2 red. %",
              "Effect. red. %"]
    rows = [
        [row.label] + [f"{row.reduction(m):.4f}"
                       for m in ("npv", "irr", "co2_reduction", "effectiveness")]
        for row in report.rows
    ]
    table = text_table(header, rows)
    full = report.full
    lines = [
        f"Full configuration: {full.label} "
        f"(NPV {full.npv:.4f}, IRR {full.irr:.4f}, CO2 reduction "
        f"{full.co2_reduction:.4f}, effectiveness {full.effectiveness:.4f})",
        table,
    ]
    if report.npv_ranking:
        lines.append("Ranking by NPV reduction: " + ", ".join(report.npv_ranking))
    return "\n".join(lines)


def ablation_report_csv_rows(report: AblationReport):
    header = ["label", "npv_reduction_pct", "irr_reduction_pct",
              "co2_reduction_reduction_pct", "effectiveness_reduction_pct"]
    rows = [
        [row.label] + [row.reduction(m)
                       for m in ("npv", "irr", "co2_reduction", "effectiveness")]
        for row in report.rows
    ]
    return header, rows
