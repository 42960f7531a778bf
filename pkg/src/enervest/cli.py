"""Command-line interface.

Subcommands: appraise, regress, simulate, sensitivity, ablate, report.
Every command accepts --seed, --output-dir, --no-timestamp, and --format,
writes a run manifest next to its outputs, and is deterministic: identical
inputs and seed produce byte-identical files (the manifest timestamp is
suppressed by --no-timestamp).

Exit codes: 0 success, 2 input/validation error, 3 computational error.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import re
import sys
import traceback
from datetime import datetime, timezone
from pathlib import Path

import yaml

from . import __version__, ablation, appraisal, fixtures, reporting
from .econometrics import RegressionSpec, fit_fe, placebo_test
from .errors import ComputationError, EnervestError, InputError, SchemaError
from .paneldata import load_panel, summarize
from .scenario import compare, load_scenario_config, simulate
from .sensitivity import load_npv_model, load_perturbations, tornado

__all__ = ["main"]


# ---------------------------------------------------------------- helpers

def _load_yaml(path) -> dict:
    try:
        raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise SchemaError(f"invalid YAML in {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError(f"{path} is not a mapping")
    return raw


def _cfg(raw: dict, dotted: str, kind=None, default=None, required=True):
    node = raw
    walked = []
    for key in dotted.split("."):
        walked.append(key)
        if not isinstance(node, dict) or key not in node:
            if required:
                raise SchemaError(f"missing configuration key {'.'.join(walked)!r}")
            return default
        node = node[key]
    if kind is not None and not isinstance(node, kind):
        raise SchemaError(f"configuration key {dotted!r} has the wrong type")
    return node


def _slug(name: str) -> str:
    slug = re.sub(r"[^a-z0-9_-]", "_", name.lower())
    return re.sub(r"_+", "_", slug).strip("_") or "unnamed"


class OutputWriter:
    """Collects emitted files and writes the run manifest."""

    def __init__(self, args, command: str):
        self.dir = Path(args.output_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.format = args.format
        self.seed = args.seed
        self.no_timestamp = args.no_timestamp
        self.command = command
        self.inputs: list[tuple[str, str]] = []
        self.files: list[str] = []

    def record_input(self, path) -> None:
        p = Path(path)
        try:
            digest = hashlib.sha256(p.read_bytes()).hexdigest()
        except OSError as exc:
            raise InputError(f"cannot read {p}: {exc}") from exc
        self.inputs.append((str(p), digest))

    def write_text(self, name: str, text: str) -> None:
        if self.format in ("text", "both"):
            self._write(name, text)

    def write_csv(self, name: str, header, rows) -> None:
        if self.format in ("csv", "both"):
            self._write(name, reporting.render_csv(header, rows))

    def write_always(self, name: str, text: str) -> None:
        self._write(name, text)

    def _write(self, name: str, text: str) -> None:
        path = self.dir / name
        path.write_text(text if text.endswith("\n") else text + "\n", "utf-8")
        self.files.append(name)

    def finish(self) -> None:
        payload = {
            "command": self.command,
            "inputs": [
                {"path": p, "sha256": d} for p, d in sorted(self.inputs)
            ],
            "seed": self.seed,
            "tool_version": __version__,
        }
        payload["config_hash"] = hashlib.sha256(
            json.dumps(payload, sort_keys=True).encode()
        ).hexdigest()
        payload["outputs"] = sorted(self.files)
        if not self.no_timestamp:
            payload["timestamp"] = datetime.now(timezone.utc).isoformat()
        (self.dir / "manifest.json").write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", "utf-8"
        )


# ---------------------------------------------------------------- appraise

def _schedule_from_config(raw: dict) -> appraisal.CashFlowSchedule:
    flows = _cfg(raw, "project.cash_flows", list)
    return appraisal.CashFlowSchedule(
        initial_investment=float(_cfg(raw, "project.initial_investment", (int, float))),
        cash_flows=tuple(float(c) for c in flows),
        discount_rate=float(_cfg(raw, "project.discount_rate", (int, float))),
    )


def cmd_appraise(args) -> None:
    out = OutputWriter(args, "appraise")
    out.record_input(args.config)
    raw = _load_yaml(args.config)
    if raw.get("schema_version") != 1:
        raise SchemaError("config must declare schema_version: 1")
    schedule = _schedule_from_config(raw)

    metrics: list[tuple[str, float]] = []
    npv_value = appraisal.npv(schedule)
    metrics.append(("npv", npv_value))
    metrics.append(("irr", appraisal.irr(schedule)))

    option_raw = raw.get("real_option")
    rov_value = 0.0
    if option_raw is not None:
        spec = appraisal.RealOptionSpec(
            underlying_value=float(_cfg(raw, "real_option.underlying_value", (int, float))),
            volatility=float(_cfg(raw, "real_option.volatility", (int, float))),
            risk_free_rate=float(_cfg(raw, "real_option.risk_free_rate", (int, float))),
            steps=int(_cfg(raw, "real_option.steps", int)),
            option_kind=str(_cfg(raw, "real_option.kind", str)),
            exercise_parameter=float(_cfg(raw, "real_option.exercise_cost", (int, float))),
            expansion_factor=raw["real_option"].get("expansion_factor"),
        )
        rov_value = appraisal.real_option_value(spec)
        metrics.append(("real_option_value", rov_value))
    metrics.append(("total_value", appraisal.project_value(npv_value, rov_value)))

    if raw.get("carbon_cost") is not None:
        params = appraisal.CarbonCostParams(
            private_cost=float(_cfg(raw, "carbon_cost.private_cost", (int, float))),
            carbon_price=float(_cfg(raw, "carbon_cost.carbon_price", (int, float))),
            emission_factor=float(_cfg(raw, "carbon_cost.emission_factor", (int, float))),
        )
        metrics.append(("carbon_adjusted_cost", appraisal.adjusted_cost(params)))

    if raw.get("learning") is not None:
        curve = appraisal.LearningCurve(
            base_cost=float(_cfg(raw, "learning.base_cost", (int, float))),
            learning_rate=float(_cfg(raw, "learning.learning_rate", (int, float))),
            base_capacity=float(_cfg(raw, "learning.base_capacity", (int, float))),
        )
        for capacity in _cfg(raw, "learning.projections", list, default=[], required=False):
            metrics.append(
                (f"learning_cost_at_{capacity:g}x".replace(".", "p"),
                 appraisal.learning_cost(curve, float(capacity) * curve.base_capacity))
            )

    text = reporting.text_table(
        ["Metric", "Value"], [[k, f"{v:.4f}"] for k, v in metrics]
    )
    print(text)
    out.write_text("appraisal.txt", text)
    out.write_csv("appraisal.csv", ["metric", "value"], [[k, v] for k, v in metrics])
    out.finish()


# ---------------------------------------------------------------- regress

DEFAULT_REGRESSORS = (
    "log(investment),carbon_price,policy_index,tech_index,energy_intensity"
)


def cmd_regress(args) -> None:
    out = OutputWriter(args, "regress")
    data_path = Path(args.data)
    out.record_input(data_path)
    dataset = load_panel(data_path)
    spec = RegressionSpec(
        dependent=args.dependent,
        regressors=tuple(s.strip() for s in args.regressors.split(",") if s.strip()),
        include_country_fe=not args.no_country_fe,
        include_year_fe=not args.no_year_fe,
        se_kind=args.se,
    )
    result = fit_fe(dataset, spec)
    text = reporting.regression_text(
        {args.dependent: result}, spec.include_country_fe, spec.include_year_fe
    )
    header, rows = reporting.regression_csv_rows({args.dependent: result})

    if args.placebo:
        placebo = placebo_test(dataset, spec, args.placebo, args.seed)
        text += (
            f"\nPlacebo test ({args.placebo} permutations, seed {args.seed}): "
            f"p-value {placebo.p_value:.6f}"
        )
        rows.append([args.dependent, "placebo_p_value", placebo.p_value, 0.0,
                     0.0, 1.0, ""])
        out.write_csv(
            "placebo.csv",
            ["draw", "coefficient"],
            [[i, float(c)] for i, c in enumerate(placebo.permuted_coefficients)],
        )
    print(text)
    out.write_text("regression.txt", text)
    out.write_csv("regression.csv", header, rows)
    out.finish()


# ---------------------------------------------------------------- simulate

def cmd_simulate(args) -> None:
    out = OutputWriter(args, "simulate")
    results = []
    for config_path in args.configs:
        out.record_input(config_path)
        config = load_scenario_config(config_path)
        if args.start_year is not None or args.end_year is not None:
            from dataclasses import replace

            config = replace(
                config,
                start_year=args.start_year if args.start_year is not None
                else config.start_year,
                end_year=args.end_year if args.end_year is not None
                else config.end_year,
            )
        results.append(simulate(config))

    lines = []
    for result in results:
        end = result.end_point
        lines.append(
            f"{result.name}: 2050-horizon end point share {end.renewable_share:.4f}%"
            f", emissions {end.emissions:.4f} Gt, investment "
            f"{end.annual_investment:.4f} T, jobs {end.jobs:.4f} M; cumulative "
            f"emissions {result.cumulative_emissions:.4f} Gt; GDP impact "
            f"{result.gdp_impact_pct:+.4f}%; stranded assets "
            f"{result.stranded_assets:.4f} T"
        )
        for note in result.diagnostics:
            lines.append(f"  note: {note}")
        header, rows = reporting.trajectory_csv_rows(result)
        out.write_csv(f"trajectory_{_slug(result.name)}.csv", header, rows)
    text = "\n".join(lines)

    if len(results) > 1:
        report = compare(results)
        comparison = reporting.comparison_text(report)
        text += "\n\n" + comparison
        out.write_text("comparison.txt", comparison)
        header, rows = reporting.comparison_csv_rows(report)
        out.write_csv("comparison.csv", header, rows)
    print(text)
    out.write_text("simulation.txt", text)
    out.finish()


# ---------------------------------------------------------------- sensitivity

def cmd_sensitivity(args) -> None:
    out = OutputWriter(args, "sensitivity")
    out.record_input(args.model)
    out.record_input(args.perturbations)
    model = load_npv_model(args.model)
    perturbations = load_perturbations(args.perturbations)
    records = tornado(model, perturbations)
    text = reporting.tornado_text(records)
    print(text)
    out.write_text("tornado.txt", text)
    header, rows = reporting.tornado_csv_rows(records)
    out.write_csv("tornado.csv", header, rows)
    out.finish()


# ---------------------------------------------------------------- ablate

def _model_mode_configurations(all_subsets: bool):
    if all_subsets:
        configs = []
        for r in range(len(ablation.COMPONENTS) + 1):
            for subset in itertools.combinations(ablation.COMPONENTS, r):
                label = "+".join(subset) if subset else "none"
                configs.append(ablation.AblationConfiguration(frozenset(subset), label))
        return configs
    everything = frozenset(ablation.COMPONENTS)
    configs = [ablation.AblationConfiguration(everything, "full_framework")]
    for component in ablation.COMPONENTS:
        configs.append(
            ablation.AblationConfiguration(
                everything - {component}, f"no_{component}"
            )
        )
    configs.append(
        ablation.AblationConfiguration(
            frozenset(["carbon_pricing"]), "carbon_pricing_only"
        )
    )
    configs.append(
        ablation.AblationConfiguration(
            frozenset(["carbon_pricing", "technology_support"]),
            "combined_policy_tech",
        )
    )
    return configs


def cmd_ablate(args) -> None:
    out = OutputWriter(args, "ablate")
    if args.fixture:
        out.record_input(args.fixture)
        table = ablation.load_ablation_table(args.fixture)
        report = ablation.run_ablation_fixture(table, full_label=args.full_label)
        text = reporting.ablation_report_text(report)
        print(text)
        out.write_text("ablation.txt", text)
        header, rows = reporting.ablation_report_csv_rows(report)
        out.write_csv("ablation.csv", header, rows)
    else:
        for path in (args.model_config, args.scenario, args.project):
            out.record_input(path)
        model = ablation.load_ablation_model(args.model_config)
        scenario_config = load_scenario_config(args.scenario)
        project = _schedule_from_config(_load_yaml(args.project))
        records = [
            ablation.evaluate_configuration(cfg, scenario_config, project, model)
            for cfg in _model_mode_configurations(args.all_subsets)
        ]
        header = ["Configuration", "NPV (B)", "IRR (%)", "CO2 red. (%)", "Effect."]
        rows = [
            [r.label, f"{r.npv:.4f}", f"{r.irr:.4f}", f"{r.co2_reduction:.4f}",
             f"{r.effectiveness:.4f}"]
            for r in records
        ]
        text = reporting.text_table(header, rows)
        print(text)
        out.write_text("ablation.txt", text)
        out.write_csv(
            "ablation.csv",
            ["label", "npv_busd", "irr_pct", "co2_reduction_pct", "effectiveness"],
            [[r.label, r.npv, r.irr, r.co2_reduction, r.effectiveness]
             for r in records],
        )
    out.finish()


# ---------------------------------------------------------------- report

def _markdown_table(header, rows) -> str:
    lines = ["| " + " | ".join(header) + " |",
             "| " + " | ".join("---" for _ in header) + " |"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines)


def cmd_report(args) -> None:
    out = OutputWriter(args, "report")
    out.record_input(args.data)
    out.record_input(fixtures.ABLATION_TABLE6)
    out.record_input(fixtures.CASE_STUDY)
    dataset = load_panel(args.data)

    sections = ["# Analysis report", ""]
    stats = summarize(dataset)
    sections += [
        "## Descriptive statistics",
        "",
        _markdown_table(
            ["Variable", "Mean", "Std. Dev.", "Min", "Max", "N"],
            [[v.variable, f"{v.mean:.4f}", f"{v.std:.4f}", f"{v.minimum:.4f}",
              f"{v.maximum:.4f}", v.count] for v in stats.variables],
        ),
        "",
    ]

    dependents = ["gdp_growth", "log(co2_emissions)", "renewable_share"]
    results = {}
    for dependent in dependents:
        spec = RegressionSpec(
            dependent=dependent,
            regressors=tuple(DEFAULT_REGRESSORS.split(",")),
        )
        results[dependent] = fit_fe(dataset, spec)
    first = results[dependents[0]]
    reg_rows = []
    for j, name in enumerate(first.regressors):
        row = [name]
        for dependent in dependents:
            r = results[dependent]
            stars = reporting.significance_stars(float(r.p_values[j]))
            row.append(f"{r.coefficients[j]:.4f}{stars} ({r.std_errors[j]:.4f})")
        reg_rows.append(row)
    reg_rows.append(["Country FE"] + ["Yes"] * 3)
    reg_rows.append(["Year FE"] + ["Yes"] * 3)
    reg_rows.append(["Observations"]
                    + [str(results[d].n_observations) for d in dependents])
    reg_rows.append(["R-squared"]
                    + [f"{results[d].r_squared:.4f}" for d in dependents])
    reg_rows.append(["F-statistic"]
                    + [f"{results[d].f_statistic:.4f}" for d in dependents])
    sections += [
        "## Panel regression results",
        "",
        _markdown_table([""] + dependents, reg_rows),
        "",
        "Coefficient (standard error); *** p<0.01, ** p<0.05, * p<0.1.",
        "",
    ]

    table = ablation.load_ablation_table(fixtures.ABLATION_TABLE6)
    sections += [
        "## Component ablation",
        "",
        _markdown_table(
            ["Configuration", "NPV (B)", "IRR (%)", "CO2 red. (%)", "Effectiveness"],
            [[r.label, r.npv, r.irr, r.co2_reduction, r.effectiveness]
             for r in table],
        ),
        "",
    ]
    ablation_report = ablation.run_ablation_fixture(table)
    sections += [
        "### Reductions relative to the full framework",
        "",
        _markdown_table(
            ["Configuration", "NPV red. (%)", "IRR red. (%)", "CO2 red. red. (%)",
             "Effect. red. (%)"],
            [[row.label] + [f"{row.reduction(m):.4f}"
                            for m in ("npv", "irr", "co2_reduction", "effectiveness")]
             for row in ablation_report.rows],
        ),
        "",
    ]

    case_rows = []
    with open(fixtures.CASE_STUDY, encoding="utf-8") as handle:
        import csv as _csv

        reader = _csv.reader(handle)
        case_header = next(reader)
        case_rows = list(reader)
    sections += [
        "## Case study indicators (2023)",
        "",
        _markdown_table(case_header, case_rows),
        "",
    ]

    text = "\n".join(sections)
    print(text)
    out.write_always("report.md", text)
    out.finish()


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="deterministic seed")
    common.add_argument("--output-dir", default=".", help="directory for outputs")
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp from the run manifest")
    common.add_argument("--format", choices=("text", "csv", "both"),
                        default="both", help="which output files to write")

    parser = argparse.ArgumentParser(
        prog="enervest",
        description="Low-carbon energy investment analysis toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("appraise", parents=[common],
                       help="NPV/IRR/real-option appraisal of a project config")
    p.add_argument("config", help="project YAML configuration")
    p.set_defaults(handler=cmd_appraise)

    p = sub.add_parser("regress", parents=[common],
                       help="fixed-effects panel regression")
    p.add_argument("--data", default=str(fixtures.PANEL),
                   help="panel CSV (default: shipped fixture)")
    p.add_argument("--dependent", default="gdp_growth")
    p.add_argument("--regressors", default=DEFAULT_REGRESSORS)
    p.add_argument("--no-country-fe", action="store_true")
    p.add_argument("--no-year-fe", action="store_true")
    p.add_argument("--se", choices=("classical", "cluster_by_country"),
                   default="classical")
    p.add_argument("--placebo", type=int, default=0, metavar="N",
                   help="run a permutation test with N draws")
    p.set_defaults(handler=cmd_regress)

    p = sub.add_parser("simulate", parents=[common],
                       help="simulate transition scenarios")
    p.add_argument("configs", nargs="+", help="scenario YAML configurations")
    p.add_argument("--start-year", type=int, default=None)
    p.add_argument("--end-year", type=int, default=None)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("sensitivity", parents=[common],
                       help="one-at-a-time sensitivity (tornado) analysis")
    p.add_argument("--model", default=str(fixtures.NPV_MODEL))
    p.add_argument("--perturbations", default=str(fixtures.PERTURBATIONS))
    p.set_defaults(handler=cmd_sensitivity)

    p = sub.add_parser("ablate", parents=[common],
                       help="component ablation (fixture or model mode)")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--fixture", help="recorded metrics CSV")
    mode.add_argument("--model-config", help="ablation model YAML (model mode)")
    p.add_argument("--full-label", default=ablation.FULL_LABEL,
                   help="label of the full configuration in fixture mode")
    p.add_argument("--scenario", help="scenario YAML (model mode)")
    p.add_argument("--project", help="project YAML (model mode)")
    p.add_argument("--all-subsets", action="store_true",
                   help="evaluate all 32 component subsets (model mode)")
    p.set_defaults(handler=cmd_ablate)

    p = sub.add_parser("report", parents=[common],
                       help="bundle statistics, regressions, and ablation tables")
    p.add_argument("--data", default=str(fixtures.PANEL))
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "ablate" and args.model_config:
        if not (args.scenario and args.project):
            parser.error("model mode requires --scenario and --project")
    try:
        args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except EnervestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:  # contract: no exit codes other than 0/2/3
        traceback.print_exc()
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
