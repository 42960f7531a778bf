#!/usr/bin/env python3
"""Derive the shipped scenario calibrations and write the YAML fixtures.

The transition-pathway model is reduced-form: given a carbon-price path,
policy stringency, and cost-model constants, the renewable share follows
logistic adoption, and emissions/investment/jobs are closed-form in the
share path. This script pins the remaining free constants against the
documented 2050 endpoints:

  ambitious:    renewable share 92.5%, emissions 8.2 Gt, investment
                8.0 T USD/yr, jobs 72.8 M, GDP impact +3.2%, stranded
                assets 3.0 T USD
  bau:          emissions 46.2 Gt
  conservative: emissions 52.5 Gt
  ambitious vs bau cumulative emission gap > 500 Gt

Solution strategy (all deterministic, no randomness):
  * the logistic adoption rate and price anchors are fixed by hand so
    the ambitious share saturates near its 92.5% ceiling,
  * per-scenario demand growth is solved by fixed-point iteration so
    end-year emissions hit their targets exactly,
  * initial annual investment is closed-form from the 8.0 T endpoint,
    the employment factor from jobs = 72.8 M at that investment level,
  * the GDP-impact coefficient and stranded-asset factor are closed-form
    from the +3.2% and 3.0 T targets.

The script rewrites src/enervest/fixtures/scenario_*.yaml, reloads them,
and asserts every endpoint within the documented 2% tolerance.

Usage: python scripts/calibrate_scenarios.py
"""

from __future__ import annotations

from pathlib import Path

from enervest.scenario import load_scenario_config, simulate

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "enervest" / "fixtures"

START, END = 2025, 2050
N_YEARS = END - START
SHARE0 = 34.8
EMISSIONS0 = 42.0

ADOPTION_RATE = 0.12
LEARNING_RATE = 0.22
CEILING = 92.5
COST_MODEL = {
    "adoption_rate": ADOPTION_RATE,
    "fossil_cost": 60.0,
    "fossil_emission_factor": 0.7,
    "renewable_base_cost": 70.0,
    "base_capacity": 1.0,
    "deployment_scale": 0.0035,
}

SCENARIOS = {
    "ambitious": {
        "stringency": 1.0,
        "prices": {2025: 80.0, 2030: 120.0, 2040: 170.0, 2050: 200.0},
        "emissions_2050": 8.2,
    },
    "bau": {
        "stringency": 0.25,
        "prices": {2025: 18.0, 2050: 45.0},
        "emissions_2050": 46.2,
    },
    "conservative": {
        "stringency": 0.10,
        "prices": {2025: 14.0, 2050: 26.0},
        "emissions_2050": 52.5,
    },
}

TEMPLATE = """\
# {name} scenario calibration ({start}-{end}).
# Produced by scripts/calibrate_scenarios.py; do not edit by hand.
schema_version: 1
name: {name}
start_year: {start}
end_year: {end}
policy_stringency: {stringency}
adoption_ceiling: {ceiling}
demand_growth: {demand_growth}          # percent per year
employment_factor: {employment_factor}  # million jobs per trillion USD
stranded_asset_factor: {stranded}       # trillion USD per unit displaced fossil share
gdp_impact_coefficient: {gdp_coeff}     # percent GDP per trillion USD cumulative investment
learning_rate: {learning_rate}
carbon_price_path:
{price_lines}
initial_state:
  renewable_share: {share0}     # percent
  emissions: {emissions0}       # Gt CO2 per year
  annual_investment: {inv0}     # trillion USD per year
  jobs: {jobs0}                 # million
cost_model:
  adoption_rate: {adoption_rate}
  fossil_cost: 60.0             # USD per MWh before carbon costs
  fossil_emission_factor: 0.7   # tonnes CO2 per MWh
  renewable_base_cost: 70.0     # USD per MWh at base capacity
  base_capacity: 1.0
  deployment_scale: 0.0035      # capacity units per share-point-year of supply
"""


def write_config(name: str, stringency: float, prices: dict[int, float],
                 demand_growth: float, inv0: float, jobs0: float,
                 employment_factor: float, stranded: float,
                 gdp_coeff: float) -> Path:
    price_lines = "\n".join(
        f"  {year}: {price}" for year, price in sorted(prices.items())
    )
    text = TEMPLATE.format(
        name=name, start=START, end=END, stringency=stringency,
        ceiling=CEILING, demand_growth=round(demand_growth, 4),
        employment_factor=employment_factor, stranded=round(stranded, 4),
        gdp_coeff=round(gdp_coeff, 6), learning_rate=LEARNING_RATE,
        price_lines=price_lines, share0=SHARE0, emissions0=EMISSIONS0,
        inv0=round(inv0, 4), jobs0=round(jobs0, 4),
        adoption_rate=ADOPTION_RATE,
    )
    path = FIXTURES / f"scenario_{name}.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def run(name: str, demand_growth: float, inv0: float, jobs0: float,
        employment_factor: float = 9.1, stranded: float = 5.2,
        gdp_coeff: float = 0.024):
    spec = SCENARIOS[name]
    path = write_config(name, spec["stringency"], spec["prices"], demand_growth,
                        inv0, jobs0, employment_factor, stranded, gdp_coeff)
    return simulate(load_scenario_config(path)), path


def solve_demand_growth(name: str, inv0: float, jobs0: float) -> float:
    """Fixed point: demand growth consistent with the 2050 emission target."""
    target = SCENARIOS[name]["emissions_2050"]
    growth = 1.5
    for _ in range(20):
        result, _ = run(name, growth, inv0, jobs0)
        share_end = result.end_point.renewable_share
        ratio = target * (100.0 - SHARE0) / (EMISSIONS0 * (100.0 - share_end))
        growth = (ratio ** (1.0 / N_YEARS) - 1.0) * 100.0
    return growth


def main() -> None:
    # pass 1: ambitious with provisional investment scale
    g_amb = solve_demand_growth("ambitious", inv0=1.8, jobs0=16.4)
    provisional, _ = run("ambitious", g_amb, 1.8, 16.4)
    share_end = provisional.end_point.renewable_share
    demand_end = (1.0 + g_amb / 100.0) ** N_YEARS

    # closed-form calibration against the 2050 endpoints
    inv0 = 8.0 * SHARE0 / (share_end * demand_end)
    employment_factor = 72.8 / 8.0
    jobs0 = employment_factor * inv0
    stranded = 3.0 / ((share_end - SHARE0) / 100.0)
    cumulative_investment = sum(
        p.annual_investment * (inv0 / 1.8) for p in provisional.trajectory
    )
    gdp_coeff = 3.2 / cumulative_investment

    results = {}
    results["ambitious"], amb_path = run(
        "ambitious", g_amb, inv0, jobs0, employment_factor, stranded, gdp_coeff
    )
    for name in ("bau", "conservative"):
        growth = solve_demand_growth(name, inv0, jobs0)
        results[name], _ = run(
            name, growth, inv0, jobs0, employment_factor, stranded, gdp_coeff
        )

    amb, bau, con = (results[k] for k in ("ambitious", "bau", "conservative"))
    gap = bau.cumulative_emissions - amb.cumulative_emissions
    print(f"{'scenario':14s} {'share50':>8s} {'emis50':>8s} {'inv50':>7s} "
          f"{'jobs50':>7s} {'cum':>8s}")
    for r in (amb, bau, con):
        e = r.end_point
        print(f"{r.name:14s} {e.renewable_share:8.2f} {e.emissions:8.3f} "
              f"{e.annual_investment:7.3f} {e.jobs:7.2f} "
              f"{r.cumulative_emissions:8.1f}")
    print(f"ambitious gdp impact {amb.gdp_impact_pct:+.3f}%  "
          f"stranded {amb.stranded_assets:.3f} T")
    print(f"cumulative gap (bau - ambitious): {gap:.1f} Gt")

    def within(value, target, tol=0.02):
        return abs(value / target - 1.0) <= tol

    e = amb.end_point
    assert within(e.renewable_share, 92.5), e.renewable_share
    assert within(e.emissions, 8.2), e.emissions
    assert within(e.annual_investment, 8.0), e.annual_investment
    assert within(e.jobs, 72.8), e.jobs
    assert within(bau.end_point.emissions, 46.2), bau.end_point.emissions
    assert within(con.end_point.emissions, 52.5), con.end_point.emissions
    assert con.end_point.emissions > bau.end_point.emissions
    assert gap > 500.0, gap
    assert within(amb.gdp_impact_pct, 3.2, 0.05)
    assert within(amb.stranded_assets, 3.0, 0.05)
    print("all endpoint checks passed")


if __name__ == "__main__":
    main()
