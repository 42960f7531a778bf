#!/usr/bin/env python3
"""Derive the shipped NPV sensitivity-model fixture.

Tunes a stylized clean-energy project so that one-at-a-time sensitivity
indices under symmetric +/-20% perturbations come out as

    carbon price ~ 0.78  >  discount rate ~ 0.75  >  energy price ~ 0.71

with capex, opex, and policy support ranking strictly below. The solve is
a damped fixed point on three knobs (energy price, carbon revenue, capex)
evaluated through the production sensitivity code, so the shipped fixture
is guaranteed consistent with the library. Writes
src/enervest/fixtures/npv_model.yaml and perturbations.csv.

Usage: python scripts/calibrate_npv_model.py
"""

from __future__ import annotations

from pathlib import Path

from enervest.sensitivity import (
    ParameterPerturbation,
    project_npv_model,
    tornado,
)

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "enervest" / "fixtures"

LIFETIME = 25
OUTPUT = 1.0
DISCOUNT = 0.07
OPEX = 25.0
POLICY_SUPPORT = 5.7
DISPLACEMENT = 0.8  # tonnes CO2 avoided per unit output

TARGET = {"carbon_price": 0.78, "discount_rate": 0.75, "energy_price": 0.71}


def annuity(rate: float, years: int) -> float:
    return (1.0 - (1.0 + rate) ** -years) / rate


def indices_for(params: dict[str, float]) -> dict[str, float]:
    model = project_npv_model(LIFETIME, OUTPUT, DISPLACEMENT, params)
    perts = [
        ParameterPerturbation(name, params[name], 0.8 * params[name],
                              1.2 * params[name])
        for name in ("carbon_price", "discount_rate", "energy_price",
                     "capex", "opex", "policy_support")
    ]
    return {r.parameter: r.index for r in tornado(model, perts)}


def solve() -> dict[str, float]:
    """Closed form: the price-like indices are PV shares of NPV and the
    discount index fixes net annual flow over NPV, so with opex and
    policy support held fixed the NPV level (and all three knobs) is
    pinned exactly."""
    a = annuity(DISCOUNT, LIFETIME)
    delta_a = annuity(0.8 * DISCOUNT, LIFETIME) - annuity(1.2 * DISCOUNT, LIFETIME)
    share_sum = TARGET["carbon_price"] + TARGET["energy_price"]
    coeff = TARGET["discount_rate"] * 0.4 / delta_a - share_sum / a
    npv = (POLICY_SUPPORT - OPEX) / coeff
    assert npv > 0, "chosen opex/policy constants admit no positive-NPV solution"
    carbon_revenue = TARGET["carbon_price"] * npv / a
    energy_revenue = TARGET["energy_price"] * npv / a
    gross = energy_revenue + carbon_revenue + POLICY_SUPPORT * OUTPUT - OPEX
    return {
        "carbon_price": carbon_revenue / (DISPLACEMENT * OUTPUT),
        "discount_rate": DISCOUNT,
        "energy_price": energy_revenue / OUTPUT,
        "capex": gross * a - npv,
        "opex": OPEX,
        "policy_support": POLICY_SUPPORT,
    }


def write_fixture(params: dict[str, float], idx: dict[str, float]) -> None:
    lines = [
        "# Stylized clean-energy project for NPV sensitivity analysis.",
        "# Produced by scripts/calibrate_npv_model.py; do not edit by hand.",
        "schema_version: 1",
        "project:",
        f"  lifetime: {LIFETIME}            # years",
        f"  output: {OUTPUT}             # energy delivered per year (arbitrary unit)",
        f"  emission_displacement: {DISPLACEMENT}  # tonnes CO2 avoided per unit output",
        "fixed_parameters:",
    ]
    for key, value in params.items():
        lines.append(f"  {key}: {round(value, 4)}")
    (FIXTURES / "npv_model.yaml").write_text("\n".join(lines) + "\n", "utf-8")

    rows = ["name,baseline,low,high"]
    for name in ("carbon_price", "discount_rate", "energy_price", "capex",
                 "opex", "policy_support"):
        b = round(params[name], 4)
        rows.append(f"{name},{b},{round(0.8 * b, 6)},{round(1.2 * b, 6)}")
    (FIXTURES / "perturbations.csv").write_text("\n".join(rows) + "\n", "utf-8")
    print("wrote npv_model.yaml and perturbations.csv")


def main() -> None:
    params = solve()
    idx = indices_for(params)
    for name, value in sorted(idx.items(), key=lambda kv: -kv[1]):
        print(f"{name:16s} index {value:.4f}")
    assert idx["carbon_price"] > idx["discount_rate"] > idx["energy_price"], idx
    for name, target in TARGET.items():
        assert abs(idx[name] - target) < 0.01, (name, idx[name])
    assert max(idx[n] for n in ("capex", "opex", "policy_support")) < idx["energy_price"]
    write_fixture(params, idx)

    # re-verify through the files we just wrote
    from enervest.sensitivity import load_npv_model, load_perturbations

    model = load_npv_model(FIXTURES / "npv_model.yaml")
    records = tornado(model, load_perturbations(FIXTURES / "perturbations.csv"))
    names = [r.parameter for r in records]
    assert names[:3] == ["carbon_price", "discount_rate", "energy_price"], names
    print("fixture round-trip ordering:", " > ".join(names))


if __name__ == "__main__":
    main()
