"""Paths to the data fixtures shipped with the package."""

from __future__ import annotations

from pathlib import Path

_FIXTURE_DIR = Path(__file__).parent / "fixtures"

PANEL = _FIXTURE_DIR / "panel_2010_2023.csv"
SCENARIO_AMBITIOUS = _FIXTURE_DIR / "scenario_ambitious.yaml"
SCENARIO_BAU = _FIXTURE_DIR / "scenario_bau.yaml"
SCENARIO_CONSERVATIVE = _FIXTURE_DIR / "scenario_conservative.yaml"
NPV_MODEL = _FIXTURE_DIR / "npv_model.yaml"
PERTURBATIONS = _FIXTURE_DIR / "perturbations.csv"
ABLATION_MODEL = _FIXTURE_DIR / "ablation_model.yaml"
ABLATION_TABLE6 = _FIXTURE_DIR / "ablation_table6.csv"
ABLATION_TABLE7 = _FIXTURE_DIR / "ablation_table7.csv"
CASE_STUDY = _FIXTURE_DIR / "case_study_2023.csv"
PROJECT = _FIXTURE_DIR / "project_clean_energy.yaml"


def fixture_path(name: str) -> Path:
    """Absolute path of a fixture file by file name."""
    path = _FIXTURE_DIR / name
    if not path.exists():
        raise FileNotFoundError(f"no fixture named {name!r}")
    return path
