"""Toolkit for appraising low-carbon energy investment.

Subpackages cover project valuation (NPV, IRR, real options, carbon cost,
learning curves), two-way fixed-effects panel econometrics with random
effects and Hausman/placebo diagnostics, dynamic transition-pathway
simulation, sensitivity and ablation analysis, and a deterministic CLI
that emits report tables and plot-ready data.
"""

from .appraisal import (
    CarbonCostParams,
    CashFlowSchedule,
    LearningCurve,
    RealOptionSpec,
    adjusted_cost,
    irr,
    learning_cost,
    npv,
    project_value,
    real_option_value,
)
from .econometrics import (
    DOUBLING,
    HausmanResult,
    PlaceboResult,
    RegressionResult,
    RegressionSpec,
    fit_fe,
    fit_re,
    hausman_test,
    placebo_test,
    semi_elasticity,
    within_transform,
)
from .paneldata import (
    DescriptiveStats,
    PanelDataset,
    PanelObservation,
    load_panel,
    serialize_panel,
    summarize,
)
from .scenario import (
    ScenarioConfig,
    ScenarioResult,
    TrajectoryPoint,
    compare,
    load_scenario_config,
    simulate,
)
from .sensitivity import (
    ParameterPerturbation,
    SensitivityRecord,
    sensitivity_index,
    tornado,
)
from .ablation import (
    AblationConfiguration,
    AblationRecord,
    complementarity,
    evaluate_configuration,
    run_ablation_fixture,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # appraisal
    "CashFlowSchedule",
    "RealOptionSpec",
    "CarbonCostParams",
    "LearningCurve",
    "npv",
    "irr",
    "real_option_value",
    "project_value",
    "adjusted_cost",
    "learning_cost",
    # panel data
    "PanelObservation",
    "PanelDataset",
    "DescriptiveStats",
    "load_panel",
    "serialize_panel",
    "summarize",
    # econometrics
    "DOUBLING",
    "RegressionSpec",
    "RegressionResult",
    "HausmanResult",
    "PlaceboResult",
    "within_transform",
    "fit_fe",
    "fit_re",
    "hausman_test",
    "semi_elasticity",
    "placebo_test",
    # scenarios
    "ScenarioConfig",
    "ScenarioResult",
    "TrajectoryPoint",
    "simulate",
    "compare",
    "load_scenario_config",
    # sensitivity & ablation
    "ParameterPerturbation",
    "SensitivityRecord",
    "sensitivity_index",
    "tornado",
    "AblationConfiguration",
    "AblationRecord",
    "run_ablation_fixture",
    "evaluate_configuration",
    "complementarity",
]
