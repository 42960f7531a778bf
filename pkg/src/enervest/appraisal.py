"""Project valuation: discounted cash flows, real options, and cost curves.

Total project value is the sum of the static net present value and the
value of embedded managerial flexibility (defer / expand / abandon),
priced on a Cox-Ross-Rubinstein binomial lattice. Carbon-adjusted cost
and experience-curve projections support the competitiveness analysis
used by the scenario engine.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    ArbitrageError,
    DomainError,
    IrrAmbiguityWarning,
    NoRootError,
)

__all__ = [
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
]

IRR_BRACKET = (-0.999, 10.0)


@dataclass(frozen=True)
class CashFlowSchedule:
    """An upfront outlay followed by per-period cash flows.

    ``cash_flows[0]`` is the period-1 flow; the period-0 outflow is
    ``initial_investment``. ``horizon`` defaults to ``len(cash_flows)``.
    """

    initial_investment: float
    cash_flows: tuple[float, ...]
    discount_rate: float
    horizon: int = -1

    def __post_init__(self):
        object.__setattr__(self, "cash_flows", tuple(float(c) for c in self.cash_flows))
        if self.horizon < 0:
            object.__setattr__(self, "horizon", len(self.cash_flows))
        if self.initial_investment < 0:
            raise DomainError("initial_investment must be >= 0")
        if self.horizon < 1:
            raise DomainError("horizon must be >= 1")
        if len(self.cash_flows) != self.horizon:
            raise DomainError(
                f"expected {self.horizon} cash flows, got {len(self.cash_flows)}"
            )
        if self.discount_rate <= -1.0:
            raise DomainError("discount_rate must exceed -1")


@dataclass(frozen=True)
class RealOptionSpec:
    """Parameters of a single managerial option on an operating project.

    ``volatility`` and ``risk_free_rate`` are per lattice step: the up
    factor is exp(volatility) and one step accrues exp(risk_free_rate)
    of risk-free growth. Callers pricing an option over a fixed maturity
    with ``n`` steps should pass ``sigma * sqrt(T / n)`` and ``r * T / n``.

    ``exercise_parameter`` is the investment cost (defer), the expansion
    cost (expand, together with ``expansion_factor``), or the salvage
    value (abandon).
    """

    underlying_value: float
    volatility: float
    risk_free_rate: float
    steps: int
    option_kind: str
    exercise_parameter: float
    expansion_factor: float | None = None

    def __post_init__(self):
        if self.underlying_value <= 0:
            raise DomainError("underlying_value must be > 0")
        if self.volatility <= 0:
            raise DomainError("volatility must be > 0")
        if self.steps < 1:
            raise DomainError("steps must be >= 1")
        if self.option_kind not in ("defer", "expand", "abandon"):
            raise DomainError(f"unknown option_kind {self.option_kind!r}")
        if self.option_kind == "expand":
            if self.expansion_factor is None or self.expansion_factor <= 1.0:
                raise DomainError("expand options require expansion_factor > 1")


@dataclass(frozen=True)
class CarbonCostParams:
    """Private production cost plus the priced carbon externality."""

    private_cost: float
    carbon_price: float
    emission_factor: float

    def __post_init__(self):
        if self.carbon_price < 0:
            raise DomainError("carbon_price must be >= 0")
        if self.emission_factor < 0:
            raise DomainError("emission_factor must be >= 0")


@dataclass(frozen=True)
class LearningCurve:
    """Experience curve: cost falls by ``learning_rate`` per capacity doubling."""

    base_cost: float
    learning_rate: float
    base_capacity: float

    def __post_init__(self):
        if self.base_cost <= 0:
            raise DomainError("base_cost must be > 0")
        if not 0.0 <= self.learning_rate < 1.0:
            raise DomainError("learning_rate must lie in [0, 1)")
        if self.base_capacity <= 0:
            raise DomainError("base_capacity must be > 0")


def npv(schedule: CashFlowSchedule) -> float:
    """Net present value: sum of CF_t / (1+r)^t for t = 1..T, minus the outlay."""
    return _npv_at(schedule, schedule.discount_rate)


def _npv_at(schedule: CashFlowSchedule, rate: float) -> float:
    total = 0.0
    factor = 1.0
    for cf in schedule.cash_flows:
        factor *= 1.0 + rate
        total += cf / factor
    return total - schedule.initial_investment


def irr(schedule: CashFlowSchedule) -> float:
    """Internal rate of return: the discount rate at which NPV vanishes.

    Scans the bracket (-0.999, 10] for the first sign change, then refines
    it by bisection with a Newton polish until ``|npv|`` drops below
    ``1e-9 * max(1, initial_investment)``. Cash flows with more than one
    sign change trigger an :class:`IrrAmbiguityWarning`; the smallest root
    in the bracket is still returned.
    """
    signed = [-schedule.initial_investment, *schedule.cash_flows]
    sign_changes = _count_sign_changes(signed)
    if sign_changes > 1:
        warnings.warn(
            "cash flows change sign more than once; reporting the smallest "
            "bracketed rate",
            IrrAmbiguityWarning,
            stacklevel=2,
        )

    lo, hi = _first_sign_change_interval(schedule)
    tol = 1e-9 * max(1.0, schedule.initial_investment)
    f_lo = _npv_at(schedule, lo)
    root = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        root = mid
        f_mid = _npv_at(schedule, mid)
        if f_mid == 0.0:
            break
        if (f_lo > 0) == (f_mid > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    # Newton polish squeezes out the last digits when the bisection stalls
    # on a steep slope near rate = -1.
    for _ in range(5):
        f_root = _npv_at(schedule, root)
        if abs(f_root) <= tol:
            return root
        slope = _npv_slope(schedule, root)
        if slope == 0.0:
            break
        step = f_root / slope
        candidate = root - step
        if not IRR_BRACKET[0] < candidate <= IRR_BRACKET[1]:
            break
        root = candidate
    if abs(_npv_at(schedule, root)) > tol:
        raise NoRootError("IRR refinement failed to meet the residual tolerance")
    return root


def _npv_slope(schedule: CashFlowSchedule, rate: float) -> float:
    total = 0.0
    for t, cf in enumerate(schedule.cash_flows, start=1):
        total -= t * cf / (1.0 + rate) ** (t + 1)
    return total


def _count_sign_changes(flows: Sequence[float]) -> int:
    changes = 0
    prev = 0.0
    for f in flows:
        if f == 0.0:
            continue
        if prev != 0.0 and (f > 0) != (prev > 0):
            changes += 1
        prev = f
    return changes


def _first_sign_change_interval(schedule: CashFlowSchedule) -> tuple[float, float]:
    """Locate the leftmost sign change of NPV(r) on the admissible bracket.

    The grid is denser near -1 where discount factors blow up; 512 points
    is ample for annual-resolution schedules.
    """
    lo, hi = IRR_BRACKET
    n = 512
    grid = [lo + (hi - lo) * (i / n) ** 2 for i in range(n + 1)]
    prev_r = grid[0]
    prev_f = _npv_at(schedule, prev_r)
    for r in grid[1:]:
        f = _npv_at(schedule, r)
        if prev_f == 0.0:
            return (prev_r, prev_r)
        if (f <= 0.0 < prev_f) or (prev_f < 0.0 <= f):
            return (prev_r, r)
        prev_r, prev_f = r, f
    raise NoRootError(
        "NPV has no sign change for rates in (-0.999, 10]; no IRR exists"
    )


def real_option_value(spec: RealOptionSpec) -> float:
    """Value of the managerial option on a CRR binomial lattice.

    Up factor u = exp(volatility), d = 1/u, risk-neutral probability
    p = (exp(risk_free_rate) - d) / (u - d). Deferral is exercised at the
    final step only; expansion and abandonment allow exercise at every
    node during the backward induction.
    """
    u = math.exp(spec.volatility)
    d = 1.0 / u
    grow = math.exp(spec.risk_free_rate)
    p = (grow - d) / (u - d)
    if not 0.0 <= p <= 1.0:
        raise ArbitrageError(
            f"risk-neutral probability {p:.6f} outside [0, 1] "
            f"(u={u:.6f}, d={d:.6f}, rate={spec.risk_free_rate})"
        )
    disc = 1.0 / grow
    n = spec.steps

    values = [
        _exercise_payoff(spec, spec.underlying_value * u ** (2 * j - n))
        for j in range(n + 1)
    ]
    for level in range(n - 1, -1, -1):
        nxt = []
        for j in range(level + 1):
            cont = disc * (p * values[j + 1] + (1.0 - p) * values[j])
            if spec.option_kind == "defer":
                node_value = cont
            else:
                asset = spec.underlying_value * u ** (2 * j - level)
                node_value = max(cont, _exercise_payoff(spec, asset))
            nxt.append(node_value)
        values = nxt
    return values[0]


def _exercise_payoff(spec: RealOptionSpec, asset_value: float) -> float:
    if spec.option_kind == "defer":
        return max(asset_value - spec.exercise_parameter, 0.0)
    if spec.option_kind == "expand":
        assert spec.expansion_factor is not None
        gain = (spec.expansion_factor - 1.0) * asset_value - spec.exercise_parameter
        return max(gain, 0.0)
    return max(spec.exercise_parameter - asset_value, 0.0)


def project_value(npv_value: float, rov_value: float) -> float:
    """Total project value: static NPV plus the (non-negative) option value."""
    if rov_value < 0:
        raise DomainError("real option value must be >= 0")
    return npv_value + rov_value


def adjusted_cost(params: CarbonCostParams) -> float:
    """Production cost per unit energy including the priced carbon externality."""
    return params.private_cost + params.carbon_price * params.emission_factor


def learning_cost(curve: LearningCurve, cumulative_capacity: float) -> float:
    """Unit cost after learning, at the given cumulative deployed capacity.

    Uses the exponent log2(1 - learning_rate), so each doubling of
    capacity multiplies cost by exactly (1 - learning_rate).
    """
    if cumulative_capacity < curve.base_capacity:
        raise DomainError(
            "cumulative_capacity below base_capacity; backward extrapolation "
            "is not supported"
        )
    if curve.learning_rate == 0.0:
        return curve.base_cost
    exponent = math.log2(1.0 - curve.learning_rate)
    return curve.base_cost * (cumulative_capacity / curve.base_capacity) ** exponent
