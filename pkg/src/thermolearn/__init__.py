"""Learning-curve model of thermodynamic costs, exergy decoupling and calibration."""

from .errors import (ConvergenceError, DomainError, RankDeficiencyError, ThermolearnError,
                     ValidationError)
from .model import (LearningParams, PolicyContext, Scenario, TrajectoryPoint,
                    asymptotic_exergy, cost_at, cost_ratio, cumulative_production,
                    derive_policy_context, eval_curve, exergy_at, exergy_ratio,
                    policy_coefficient_from_gamma, production_at, sample_times, theta_at,
                    trajectory)
from .decoupling import (DecouplingReport, InnovationDemand, asymptotic_condition,
                         breakeven_rate, critical_time, decoupling_lhs, initial_condition,
                         required_h)
from .climate import ClimateParams, cumulative_emissions, delta_T
from .calibration import CostSeries, FitResult, fit, hindcast_compare, lambda_audit
from .presets import PRESETS, preset_scenario

__version__ = "0.1.0"
