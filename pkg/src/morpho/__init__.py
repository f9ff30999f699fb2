"""Morphological modelling of evolving requirement systems and forecast synthesis."""
from .errors import *  # noqa: F401,F403
from .evolution import (ChangeOperation, ChangeSet, Difference, OpKind,
                        aggregate_changes, classify_change, diff_compat,
                        diff_generations, diff_trees)
from .io import dump_model, parse_model
from .model import (Alternative, AlternativeGroup, CompatibilityTable,
                    GenerationSnapshot, Model, RequirementNode,
                    RequirementTree, Transition, Violation, leaf_level,
                    validate_model)
from .pipeline import (ForecastConfig, ForecastReport, ForecastResult,
                       apply_changes, render_report, run_forecast,
                       select_basic)
from .ranking import RankingStrategy, assign_priorities, pareto_layers, rank_model
from .selection import BudgetSelection, knapsack01, mckp_select
from .synthesis import (Composition, Ordering, QualityVector, dominates,
                        feasible, quality_vector, synthesize_node,
                        synthesize_tree)

__version__ = "0.1.0"
