"""Averaged and weighted averaged Gauss rules and the Nystrom methods built on them."""
from .estimator import NystromSolver
from .measures import Measure, recurrence_table, theta_pair
from .nystrom import FredholmProblem, SpaceWeight
from .rules import (antigauss_rule, averaged_rule, gauss_rule, gstar_rule,
                    weighted_averaged_rule)

__all__ = [
    "Measure", "recurrence_table", "theta_pair",
    "gauss_rule", "antigauss_rule", "gstar_rule", "averaged_rule", "weighted_averaged_rule",
    "FredholmProblem", "SpaceWeight", "NystromSolver",
]

__version__ = "0.1.0"
