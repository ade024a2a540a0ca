"""Backtracking solver and exhaustive oracle for Hotaru Beam instances."""

from .occupancy import Occupancy, PointState
from .oracle import brute_force_count, brute_force_decide, exhaustive_solutions
from .search import (
    BudgetExhausted,
    SearchConfig,
    count_solutions,
    enumerate_beams,
    is_forced,
    iter_beams,
    iter_solutions,
    solve,
)

__all__ = [
    "BudgetExhausted",
    "Occupancy",
    "PointState",
    "SearchConfig",
    "brute_force_count",
    "brute_force_decide",
    "count_solutions",
    "enumerate_beams",
    "exhaustive_solutions",
    "is_forced",
    "iter_beams",
    "iter_solutions",
    "solve",
]
