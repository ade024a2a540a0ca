"""Planar monotone 3-SAT formulas and their reduction to Hotaru Beam."""

from .embedding import (
    EmbeddingViolation,
    EmbeddingViolationKind,
    TooManyVariables,
    brute_force_sat,
    validate_embedding,
)
from .formula import (
    Assignment,
    Clause,
    FormulaFormatError,
    Leg,
    PlanarFormula,
    Side,
    Variable,
    load_formula,
    parse_formula,
    serialize_formula,
)
from .gadgets import MIN_SCALE, ReductionError, reduce_to_hotaru
from .mapping import ReductionMap, load_map
from .witness import WitnessError, assignment_to_solution, solution_to_assignment

__all__ = [
    "Assignment",
    "Clause",
    "EmbeddingViolation",
    "EmbeddingViolationKind",
    "FormulaFormatError",
    "Leg",
    "MIN_SCALE",
    "PlanarFormula",
    "ReductionError",
    "ReductionMap",
    "Side",
    "TooManyVariables",
    "Variable",
    "WitnessError",
    "assignment_to_solution",
    "brute_force_sat",
    "load_formula",
    "load_map",
    "parse_formula",
    "reduce_to_hotaru",
    "serialize_formula",
    "solution_to_assignment",
    "validate_embedding",
]
