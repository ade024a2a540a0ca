"""Hotaru Beam puzzle model, file formats and rule validation."""

from .fileio import (
    HotaruFormatError,
    load_instance,
    load_solution,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from .model import (
    BeamPath,
    Direction,
    Firefly,
    GridPoint,
    PuzzleInstance,
    Solution,
    Violation,
    ViolationKind,
    relabel_fireflies,
    relabel_solution,
)
from .render import render_ascii
from .validator import bend_count, connected_components, validate_solution

__all__ = [
    "BeamPath",
    "Direction",
    "Firefly",
    "GridPoint",
    "HotaruFormatError",
    "PuzzleInstance",
    "Solution",
    "Violation",
    "ViolationKind",
    "bend_count",
    "connected_components",
    "load_instance",
    "load_solution",
    "parse_instance",
    "parse_solution",
    "relabel_fireflies",
    "relabel_solution",
    "render_ascii",
    "serialize_instance",
    "serialize_solution",
    "validate_solution",
]
