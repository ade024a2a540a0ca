"""Embedding checks and a brute-force satisfiability oracle."""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from ..config import config
from .formula import Assignment, Clause, PlanarFormula, Side

logger = logging.getLogger(__name__)


class TooManyVariables(ValueError):
    """The formula is too large for exhaustive assignment search."""


class EmbeddingViolationKind(Enum):
    NO_VARIABLES = "NoVariables"
    DUPLICATE_VARIABLE = "DuplicateVariable"
    UNKNOWN_VARIABLE = "UnknownVariable"
    EMPTY_INTERVAL = "EmptyInterval"
    SIDE_LEVEL = "SideLevel"
    NOT_MONOTONE = "NotMonotone"
    LEG_COUNT = "LegCount"
    LEG_OUTSIDE_CLAUSE = "LegOutsideClause"
    LEG_OUTSIDE_VARIABLE = "LegOutsideVariable"
    CROSSING = "Crossing"


@dataclass(frozen=True)
class EmbeddingViolation:
    kind: EmbeddingViolationKind
    detail: str

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.detail}"


def _overlap(a_lo: int, a_hi: int, b_lo: int, b_hi: int) -> bool:
    return a_lo <= b_hi and b_lo <= a_hi


def _clause_violations(phi: PlanarFormula, k: int, clause: Clause) -> List[EmbeddingViolation]:
    found = []
    tag = f"clause {k + 1} {clause}"
    if clause.x_lo > clause.x_hi:
        found.append(EmbeddingViolation(EmbeddingViolationKind.EMPTY_INTERVAL, f"{tag}: x_lo > x_hi"))
    if (clause.side is Side.POSITIVE) != (clause.level > 0) or clause.level == 0:
        found.append(EmbeddingViolation(EmbeddingViolationKind.SIDE_LEVEL, f"{tag}: side {clause.side.value} at y={clause.level}"))
    if not 1 <= len(clause.legs) <= 3:
        found.append(EmbeddingViolation(EmbeddingViolationKind.LEG_COUNT, f"{tag}: {len(clause.legs)} literals"))
    wanted_negated = clause.side is Side.NEGATIVE
    if any(leg.negated != wanted_negated for leg in clause.legs):
        found.append(EmbeddingViolation(EmbeddingViolationKind.NOT_MONOTONE, f"{tag}: literal polarity must match side {clause.side.value}"))
    known = set(phi.names)
    for leg in clause.legs:
        if leg.name not in known:
            found.append(EmbeddingViolation(EmbeddingViolationKind.UNKNOWN_VARIABLE, f"{tag}: {leg.name!r}"))
            continue
        if not clause.x_lo <= leg.x <= clause.x_hi:
            found.append(EmbeddingViolation(EmbeddingViolationKind.LEG_OUTSIDE_CLAUSE, f"{tag}: leg {leg}"))
        var = phi.variable(leg.name)
        if not var.x_lo <= leg.x <= var.x_hi:
            found.append(EmbeddingViolation(EmbeddingViolationKind.LEG_OUTSIDE_VARIABLE, f"{tag}: leg {leg} outside [{var.x_lo},{var.x_hi}]"))
    if len({leg.x for leg in clause.legs}) != len(clause.legs):
        found.append(EmbeddingViolation(EmbeddingViolationKind.CROSSING, f"{tag}: two legs share a column"))
    return found


def validate_embedding(phi: PlanarFormula) -> List[EmbeddingViolation]:
    """
    Check monotonicity, sides, leg placement and that no two segments cross.

    Variables lie on y=0, clause segments on y=level, legs run vertically from
    y=0 to the clause level. Segments may only touch at leg endpoints.

    Returns:
        All violations; empty when the embedding is usable.
    """
    found: List[EmbeddingViolation] = []
    if not phi.variables:
        found.append(EmbeddingViolation(EmbeddingViolationKind.NO_VARIABLES, "formula declares no variables"))

    seen = set()
    for var in phi.variables:
        if var.name in seen:
            found.append(EmbeddingViolation(EmbeddingViolationKind.DUPLICATE_VARIABLE, var.name))
        seen.add(var.name)
        if var.x_lo > var.x_hi:
            found.append(EmbeddingViolation(EmbeddingViolationKind.EMPTY_INTERVAL, f"variable {var.name}: x_lo > x_hi"))
    for a, b in itertools.combinations(phi.variables, 2):
        if _overlap(a.x_lo, a.x_hi, b.x_lo, b.x_hi):
            found.append(EmbeddingViolation(EmbeddingViolationKind.CROSSING, f"variables {a.name} and {b.name} overlap"))

    for k, clause in enumerate(phi.clauses):
        found.extend(_clause_violations(phi, k, clause))

    for (i, c), (j, d) in itertools.combinations(enumerate(phi.clauses), 2):
        if c.level == d.level and _overlap(c.x_lo, c.x_hi, d.x_lo, d.x_hi):
            found.append(EmbeddingViolation(EmbeddingViolationKind.CROSSING, f"clauses {i + 1} and {j + 1} overlap at y={c.level}"))

    for i, c in enumerate(phi.clauses):
        for leg in c.legs:
            for var in phi.variables:
                if var.name != leg.name and var.x_lo <= leg.x <= var.x_hi:
                    found.append(EmbeddingViolation(EmbeddingViolationKind.CROSSING, f"leg {leg} of clause {i + 1} meets variable {var.name}"))
            for j, d in enumerate(phi.clauses):
                if j == i or (d.level > 0) != (c.level > 0):
                    continue
                if abs(d.level) <= abs(c.level) and d.x_lo <= leg.x <= d.x_hi:
                    found.append(EmbeddingViolation(EmbeddingViolationKind.CROSSING, f"leg {leg} of clause {i + 1} crosses clause {j + 1}"))
                elif any(other.x == leg.x for other in d.legs) and i < j:
                    found.append(EmbeddingViolation(EmbeddingViolationKind.CROSSING, f"clauses {i + 1} and {j + 1} both use column {leg.x}"))
    return found


def brute_force_sat(phi: PlanarFormula, max_vars: Optional[int] = None) -> Optional[Assignment]:
    """
    First satisfying assignment in canonical order, or None.

    Assignments are tried as binary counters over the variables in file
    order, all-false first.

    Raises:
        TooManyVariables: If the formula has more than max_vars variables.
    """
    limit = max_vars if max_vars is not None else config.get_max_sat_vars()
    names = phi.names
    if len(names) > limit:
        raise TooManyVariables(f"{len(names)} variables exceeds the brute-force limit of {limit}")
    for values in itertools.product((False, True), repeat=len(names)):
        assignment = dict(zip(names, values))
        if phi.evaluate(assignment):
            return assignment
    logger.debug("no satisfying assignment among %d candidates", 2 ** len(names))
    return None
