"""Map satisfying assignments to solutions of a reduced instance and back."""

import logging
from typing import Dict, List

from ..puzzle.model import BeamPath, GridPoint, Solution
from ..puzzle.validator import validate_solution
from ..solver.occupancy import Occupancy
from ..solver.search import enumerate_beams
from .formula import Assignment, Side, parse_formula
from .mapping import ReductionMap, VariableGadget

logger = logging.getLogger(__name__)


class WitnessError(ValueError):
    """An assignment or solution does not fit the reduction."""


def _fixed_beams(rmap: ReductionMap) -> Dict[int, BeamPath]:
    inst = rmap.instance()
    empty = Occupancy(inst)
    beams = {}
    for f in inst.fireflies:
        if f.bends != 0:
            continue
        found = enumerate_beams(inst, empty, f.id)
        if len(found) != 1:
            raise WitnessError(f"firefly {f.id} ({rmap.record(f.id).role}) has {len(found)} beams, expected 1")
        beams[f.id] = found[0]
    return beams


def _control_beams(rmap: ReductionMap, gadget: VariableGadget, value: bool) -> List[BeamPath]:
    c, e = rmap.position(gadget.one), rmap.position(gadget.two)
    c_turn, e_turn = GridPoint(c.x + 1, c.y), GridPoint(e.x + 1, e.y)
    if value:
        c_end, e_row, e_end = gadget.upper_rail, e.y - 1, gadget.lower_anchor
    else:
        c_end, e_row, e_end = gadget.lower_rail, e.y + 1, gadget.upper_anchor
    return [
        BeamPath(gadget.one, (c, c_turn, rmap.position(c_end))),
        BeamPath(gadget.two, (e, e_turn, GridPoint(e_turn.x, e_row), rmap.position(e_end))),
    ]


def assignment_to_solution(rmap: ReductionMap, assignment: Assignment) -> Solution:
    """
    Draw the reduced instance according to a satisfying assignment.

    Every clause sends its first satisfied literal down to the variable;
    the other literals take the internal route.

    Raises:
        WitnessError: If the assignment does not satisfy the formula.
    """
    phi = parse_formula(rmap.formula)
    missing = set(phi.names) - set(assignment)
    if missing:
        raise WitnessError(f"assignment is missing {sorted(missing)}")
    if not phi.evaluate(assignment):
        raise WitnessError("assignment does not satisfy the formula")

    beams = _fixed_beams(rmap)
    for gadget in rmap.variables:
        for beam in _control_beams(rmap, gadget, assignment[gadget.name]):
            beams[beam.owner] = beam

    for clause, gadget in zip(phi.clauses, rmap.clauses):
        negated = clause.side is Side.NEGATIVE
        chosen = next(lit for lit in gadget.literals if assignment[lit.variable] != negated)
        for lit in gadget.literals:
            start = rmap.position(lit.firefly)
            if lit is chosen:
                corner, end = GridPoint(lit.exit_column, start.y), rmap.position(lit.shaded)
            else:
                corner, end = GridPoint(lit.exit_column + 1, start.y), rmap.position(lit.next_hop)
            beams[lit.firefly] = BeamPath(lit.firefly, (start, corner, end))

    sol = Solution(dict(sorted(beams.items())))
    violations = validate_solution(rmap.instance(), sol)
    if violations:
        raise WitnessError("drawing is not a solution: " + "; ".join(str(v) for v in violations[:5]))
    return sol


def solution_to_assignment(rmap: ReductionMap, sol: Solution) -> Assignment:
    """
    Read the assignment off the control fireflies: the '1' firefly ending at
    the upper rail means true.

    Raises:
        WitnessError: If sol is not a solution of the reduced instance.
    """
    inst = rmap.instance()
    violations = validate_solution(inst, sol)
    if violations:
        raise WitnessError("not a solution of the reduced instance: " + "; ".join(str(v) for v in violations[:5]))
    assignment = {
        gadget.name: sol.beams[gadget.one].end == rmap.position(gadget.upper_rail)
        for gadget in rmap.variables
    }
    phi = parse_formula(rmap.formula)
    if not phi.evaluate(assignment):
        raise WitnessError(f"solution encodes {assignment}, which does not satisfy the formula")
    logger.debug("read back assignment %s", assignment)
    return assignment
