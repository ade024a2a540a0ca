"""Build a Hotaru Beam instance from an embedded planar monotone 3-SAT formula."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from ..config import config
from ..puzzle.model import Direction, GridPoint, PuzzleInstance
from .embedding import validate_embedding
from .formula import Clause, PlanarFormula, Side, serialize_formula
from .mapping import ClauseGadget, FireflyRecord, LiteralRecord, ReductionMap, VariableGadget

logger = logging.getLogger(__name__)

MIN_SCALE = 7

N, E, S, W = Direction.NORTH, Direction.EAST, Direction.SOUTH, Direction.WEST


class ReductionError(ValueError):
    """The formula or scale cannot be turned into an instance."""


@dataclass(frozen=True)
class _Box:
    """Closed axis-aligned rectangle in unshifted coordinates."""

    owner: str
    x_lo: int
    y_lo: int
    x_hi: int
    y_hi: int

    def meets(self, other: "_Box") -> bool:
        return (
            self.x_lo <= other.x_hi
            and other.x_lo <= self.x_hi
            and self.y_lo <= other.y_hi
            and other.y_lo <= self.y_hi
        )


class _Placer:
    """Collects fireflies in id order, in unshifted coordinates."""

    def __init__(self):
        self.items: List[Tuple[GridPoint, Direction, Optional[int], str]] = []
        self.taken: Dict[GridPoint, str] = {}

    def add(self, x: int, y: int, dot: Direction, role: str, bends: Optional[int] = 0) -> int:
        p = GridPoint(x, y)
        if p in self.taken:
            raise ReductionError(f"{role} and {self.taken[p]} both need the point {p}")
        self.taken[p] = role
        self.items.append((p, dot, bends, role))
        return len(self.items)


def _leg_columns(phi: PlanarFormula) -> Dict[str, List[int]]:
    columns: Dict[str, Set[int]] = {v.name: set() for v in phi.variables}
    for clause in phi.clauses:
        for leg in clause.legs:
            columns[leg.name].add(leg.x)
    return {name: sorted(xs) for name, xs in columns.items()}


def _place_variable(placer: _Placer, name: str, x_lo: int, x_hi: int, legs: List[int], scale: int) -> Tuple[VariableGadget, _Box]:
    x0, x1 = scale * x_lo, scale * x_hi
    anchor = placer.add(x0 - 1, 0, E, f"{name}.a0")
    upper_anchor = placer.add(x0 - 1, 1, S, f"{name}.ap")
    lower_anchor = placer.add(x0 - 1, -1, N, f"{name}.an")
    shaded = {x: placer.add(scale * x, 0, E, f"{name}.leg{x}") for x in legs}
    one = placer.add(x1 + 1, 0, E, f"{name}.c", bends=1)
    upper_rail = placer.add(x1 + 2, 2, E, f"{name}.dp")
    lower_rail = placer.add(x1 + 2, -2, E, f"{name}.dn")
    two = placer.add(x1 + 3, 0, E, f"{name}.e", bends=2)
    exit_ = placer.add(x1 + 5, 0, E, f"{name}.f0")
    upper_exit = placer.add(x1 + 5, 2, S, f"{name}.fp")
    lower_exit = placer.add(x1 + 5, -2, N, f"{name}.fn")
    gadget = VariableGadget(
        name=name,
        anchor=anchor,
        upper_anchor=upper_anchor,
        lower_anchor=lower_anchor,
        shaded=shaded,
        one=one,
        upper_rail=upper_rail,
        lower_rail=lower_rail,
        two=two,
        exit=exit_,
        upper_exit=upper_exit,
        lower_exit=lower_exit,
    )
    return gadget, _Box(f"variable {name}", x0 - 1, -2, x1 + 5, 2)


def _place_clause(
    placer: _Placer, index: int, clause: Clause, variables: Dict[str, VariableGadget], scale: int
) -> Tuple[ClauseGadget, _Box, List[Tuple[_Box, Set[str]]]]:
    sign = 1 if clause.side is Side.POSITIVE else -1
    toward_top = N if sign > 0 else S
    toward_axis = toward_top.opposite
    legs = clause.sorted_legs()
    count = len(legs)
    cols = [scale * leg.x for leg in legs]
    base = scale * abs(clause.level)
    rows = [base + count - j for j in range(count)]
    top = base + count + 1
    right = cols[-1] + 3
    tag = f"clause{index}"

    def add(x: int, u: int, dot: Direction, role: str, bends: int = 0) -> int:
        return placer.add(x, sign * u, dot, f"{tag}.{role}", bends)

    frame = [add(cols[0] - 1, top, toward_axis, "a"), add(right, top, W, "b")]
    frame += [add(right, rows[j], toward_top, f"z{j}") for j in range(count)]
    frame.append(add(right, base, toward_top, "i"))
    h = add(cols[-1] + 1, base, E, "h")
    frame.append(h)

    literal_ids, blockers, dummies = [], [], []
    for j in range(count):
        if j:
            dummies.append(add(cols[j - 1] + 1, rows[j], E, f"dummy{j}"))
        literal_ids.append(add(cols[j] - 1, rows[j], E, f"literal{j}", bends=1))
        blockers.append(add(cols[j] + 2, rows[j], E, f"blocker{j}"))

    literals = []
    for j, leg in enumerate(legs):
        literals.append(
            LiteralRecord(
                variable=leg.name,
                leg_x=leg.x,
                firefly=literal_ids[j],
                shaded=variables[leg.name].shaded[leg.x],
                exit_column=cols[j],
                next_hop=dummies[j] if j + 1 < count else h,
            )
        )
    gadget = ClauseGadget(
        index=index,
        side=clause.side.value,
        frame=frame,
        blockers=blockers,
        dummies=dummies,
        literals=literals,
    )
    y_a, y_b = sorted((sign * base, sign * top))
    box = _Box(tag, cols[0] - 1, y_a, right, y_b)
    # exit columns run from just below the literal row to just above the axis
    exits = []
    for j, x in enumerate(cols):
        y_c, y_d = sorted((sign * (rows[j] - 1), sign))
        own = {tag, f"variable {legs[j].name}"}
        exits.append((_Box(f"{tag} exit {j}", x, y_c, x, y_d), own))
    return gadget, box, exits


def _check_layout(boxes: List[_Box], corridors: List[Tuple[_Box, Set[str]]]) -> None:
    for k, a in enumerate(boxes):
        for b in boxes[k + 1:]:
            if a.meets(b):
                raise ReductionError(f"{a.owner} and {b.owner} overlap; increase the scale")
    for corridor, allowed in corridors:
        for box in boxes:
            if box.owner not in allowed and corridor.meets(box):
                raise ReductionError(f"{corridor.owner} runs through {box.owner}")


def reduce_to_hotaru(phi: PlanarFormula, scale: Optional[int] = None) -> Tuple[PuzzleInstance, ReductionMap]:
    """
    Generate the Hotaru Beam instance of an embedded formula.

    Each variable becomes a gadget whose control pair has exactly two
    drawings, each clause a frame whose literal fireflies either drop to
    their variable or chain internally, and a bends-0 chain closes the
    variable row from above.

    Returns:
        The instance and the placement map (ids and board positions).

    Raises:
        ReductionError: If the embedding is invalid, the scale is below
            MIN_SCALE, or gadgets would overlap.
    """
    scale = scale if scale is not None else config.get_scale()
    if scale < MIN_SCALE:
        raise ReductionError(f"scale {scale} is below the minimum of {MIN_SCALE}")
    problems = validate_embedding(phi)
    if problems:
        raise ReductionError("invalid embedding: " + "; ".join(str(p) for p in problems))

    placer = _Placer()
    columns = _leg_columns(phi)
    boxes: List[_Box] = []
    corridors: List[Tuple[_Box, Set[str]]] = []
    variables: Dict[str, VariableGadget] = {}
    for var in phi.variables:
        gadget, box = _place_variable(placer, var.name, var.x_lo, var.x_hi, columns[var.name], scale)
        variables[var.name] = gadget
        boxes.append(box)
        logger.debug("variable %s: %d legs, box %s", var.name, len(gadget.shaded), box)

    clauses = []
    for index, clause in enumerate(phi.clauses, start=1):
        gadget, box, exits = _place_clause(placer, index, clause, variables, scale)
        clauses.append(gadget)
        boxes.append(box)
        corridors.extend(exits)
        logger.debug("clause %d %s: box %s", index, clause, box)

    x_first = scale * min(v.x_lo for v in phi.variables)
    x_last = scale * max(v.x_hi for v in phi.variables)
    top_level = max([c.level for c in phi.clauses if c.level > 0] + [0])
    y_top = (top_level + 2) * scale
    chain = [
        placer.add(x_last + 7, 0, N, "chain.k1"),
        placer.add(x_last + 7, y_top, W, "chain.k2"),
        placer.add(x_first - 3, y_top, S, "chain.k3"),
        placer.add(x_first - 3, 0, E, "chain.k4"),
    ]
    corridors += [
        (_Box("chain right", x_last + 7, 1, x_last + 7, y_top - 1), set()),
        (_Box("chain top", x_first - 2, y_top, x_last + 6, y_top), set()),
        (_Box("chain left", x_first - 3, 1, x_first - 3, y_top - 1), set()),
    ]
    _check_layout(boxes, corridors)

    min_y = min(p.y for p, _, _, _ in placer.items)
    shift_x, shift_y = 3 - x_first, -min_y
    records = [
        FireflyRecord(id=k, x=p.x + shift_x, y=p.y + shift_y, dot=dot.value, bends=bends, role=role)
        for k, (p, dot, bends, role) in enumerate(placer.items, start=1)
    ]
    for gadget in clauses:
        for lit in gadget.literals:
            lit.exit_column += shift_x

    rmap = ReductionMap(
        scale=scale,
        shift_x=shift_x,
        shift_y=shift_y,
        width=x_last + 7 + shift_x + 1,
        height=y_top + shift_y + 1,
        formula=serialize_formula(phi),
        fireflies=records,
        variables=[variables[v.name] for v in phi.variables],
        clauses=clauses,
        chain=chain,
    )
    inst = rmap.instance()
    issues = inst.problems()
    if issues:
        raise ReductionError("generated instance is malformed: " + "; ".join(issues))
    logger.debug("reduced %d variables and %d clauses to a %dx%d board with %d fireflies",
                 len(phi.variables), len(phi.clauses), inst.width, inst.height, inst.n)
    return inst, rmap
