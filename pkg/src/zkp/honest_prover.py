"""The prover who knows a solution and plays by the rules."""

import logging
from typing import List, Optional, Tuple

from ..cards import LogicalPair
from ..puzzle.model import BeamPath, Direction, Firefly, GridPoint, PuzzleInstance, Solution
from .base import BeamPlan, PairPurpose, Prover, SegmentIntent, true_first
from .beams import slot_count, slot_is_horizontal, slot_layout
from .masks import SegmentVariant
from .state import ProtocolState

logger = logging.getLogger(__name__)

Piece = Tuple[Direction, int]


def _pieces(beam: Optional[BeamPath]) -> List[Piece]:
    if beam is None or len(beam.vertices) < 2:
        return []
    try:
        return beam.segments()
    except ValueError:
        return []


def _intent(
    inst: PuzzleInstance,
    point: GridPoint,
    horizontal: bool,
    heading: Direction,
    length: int,
    final: bool,
    target: int = 0,
    lowest: int = 1,
) -> SegmentIntent:
    k = inst.width + 2 if horizontal else inst.height + 2
    lines = inst.height if horizontal else inst.width
    line = point.y + 1 if horizontal else point.x + 1
    start = point.x + 1 if horizontal else point.y + 1
    longest = k - 2 if final else k - 1
    return SegmentIntent(
        line=min(max(line, 1), lines),
        start=min(max(start, 0), k - 1),
        length=min(max(length, 0 if final else lowest), longest),
        heading=heading,
        target=target,
    )


def _idle(horizontal: bool) -> Direction:
    return Direction.EAST if horizontal else Direction.NORTH


def plan_beam(inst: PuzzleInstance, fid: int, beam: Optional[BeamPath], slots: Optional[int] = None) -> BeamPlan:
    """
    Step intents for a beam of the solution.

    A numbered beam fills its slots one segment each, the last one ending on
    the target. An unnumbered beam keeps the step onto the target for its
    landing and lays every other segment on the next row or column step of
    matching axis; the steps in between stay zero.
    """
    firefly = inst.firefly(fid)
    pieces = _pieces(beam)
    if not pieces:
        pieces = [(firefly.dot, 1), (firefly.dot.turns()[0], 1)]
    end = beam.end if beam is not None and beam.vertices else firefly.dot_point
    landed = inst.firefly_at(end)
    target = landed.id if landed is not None else 0
    if firefly.numbered:
        return _plan_numbered(inst, firefly, pieces, target, slots)
    return _plan_unnumbered(inst, firefly, pieces, target, slots)


def _plan_numbered(
    inst: PuzzleInstance, firefly: Firefly, pieces: List[Piece], target: int, slots: Optional[int]
) -> BeamPlan:
    slots = max(slots if slots is not None else len(pieces), 2)
    if len(pieces) > slots:
        pieces = pieces[: slots - 1] + pieces[-1:]

    intents: List[SegmentIntent] = []
    point = firefly.pos
    for slot in range(1, slots):
        horizontal = slot_is_horizontal(firefly, slot)
        if slot < len(pieces):
            heading, length = pieces[slot - 1]
            intents.append(_intent(inst, point, horizontal, heading, length, final=False))
            point = point.step(heading, length)
        else:
            intents.append(_intent(inst, point, horizontal, _idle(horizontal), 0, final=False, lowest=1 if slot == 1 else 0))
    heading, length = pieces[-1]
    intents.append(_intent(inst, point, slot_is_horizontal(firefly, slots), heading, length - 1, final=True, target=target))
    return BeamPlan(intents)


def _plan_unnumbered(
    inst: PuzzleInstance, firefly: Firefly, pieces: List[Piece], target: int, slots: Optional[int]
) -> BeamPlan:
    slots = max(slots if slots is not None else slot_count(inst, firefly), 2)
    heading, length = pieces[-1]
    runs = pieces[:-1] + [(heading, length - 1)]

    intents: List[SegmentIntent] = []
    point = firefly.pos
    for variant, horizontal in [step for slot in slot_layout(firefly, slots)[:-1] for step in slot]:
        if SegmentVariant.HIDDEN not in variant:
            run_heading, run_length = runs.pop(0)
            intents.append(_intent(inst, point, horizontal, run_heading, run_length, final=False))
        elif runs and runs[0][0].horizontal == horizontal:
            run_heading, run_length = runs.pop(0)
            intents.append(_intent(inst, point, horizontal, run_heading, run_length, final=False, lowest=0))
        else:
            run_heading, run_length = _idle(horizontal), 0
            intents.append(_intent(inst, point, horizontal, run_heading, 0, final=False, lowest=0))
        point = point.step(run_heading, run_length)
    if runs:
        logger.debug("beam %d has %d segments more than its slots hold", firefly.id, len(runs))

    intents.append(
        SegmentIntent(
            line=min(max(point.y + 1, 0), inst.height + 1),
            start=min(max(point.x + 1, 0), inst.width + 1),
            length=0,
            heading=heading,
            target=target,
        )
    )
    return BeamPlan(intents, slots)


def greedy_merge(values: List[List[Optional[bool]]]) -> Tuple[int, int, int]:
    """
    First pair of columns with different rows sharing a true row.

    Once none is left every column is a connected component; the remaining
    merges are self-merges on a true row.
    """
    rows = [{r for r, v in enumerate(column, start=1) if v} for column in values]
    n = len(rows)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            shared = rows[i - 1] & rows[j - 1]
            if shared and rows[i - 1] != rows[j - 1]:
                return i, j, min(shared)
    for i in range(1, n + 1):
        if rows[i - 1]:
            return i, i, min(rows[i - 1])
    return 1, 1, 1


class HonestProver(Prover):
    """Plans every beam from the solution and keeps true pairs in every disjunction."""

    def __init__(self, inst: PuzzleInstance, sol: Solution):
        self.inst = inst
        self.sol = sol

    def beam_plan(self, state: ProtocolState, fid: int, slots: Optional[int] = None) -> BeamPlan:
        return plan_beam(self.inst, fid, self.sol.beams.get(fid), slots)

    def or_pick(
        self, purpose: PairPurpose, first: LogicalPair, second: LogicalPair, edge: Optional[Tuple[int, int]] = None
    ) -> int:
        return true_first(first, second)

    def merge_plan(self, state: ProtocolState) -> Tuple[int, int, int]:
        return greedy_merge(state.table_values())


__all__ = ["HonestProver", "greedy_merge", "plan_beam"]
