"""Witness-free provers: the zero-knowledge simulator and the replay stand-in."""

from typing import Optional, Tuple

from ..cards import LogicalPair
from ..puzzle.model import Direction, PuzzleInstance
from .base import BeamPlan, PairPurpose, Prover, SegmentIntent
from .beams import slot_count, slot_layout
from .masks import SegmentVariant
from .state import ProtocolState


class SimulatorProver(Prover):
    """
    Makes every secret choice without looking at a solution.

    All picks name piles fixed before the shuffles, so the positions Vera sees
    are uniform. The slot layout depends only on the public firefly.
    """

    def __init__(self, inst: PuzzleInstance):
        self.inst = inst

    def beam_plan(self, state: ProtocolState, fid: int, slots: Optional[int] = None) -> BeamPlan:
        firefly = self.inst.firefly(fid)
        if slots is None:
            slots = slot_count(self.inst, firefly)
        intents = []
        for slot in slot_layout(firefly, slots):
            for variant, horizontal in slot:
                heading = Direction.EAST if horizontal else Direction.NORTH
                if SegmentVariant.HIDDEN not in variant:
                    intents.append(SegmentIntent(line=1, start=1, length=1, heading=firefly.dot))
                elif variant & (SegmentVariant.FINAL | SegmentVariant.LANDING):
                    intents.append(SegmentIntent(line=1, start=1, length=0, heading=heading, target=1))
                else:
                    length = 0 if SegmentVariant.ALLOW_ZERO in variant else 1
                    intents.append(SegmentIntent(line=1, start=1, length=length, heading=heading))
        return BeamPlan(intents, slots)

    def or_pick(
        self, purpose: PairPurpose, first: LogicalPair, second: LogicalPair, edge: Optional[Tuple[int, int]] = None
    ) -> int:
        return 0

    def merge_plan(self, state: ProtocolState) -> Tuple[int, int, int]:
        return 1, 1, 1


class ReplayProver(SimulatorProver):
    """Placeholder choices for a replayed run; the record overrides every one of them."""


__all__ = ["ReplayProver", "SimulatorProver"]
