"""Cheating provers, one per deviation, for soundness experiments."""

import logging
from dataclasses import replace
from enum import Enum
from typing import Dict, Optional, Sequence, Set, Tuple, Type

from ..cards import Card, Check, HEART, LogicalPair, RandomTape
from ..puzzle.model import GridPoint, PuzzleInstance, Solution
from ..solver.search import is_forced, solve
from .base import BeamPlan, PairPurpose, true_first
from .honest_prover import HonestProver
from .protocol import ProtocolResult, run_protocol
from .state import ProtocolState

logger = logging.getLogger(__name__)


class CheatStrategy(Enum):
    PASS_THROUGH_OCCUPIED = "pass-through-occupied"
    WRONG_BEND_COUNT = "wrong-bend-count"
    WRONG_START_DOT = "wrong-start-dot"
    END_NOT_AT_FIREFLY = "end-not-at-firefly"
    FAKE_CONNECTIVITY = "fake-connectivity"
    DISJUNCTION_FALSE_DROP = "disjunction-false-drop"
    MASK_SHAPE_FORGERY = "mask-shape-forgery"

    @property
    def expected_check(self) -> Check:
        """The check that catches this deviation first."""
        return _CAUGHT_BY[self]


_CAUGHT_BY = {
    CheatStrategy.PASS_THROUGH_OCCUPIED: Check.HEART_DISCARD,
    CheatStrategy.WRONG_BEND_COUNT: Check.SEGMENT_COUNT,
    CheatStrategy.WRONG_START_DOT: Check.START_DIRECTION,
    CheatStrategy.END_NOT_AT_FIREFLY: Check.HEADER_CONFIRM,
    CheatStrategy.FAKE_CONNECTIVITY: Check.FINAL_TABLE,
    CheatStrategy.DISJUNCTION_FALSE_DROP: Check.FINAL_TABLE,
    CheatStrategy.MASK_SHAPE_FORGERY: Check.SET_MEMBERSHIP,
}


class InapplicableStrategy(ValueError):
    """The instance or solution offers no opening for the requested deviation."""


class CheatingProver(HonestProver):
    """An honest prover that deviates once; `cheated` records that it did."""

    strategy: CheatStrategy

    def __init__(self, inst: PuzzleInstance, sol: Solution):
        super().__init__(inst, sol)
        self.cheated = False

    def _hidden_fireflies(self) -> Sequence[int]:
        return [f.id for f in self.inst.fireflies if not is_forced(self.inst, f.id)]


class PassThroughOccupied(CheatingProver):
    """Stretches a first segment onto a point an earlier beam already uses."""

    strategy = CheatStrategy.PASS_THROUGH_OCCUPIED

    def __init__(self, inst: PuzzleInstance, sol: Solution):
        super().__init__(inst, sol)
        self.victim, self.extra = self._find_victim()

    def _find_victim(self) -> Tuple[int, int]:
        hidden = set(self._hidden_fireflies())
        used: Set[GridPoint] = set()
        for fid in sorted(self.sol.beams):
            beam = self.sol.beams[fid]
            if fid in hidden and len(beam.vertices) >= 2:
                heading, length = beam.segments()[0]
                point: GridPoint = beam.start.step(heading, length)
                extra = 0
                while True:
                    point, extra = point.step(heading), extra + 1
                    if not self.inst.in_bounds(point) or self.inst.firefly_at(point) is not None:
                        break
                    if point in used:
                        return fid, extra
            used.update(beam.interior())
        raise InapplicableStrategy("no first segment can be stretched onto an earlier beam")

    def beam_plan(self, state: ProtocolState, fid: int, slots: Optional[int] = None) -> BeamPlan:
        plan = super().beam_plan(state, fid, slots)
        if fid == self.victim and slots is None:
            first = plan.segments[0]
            plan.segments[0] = replace(first, length=first.length + self.extra)
            self.cheated = True
        return plan


class WrongBendCount(CheatingProver):
    """Declares one slot more than the prescribed bend count allows."""

    strategy = CheatStrategy.WRONG_BEND_COUNT

    def __init__(self, inst: PuzzleInstance, sol: Solution):
        super().__init__(inst, sol)
        numbered = [fid for fid in self._hidden_fireflies() if inst.firefly(fid).numbered]
        if not numbered:
            raise InapplicableStrategy("no numbered firefly with a hidden beam")
        self.victim = numbered[0]

    def beam_plan(self, state: ProtocolState, fid: int, slots: Optional[int] = None) -> BeamPlan:
        plan = super().beam_plan(state, fid, slots)
        if fid == self.victim and slots is None:
            plan.segments.append(plan.segments[-1])
            self.cheated = True
        return plan


class WrongStartDot(CheatingProver):
    """Starts a beam away from its firefly's dot."""

    strategy = CheatStrategy.WRONG_START_DOT

    def __init__(self, inst: PuzzleInstance, sol: Solution):
        super().__init__(inst, sol)
        hidden = self._hidden_fireflies()
        if not hidden:
            raise InapplicableStrategy("every beam is forced")
        self.victim = hidden[0]

    def beam_plan(self, state: ProtocolState, fid: int, slots: Optional[int] = None) -> BeamPlan:
        plan = super().beam_plan(state, fid, slots)
        if fid == self.victim:
            first = plan.segments[0]
            plan.segments[0] = replace(first, heading=first.heading.opposite)
            self.cheated = True
        return plan


class EndNotAtFirefly(CheatingProver):
    """Lands a beam's last segment off its firefly: one point short, or the other way."""

    strategy = CheatStrategy.END_NOT_AT_FIREFLY

    def __init__(self, inst: PuzzleInstance, sol: Solution):
        super().__init__(inst, sol)
        hidden = self._hidden_fireflies()
        if not hidden:
            raise InapplicableStrategy("every beam is forced")
        self.victim = hidden[0]

    def beam_plan(self, state: ProtocolState, fid: int, slots: Optional[int] = None) -> BeamPlan:
        plan = super().beam_plan(state, fid, slots)
        if fid == self.victim:
            last = plan.segments[-1]
            if last.length >= 1:
                plan.segments[-1] = replace(last, length=last.length - 1)
            else:
                plan.segments[-1] = replace(last, heading=last.heading.opposite)
            self.cheated = True
        return plan


class FakeConnectivity(CheatingProver):
    """Never lets firefly n join a column, so n looks isolated to the table."""

    strategy = CheatStrategy.FAKE_CONNECTIVITY

    def __init__(self, inst: PuzzleInstance, sol: Solution):
        super().__init__(inst, sol)
        if inst.n < 2:
            raise InapplicableStrategy("a single firefly is always connected")

    def or_pick(
        self, purpose: PairPurpose, first: LogicalPair, second: LogicalPair, edge: Optional[Tuple[int, int]] = None
    ) -> int:
        if purpose is PairPurpose.UPDATE and edge is not None and self.inst.n in edge:
            self.cheated = True
            return 0
        return true_first(first, second)


class DisjunctionFalseDrop(CheatingProver):
    """Keeps the false pair of every merge disjunction that has one."""

    strategy = CheatStrategy.DISJUNCTION_FALSE_DROP

    def or_pick(
        self, purpose: PairPurpose, first: LogicalPair, second: LogicalPair, edge: Optional[Tuple[int, int]] = None
    ) -> int:
        if purpose is PairPurpose.MERGE and first.value() != second.value():
            self.cheated = True
            return 0 if not first.value() else 1
        return true_first(first, second)


class MaskShapeForgery(CheatingProver):
    """Puts a mask's marker on a Heart that is followed by another Heart."""

    strategy = CheatStrategy.MASK_SHAPE_FORGERY

    def mask_heart(self, cards: Sequence[Card], diamond: int) -> int:
        k = len(cards)
        for i, card in enumerate(cards):
            if card.face == HEART and cards[(i + 1) % k].face == HEART:
                self.cheated = True
                return i
        return super().mask_heart(cards, diamond)


_STRATEGIES: Dict[CheatStrategy, Type[CheatingProver]] = {
    cls.strategy: cls
    for cls in (
        PassThroughOccupied,
        WrongBendCount,
        WrongStartDot,
        EndNotAtFirefly,
        FakeConnectivity,
        DisjunctionFalseDrop,
        MaskShapeForgery,
    )
}


def get_cheating_prover(cheat: CheatStrategy, inst: PuzzleInstance, sol: Solution) -> CheatingProver:
    """
    Raises:
        InapplicableStrategy: If the deviation has nowhere to happen.
    """
    return _STRATEGIES[cheat](inst, sol)


def run_with_adversary(
    inst: PuzzleInstance, cheat: CheatStrategy, tape: RandomTape, sol: Optional[Solution] = None
) -> ProtocolResult:
    """
    Run the protocol against a prover that deviates in the given way.

    Args:
        inst: A solvable instance.
        cheat: The deviation.
        tape: Randomness for the run.
        sol: Solution the cheater starts from; solved for when omitted.

    Raises:
        InapplicableStrategy: If the deviation never took place.
    """
    if sol is None:
        sol = solve(inst)
        if sol is None:
            raise InapplicableStrategy("the instance has no solution to deviate from")
    prover = get_cheating_prover(cheat, inst, sol)
    result = run_protocol(inst, sol, tape, prover=prover)
    if not prover.cheated:
        raise InapplicableStrategy(f"{cheat.value} found no opening on this instance")
    logger.info("%s: %s (%s)", cheat.value, result.verdict.value, result.failure or "no failure")
    return result


__all__ = [
    "CheatStrategy",
    "CheatingProver",
    "InapplicableStrategy",
    "get_cheating_prover",
    "run_with_adversary",
]
