"""Abstract base class for provers and the plans they feed the protocol."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

from ..cards import Card, LogicalPair
from ..puzzle.model import Direction
from .masks import honest_heart

if TYPE_CHECKING:
    from .state import ProtocolState


@dataclass(frozen=True)
class SegmentIntent:
    """
    Where one step of a beam is embedded.

    line is the board row (horizontal steps) or column (vertical steps) in
    board coordinates, start the index of the segment's first card along that
    line. length counts the steps that land on a Diamond; a final segment's
    length excludes the step onto the target firefly. A landing uses line and
    start as the board row and column of the live Diamond, and heading as the
    step onto the target.
    """

    line: int
    start: int
    length: int
    heading: Direction
    target: int = 0

    @property
    def step(self) -> int:
        """+1 when the segment runs towards higher board indices."""
        return 1 if self.heading in (Direction.EAST, Direction.NORTH) else -1


@dataclass
class BeamPlan:
    """One intent per step, in slot order. slots is the declared count when it differs from the step count."""

    segments: List[SegmentIntent] = field(default_factory=list)
    slots: Optional[int] = None

    @property
    def slot_count(self) -> int:
        return self.slots if self.slots is not None else len(self.segments)

    @property
    def target(self) -> int:
        return self.segments[-1].target if self.segments else 0


class PairPurpose(Enum):
    UPDATE = "update"
    MERGE = "merge"


class Prover(ABC):
    """Abstract base class for everything that makes the prover's secret choices."""

    @abstractmethod
    def beam_plan(self, state: "ProtocolState", fid: int, slots: Optional[int] = None) -> BeamPlan:
        """
        Plan the steps of a non-forced beam.

        Args:
            state: Cards on the table, readable by the prover.
            fid: Firefly whose beam is embedded next.
            slots: Slot count already declared; None lets the prover choose.

        Returns:
            BeamPlan: One intent per step of the slot layout.
        """
        pass

    @abstractmethod
    def or_pick(
        self, purpose: PairPurpose, first: LogicalPair, second: LogicalPair, edge: Optional[Tuple[int, int]] = None
    ) -> int:
        """
        Which of two logical pairs an or_replace keeps.

        Args:
            purpose: Beam update or column merge.
            first: Pair of the column being updated.
            second: Pair it is combined with.
            edge: (source, target) fireflies of the beam behind an update.

        Returns:
            int: 0 keeps first, 1 keeps second.
        """
        pass

    @abstractmethod
    def merge_plan(self, state: "ProtocolState") -> Tuple[int, int, int]:
        """
        Next column merge.

        Returns:
            (i, j, k): columns i and j, which share the true row k.
        """
        pass

    def mask_heart(self, cards: Sequence[Card], diamond: int) -> int:
        """Heart to replace by the marker while building a mask."""
        return honest_heart(cards, diamond)


def true_first(first: LogicalPair, second: LogicalPair) -> int:
    """The disjunction pick of an honest prover."""
    return 0 if first.value() or not second.value() else 1


__all__ = ["BeamPlan", "PairPurpose", "Prover", "SegmentIntent", "true_first"]
