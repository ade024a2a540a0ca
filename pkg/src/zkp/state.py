"""Board and connections-table cards of a protocol run."""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..cards import (
    CLUB,
    FALSE_FACES,
    HEART,
    TRUE_FACES,
    Card,
    CardSession,
    LogicalPair,
    MalformedPair,
    number,
)
from ..puzzle.model import GridPoint, PuzzleInstance
from ..puzzle.validator import connected_components

logger = logging.getLogger(__name__)


@dataclass
class ProtocolState:
    """
    Cards on the table during a run.

    board[by][bx] holds the card for grid point (bx-1, by-1); the outer ring is
    the Club boundary. table[i-1] is the column of firefly i: its header card
    followed by n logical pairs, pair r at indices 2r-1 and 2r.
    """

    inst: PuzzleInstance
    session: CardSession
    board: List[List[Card]]
    table: List[List[Card]]
    copy: List[LogicalPair] = field(default_factory=list)
    embedded: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.inst.n

    # -- board ----------------------------------------------------------------

    def cell(self, point: GridPoint) -> Card:
        return self.board[point.y + 1][point.x + 1]

    def set_cell(self, point: GridPoint, card: Card) -> None:
        self.board[point.y + 1][point.x + 1] = card

    def line_count(self, horizontal: bool) -> int:
        """Interior rows (horizontal) or interior columns."""
        return self.inst.height if horizontal else self.inst.width

    def line_length(self, horizontal: bool) -> int:
        return self.inst.width + 2 if horizontal else self.inst.height + 2

    def line(self, horizontal: bool, index: int) -> List[Card]:
        """Row by=index or column bx=index, boundary cards included."""
        if horizontal:
            return list(self.board[index])
        return [row[index] for row in self.board]

    def set_line(self, horizontal: bool, index: int, cards: List[Card]) -> None:
        if len(cards) != self.line_length(horizontal):
            raise ValueError(f"line {index} needs {self.line_length(horizontal)} cards, got {len(cards)}")
        if horizontal:
            self.board[index] = list(cards)
        else:
            for by, card in enumerate(cards):
                self.board[by][index] = card

    def board_cards(self) -> List[Card]:
        return [card for row in self.board for card in row]

    # -- connections table ------------------------------------------------------

    def pair(self, column: int, row: int) -> LogicalPair:
        cards = self.table[column - 1]
        return LogicalPair(cards[2 * row - 1], cards[2 * row])

    def set_pair(self, column: int, row: int, pair: LogicalPair) -> None:
        cards = self.table[column - 1]
        cards[2 * row - 1], cards[2 * row] = pair

    def table_values(self) -> List[List[Optional[bool]]]:
        """values[i-1][r-1] is pair r of column i; None when malformed."""
        values = []
        for i in range(1, self.n + 1):
            column = []
            for r in range(1, self.n + 1):
                try:
                    column.append(self.pair(i, r).value())
                except MalformedPair:
                    column.append(None)
            values.append(column)
        return values

    def table_cards(self) -> List[Card]:
        return [card for column in self.table for card in column]

    def in_play(self) -> List[Card]:
        return self.board_cards() + self.table_cards() + [c for pair in self.copy for c in pair]

    # -- ground truth, never shown to Vera ---------------------------------------

    def components(self) -> List[FrozenSet[int]]:
        return connected_components(self.inst, self.embedded)

    def invariant_problems(self) -> List[str]:
        """True table pairs whose fireflies are not connected by embedded beams."""
        component: Dict[int, int] = {}
        for index, group in enumerate(self.components()):
            for fid in group:
                component[fid] = index
        issues = []
        for i, column in enumerate(self.table_values(), start=1):
            for j, value in enumerate(column, start=1):
                if value is None:
                    issues.append(f"pair {j} of column {i} is malformed")
                elif value and component[i] != component[j]:
                    issues.append(f"pair {j} of column {i} is true but {i} and {j} are not connected")
        return issues

    def board_problems(self) -> List[str]:
        """Cards on interior non-firefly points must be Heart, Club or Diamond."""
        issues = []
        for point in self.inst.points():
            face = self.cell(point).face
            firefly = self.inst.firefly_at(point)
            if firefly is not None:
                if face != number(firefly.id):
                    issues.append(f"{point} holds {face}, expected N{firefly.id}")
            elif face.suit.value not in "CHD":
                issues.append(f"{point} holds {face}")
        return issues


def setup(inst: PuzzleInstance, session: CardSession) -> ProtocolState:
    """
    Lay out the board and the connections table for Vera to confirm.

    Raises:
        ValueError: If the instance is malformed.
    """
    issues = inst.problems()
    if issues:
        raise ValueError("invalid instance: " + "; ".join(issues))

    board = []
    for by in range(inst.height + 2):
        faces = []
        for bx in range(inst.width + 2):
            point = GridPoint(bx - 1, by - 1)
            firefly = inst.firefly_at(point) if inst.in_bounds(point) else None
            if not inst.in_bounds(point):
                faces.append(CLUB)
            elif firefly is not None:
                faces.append(number(firefly.id))
            else:
                faces.append(HEART)
        board.append(session.new_cards(faces, row=by))

    table = []
    for i in range(1, inst.n + 1):
        faces = [number(i)]
        for r in range(1, inst.n + 1):
            faces.extend(TRUE_FACES if r == i else FALSE_FACES)
        table.append(session.new_cards(faces, column=i))

    logger.debug("laid out %dx%d board and %d table columns", inst.width + 2, inst.height + 2, inst.n)
    return ProtocolState(inst, session, board, table)


__all__ = ["ProtocolState", "setup"]
