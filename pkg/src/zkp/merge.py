"""Column merges of the connections table and the final table check."""

import logging
from typing import Callable, List, Optional

from ..cards import (
    TRUE_FACES,
    Card,
    Check,
    EventKind,
    Expect,
    LogicalPair,
    Pile,
    PileSequence,
    copy_pair,
    or_replace,
    pile_choose,
)
from .base import PairPurpose, Prover
from .state import ProtocolState

logger = logging.getLogger(__name__)


def _copy_out(state: ProtocolState, column: Pile, out: List[LogicalPair]) -> None:
    for r in range(1, state.n + 1):
        kept, spare = copy_pair(state.session, LogicalPair(column[2 * r - 1], column[2 * r]))
        column[2 * r - 1], column[2 * r] = kept
        out.append(spare)


def absorb_column(state: ProtocolState, prover: Prover, target: int, source: int, row: int) -> None:
    """
    Replace column `target` with its row-wise disjunction with column `source`.

    The target is copied, checked against the source on `row` and updated
    inside one pile choosing, so the checked column is the updated one.
    """
    session, n = state.session, state.n
    donor: List[LogicalPair] = []
    state.table[:] = pile_choose(
        session, PileSequence(state.table), source - 1, lambda column: _copy_out(state, column, donor)
    ).piles

    leftovers: List[Card] = []

    def absorb(column: Pile) -> None:
        own: List[LogicalPair] = []
        _copy_out(state, column, own)
        rows = PileSequence([[*own[r], *donor[r]] for r in range(n)])
        pile_choose(
            session,
            rows,
            row - 1,
            lambda pile: session.reveal(pile, Expect.exactly([*TRUE_FACES, *TRUE_FACES]), Check.MERGE_ROW),
        )
        for r in range(1, n + 1):
            pair, extra = LogicalPair(column[2 * r - 1], column[2 * r]), donor[r - 1]
            kept, spare = or_replace(session, pair, extra, prover.or_pick(PairPurpose.MERGE, pair, extra))
            column[2 * r - 1], column[2 * r] = kept
            leftovers.extend(spare)
        leftovers.extend(card for pair in own for card in pair)

    state.table[:] = pile_choose(session, PileSequence(state.table), target - 1, absorb).piles
    session.set_aside(leftovers)


def merge_columns(state: ProtocolState, prover: Prover, i: int, j: int, row: int) -> None:
    """Both columns become their row-wise disjunction; they must share the true `row`."""
    for index in (i, j, row):
        if not 1 <= index <= state.n:
            raise ValueError(f"merge index {index} out of range for {state.n} fireflies")
    absorb_column(state, prover, i, j, row)
    absorb_column(state, prover, j, i, row)


def run_merges(
    state: ProtocolState, prover: Prover, audit: Optional[Callable[[ProtocolState, str], None]] = None
) -> None:
    """Exactly n² merges, whatever the table holds; the count is public."""
    total = state.n * state.n
    for index in range(1, total + 1):
        state.session.emit(EventKind.MERGE_STARTED, index=index, of=total)
        i, j, row = prover.merge_plan(state)
        merge_columns(state, prover, i, j, row)
        if audit:
            audit(state, "merge")
    logger.debug("ran %d column merges", total)


def check_final_table(state: ProtocolState) -> None:
    """Open every pair; Vera accepts only an all-true table."""
    for i, column in enumerate(state.table, start=1):
        state.session.reveal(column[1:], Expect.exactly(TRUE_FACES * state.n), Check.FINAL_TABLE, column=i)


__all__ = ["absorb_column", "check_final_table", "merge_columns", "run_merges"]
