"""Embedding one straight segment of a beam onto the board."""

import logging
from typing import List

from ..cards import (
    CLUB,
    DIAMOND,
    HEART,
    Card,
    Check,
    EventKind,
    Expect,
    LogicalPair,
    Pile,
    PileSequence,
    discard_heart,
    number,
    or_replace,
    pile_choose,
    reversible_shuffle_session,
    select_pile,
)
from ..puzzle.model import Direction
from .base import PairPurpose, Prover, SegmentIntent
from .masks import SegmentVariant, build_mask, mirror, zero_mask
from .state import ProtocolState

logger = logging.getLogger(__name__)


def align(mask: List[Card], at: int) -> List[Card]:
    """Rotate a mask so its marker sits at index `at` of the line."""
    k = len(mask)
    return [mask[(i - at) % k] for i in range(k)]


def stamp(state: ProtocolState, line: List[Card], aligned: List[Card], at: int) -> None:
    """Merge an aligned mask into a line, discarding one Heart per position except `at`."""
    for i in range(len(line)):
        if i != at:
            line[i] = discard_heart(state.session, [line[i], aligned[i]])


def embed_first_segment(state: ProtocolState, prover: Prover, fid: int, intent: SegmentIntent) -> None:
    """The segment leaving the firefly, embedded on its public row or column."""
    session = state.session
    firefly = state.inst.firefly(fid)
    event = session.declare(
        EventKind.DIRECTION_DECLARED, ("direction",), firefly=fid, direction=intent.heading
    )
    declared = event.get("direction")
    if declared != firefly.dot.value:
        session.fail(Check.START_DIRECTION, firefly.dot.value, [declared])
    session.reveal([state.cell(firefly.pos)], Expect.exactly([number(fid)]), Check.START_DIRECTION)

    horizontal = firefly.dot.horizontal
    index = firefly.pos.y + 1 if horizontal else firefly.pos.x + 1
    at = firefly.pos.x + 1 if horizontal else firefly.pos.y + 1
    line = state.line(horizontal, index)
    mask = build_mask(session, len(line), intent.length, SegmentVariant.BASIC, prover.mask_heart)
    if intent.step < 0:
        mask = mirror(mask)
    aligned = align(mask, at)
    stamp(state, line, aligned, at)
    # The marker was laid in the open; the number card stays where it is.
    session.retire([aligned[at]])
    state.set_line(horizontal, index, line)


def _update_target_column(state: ProtocolState, prover: Prover, fid: int, target: int, holder: Pile) -> None:
    # holder[0] is the card the beam ends on. It trades places with the chosen
    # column's header, so the header check ties the column to the landing point.
    session = state.session

    def absorb(column: Pile) -> None:
        holder[0], column[0] = column[0], holder[0]
        for r in range(1, state.n + 1):
            pair = LogicalPair(column[2 * r - 1], column[2 * r])
            extra = state.copy[r - 1]
            kept, spare = or_replace(session, pair, extra, prover.or_pick(PairPurpose.UPDATE, pair, extra, (fid, target)))
            column[2 * r - 1], column[2 * r] = kept
            state.copy[r - 1] = spare

    choice = min(max(target, 1), state.n) - 1
    state.table[:] = pile_choose(session, PileSequence(state.table), choice, absorb).piles
    session.reveal(
        [column[0] for column in state.table],
        Expect.exactly([number(i) for i in range(1, state.n + 1)]),
        Check.HEADER_CONFIRM,
    )


def _land(
    state: ProtocolState, prover: Prover, fid: int, intent: SegmentIntent, line: List[Card], aligned: List[Card], at: int
) -> None:
    session = state.session
    k = len(line)
    columns = PileSequence([[line[i], aligned[i]] for i in range(k)])

    def arrive(pile: Pile) -> None:
        session.discard(pile[1], DIAMOND, Check.MASK_DIAMOND)
        pile[1] = session.new_cards([HEART])[0]
        _update_target_column(state, prover, fid, intent.target, pile)

    landing = (at + intent.step * (intent.length + 1)) % k
    columns = pile_choose(session, columns, landing, arrive)
    for i, pile in enumerate(columns.piles):
        line[i], aligned[i] = pile


def _hidden_step(
    state: ProtocolState,
    prover: Prover,
    fid: int,
    intent: SegmentIntent,
    variant: SegmentVariant,
    shuffled: PileSequence,
    at: int,
) -> None:
    session = state.session
    k = shuffled.k
    line = [pile[0] for pile in shuffled.piles]
    start = line[at]
    session.reveal([start], Expect.exactly([DIAMOND]), Check.TARGET_MARKER)

    dummy = intent.length == 0 and SegmentVariant.ALLOW_ZERO in variant
    length = 1 if dummy else intent.length
    shape = variant & SegmentVariant.FINAL
    options = [
        build_mask(session, k, length, shape, prover.mask_heart),
        mirror(build_mask(session, k, length, shape, prover.mask_heart)),
    ]
    if SegmentVariant.ALLOW_ZERO in variant:
        options.append(zero_mask(session, k))
    choice = 2 if dummy else (0 if intent.step > 0 else 1)
    aligned = align(select_pile(session, PileSequence(options), choice), at)

    if SegmentVariant.FINAL in variant:
        _land(state, prover, fid, intent, line, aligned, at)
    stamp(state, line, aligned, at)
    session.retire([start])
    line[at] = aligned[at]
    for pile, card in zip(shuffled.piles, line):
        pile[0] = card


def embed_hidden_segment(
    state: ProtocolState,
    prover: Prover,
    fid: int,
    intent: SegmentIntent,
    variant: SegmentVariant,
    horizontal: bool,
) -> None:
    """
    Embed a segment that starts on the live Diamond somewhere on the board.

    The line is picked with pile choosing and the start inside it with a
    reversible shuffle session, so Vera learns neither.
    """
    session = state.session
    lines = PileSequence([state.line(horizontal, i) for i in range(1, state.line_count(horizontal) + 1)])

    def on_line(pile: Pile) -> None:
        restored = reversible_shuffle_session(
            session,
            PileSequence.singles(pile),
            [(intent.start, lambda shuffled, at: _hidden_step(state, prover, fid, intent, variant, shuffled, at))],
        )
        pile[:] = [single[0] for single in restored.piles]

    lines = pile_choose(session, lines, intent.line - 1, on_line)
    for i, pile in enumerate(lines.piles, start=1):
        state.set_line(horizontal, i, pile)


# Order of the neighbours a landing picks from.
NEIGHBOURS = (Direction.NORTH, Direction.EAST, Direction.SOUTH, Direction.WEST)


def _step_onto_neighbour(
    state: ProtocolState,
    prover: Prover,
    fid: int,
    intent: SegmentIntent,
    columns: PileSequence,
    column_at: int,
    row_at: int,
) -> None:
    # columns is the whole board after both cyclic shifts; the Diamond sits at
    # columns[column_at][row_at] and its neighbours wrap around the edges.
    session = state.session
    width, height = columns.k, len(columns.piles[0])
    marker = columns.piles[column_at][row_at]
    session.reveal([marker], Expect.exactly([DIAMOND]), Check.TARGET_MARKER)

    spots = [((column_at + d.dx) % width, (row_at + d.dy) % height) for d in NEIGHBOURS]
    singles = PileSequence([[columns.piles[x][y]] for x, y in spots])
    choice = NEIGHBOURS.index(intent.heading)
    singles = pile_choose(
        session, singles, choice, lambda pile: _update_target_column(state, prover, fid, intent.target, pile)
    )
    for (x, y), pile in zip(spots, singles.piles):
        columns.piles[x][y] = pile[0]

    session.retire([marker])
    columns.piles[column_at][row_at] = session.new_cards([CLUB])[0]


def embed_landing(state: ProtocolState, prover: Prover, fid: int, intent: SegmentIntent) -> None:
    """
    The last step of an unnumbered beam, from the live Diamond onto a firefly.

    The board's rows and then its columns are shifted cyclically, so the
    revealed Diamond says nothing about its position or about the axis of the
    step. The prover picks one of its four neighbours with pile choosing, and
    the pick goes through the target's table column like a final segment's
    landing card.
    """
    session = state.session
    rows = PileSequence([list(row) for row in state.board])

    def on_row(shifted_rows: PileSequence, row_at: int) -> None:
        columns = PileSequence([[row[bx] for row in shifted_rows.piles] for bx in range(len(shifted_rows.piles[0]))])
        restored = reversible_shuffle_session(
            session,
            columns,
            [(intent.start, lambda shifted, at: _step_onto_neighbour(state, prover, fid, intent, shifted, at, row_at))],
        )
        for bx, column in enumerate(restored.piles):
            for by, card in enumerate(column):
                shifted_rows.piles[by][bx] = card

    restored = reversible_shuffle_session(session, rows, [(intent.line, on_row)])
    state.board = [list(row) for row in restored.piles]


def embed_segment(
    state: ProtocolState,
    prover: Prover,
    fid: int,
    intent: SegmentIntent,
    variant: SegmentVariant,
    horizontal: bool,
) -> None:
    """Embed one step of a beam; BASIC is the public first segment."""
    if SegmentVariant.LANDING in variant:
        embed_landing(state, prover, fid, intent)
    elif SegmentVariant.HIDDEN in variant:
        embed_hidden_segment(state, prover, fid, intent, variant, horizontal)
    else:
        embed_first_segment(state, prover, fid, intent)


__all__ = ["NEIGHBOURS", "align", "embed_first_segment", "embed_hidden_segment", "embed_landing", "embed_segment", "stamp"]
