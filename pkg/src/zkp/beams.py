"""Embedding whole beams: public forced beams and hidden multi-slot beams."""

import logging
from typing import List, Sequence, Tuple

from ..cards import CLUB, HEART, Card, Check, EventKind, Expect, ReplayMismatch, copy_pair, number, or_replace
from ..puzzle.model import Firefly, PuzzleInstance
from ..solver.search import is_forced
from .base import PairPurpose, Prover
from .masks import SegmentVariant
from .segments import embed_segment
from .state import ProtocolState

logger = logging.getLogger(__name__)

# (variant, horizontal) of every step in one slot.
Slot = List[Tuple[SegmentVariant, bool]]


def slot_count(inst: PuzzleInstance, firefly: Firefly) -> int:
    """Slots Vera accepts for a non-forced beam: one per segment, or w·h when unnumbered."""
    if firefly.numbered:
        return firefly.bends + 1
    return max(inst.width * inst.height, 2)


def slot_is_horizontal(firefly: Firefly, slot: int) -> bool:
    """Odd slots run along the dot's axis, even slots across it."""
    return firefly.dot.horizontal == (slot % 2 == 1)


def slot_layout(firefly: Firefly, slots: int) -> List[Slot]:
    """
    The steps of every slot of a hidden beam.

    A numbered beam has one segment per slot on alternating axes and ends with
    a final segment. An unnumbered beam runs a row step and a column step in
    every middle slot, either of which may be zero, and its last slot is the
    landing on the target, so no slot depends on the beam's bends.
    """
    along = firefly.dot.horizontal
    layout: List[Slot] = [[(SegmentVariant.BASIC, along)]]
    if firefly.numbered:
        for slot in range(2, slots + 1):
            variant = SegmentVariant.HIDDEN | SegmentVariant.FINAL if slot == slots else SegmentVariant.HIDDEN
            layout.append([(variant, slot_is_horizontal(firefly, slot))])
        return layout
    middle = SegmentVariant.HIDDEN | SegmentVariant.ALLOW_ZERO
    for _ in range(2, slots):
        layout.append([(middle, not along), (middle, along)])
    layout.append([(SegmentVariant.HIDDEN | SegmentVariant.LANDING, along)])
    return layout


def _copy_column(state: ProtocolState, fid: int) -> None:
    state.copy = []
    for r in range(1, state.n + 1):
        kept, spare = copy_pair(state.session, state.pair(fid, r))
        state.set_pair(fid, r, kept)
        state.copy.append(spare)


def _release_copy(state: ProtocolState, extra: Sequence[Card] = ()) -> None:
    state.session.set_aside(list(extra) + [card for pair in state.copy for card in pair])
    state.copy = []


def embed_forced_beam(state: ProtocolState, prover: Prover, fid: int) -> None:
    """Walk a beam whose path is public and update the table in the open."""
    session, inst = state.session, state.inst
    firefly = inst.firefly(fid)
    session.emit(EventKind.BEAM_STARTED, firefly=fid, segments=0)

    previous, point = firefly.pos, firefly.dot_point
    while True:
        target = inst.firefly_at(point) if inst.in_bounds(point) else None
        card = state.board[point.y + 1][point.x + 1]
        if target is not None:
            session.reveal([card], Expect.exactly([number(target.id)]), Check.PUBLIC_BEAM)
            if previous == target.dot_point:
                session.fail(Check.PUBLIC_BEAM, f"entry-not-{target.dot.value}", [target.dot])
            break
        session.discard(card, HEART, Check.PUBLIC_BEAM)
        state.board[point.y + 1][point.x + 1] = session.new_cards([CLUB])[0]
        previous, point = point, point.step(firefly.dot)

    _copy_column(state, fid)
    spares: List[Card] = []
    for r in range(1, state.n + 1):
        pair, extra = state.pair(target.id, r), state.copy[r - 1]
        kept, spare = or_replace(session, pair, extra, prover.or_pick(PairPurpose.UPDATE, pair, extra, (fid, target.id)))
        state.set_pair(target.id, r, kept)
        spares.extend(spare)
    _release_copy(state, spares)
    state.embedded.append((fid, target.id))
    logger.debug("forced beam %d -> %d", fid, target.id)


def embed_hidden_beam(state: ProtocolState, prover: Prover, fid: int) -> None:
    """Declare the slot count, then embed every slot without showing the path."""
    session, inst = state.session, state.inst
    firefly = inst.firefly(fid)
    plan = prover.beam_plan(state, fid)
    event = session.declare(EventKind.BEAM_STARTED, ("segments",), firefly=fid, segments=plan.slot_count)
    try:
        slots = event.get_int("segments")
    except ValueError:
        raise ReplayMismatch(len(session.log), f"segment count {event.get('segments')!r} is not a number") from None

    expected = slot_count(inst, firefly)
    if slots != expected or slots < 2:
        session.fail(Check.SEGMENT_COUNT, str(expected), [slots])
    if slots != plan.slot_count:
        logger.warning("beam %d planned %d slots but %d were declared; replanning", fid, plan.slot_count, slots)
        plan = prover.beam_plan(state, fid, slots=slots)
    layout = slot_layout(firefly, slots)
    steps = sum(len(slot) for slot in layout)
    if len(plan.segments) != steps:
        raise ValueError(f"prover planned {len(plan.segments)} steps for a {slots}-slot beam of {steps} steps")

    _copy_column(state, fid)
    intents = iter(plan.segments)
    for index, slot in enumerate(layout, start=1):
        session.emit(EventKind.SEGMENT_STARTED, firefly=fid, index=index, of=slots)
        for variant, horizontal in slot:
            embed_segment(state, prover, fid, next(intents), variant, horizontal)
    _release_copy(state)
    state.embedded.append((fid, plan.target))
    logger.debug("hidden beam %d embedded in %d slots", fid, slots)


def embed_beam(state: ProtocolState, prover: Prover, fid: int) -> None:
    if is_forced(state.inst, fid):
        embed_forced_beam(state, prover, fid)
    else:
        embed_hidden_beam(state, prover, fid)


__all__ = [
    "embed_beam",
    "embed_forced_beam",
    "embed_hidden_beam",
    "slot_count",
    "slot_is_horizontal",
    "slot_layout",
]
