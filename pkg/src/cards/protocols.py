"""
Card-based primitives: pile-shifting shuffle, pile choosing, reversible
shuffle sessions, set membership, Heart discarding and the disjunction of
logical pairs.
"""

import logging
from typing import Callable, List, Optional, Sequence, Tuple

from .events import Check, EventKind, VisibleEvent
from .model import (
    CLUB,
    DIAMOND,
    FALSE_FACES,
    HEART,
    SPADE,
    TRUE_FACES,
    Card,
    Face,
    LogicalPair,
    Pile,
    PileSequence,
)
from .session import CardSession, Expect, SessionMode

logger = logging.getLogger(__name__)

PileOp = Callable[[Pile], None]
PositionOp = Callable[[PileSequence, int], None]


def pile_shifting_shuffle(session: CardSession, seq: PileSequence) -> Tuple[PileSequence, VisibleEvent]:
    """
    Rotate the sequence by a secret offset drawn from the tape.

    Returns:
        The rotated sequence (sharing pile objects) and the ShuffleApplied event,
        which names the pile count but never the offset.
    """
    x = session.draw(seq.k)
    event = session.emit(EventKind.SHUFFLE_APPLIED, of=seq.k)
    return seq.rotate(x), event


def _position(seq: PileSequence, pile: Pile) -> int:
    for i, candidate in enumerate(seq.piles):
        if candidate is pile:
            return i
    raise ValueError("pile is not part of this sequence")


def _marked_session(
    session: CardSession,
    seq: PileSequence,
    action: Callable[[PileSequence, PileSequence, PileSequence], None],
    choice: Optional[int] = None,
) -> PileSequence:
    # Vera marks pile 0 with a Heart and the others with Diamonds. With a
    # choice, the prover adds a Spade on the chosen pile and Clubs elsewhere.
    k = seq.k
    markers: List[Pile] = [[session.deck.new(HEART if i == 0 else DIAMOND)] for i in range(k)]
    if choice is not None:
        for i, pile in enumerate(markers):
            pile.append(session.deck.new(SPADE if i == choice else CLUB))
    session.emit(EventKind.MARKERS_PLACED, of=k, layers=len(markers[0]))

    x = session.draw(k)
    session.emit(EventKind.SHUFFLE_APPLIED, of=k)
    tops, bare = PileSequence(markers).rotate(x), seq.rotate(x)
    action(bare, tops, seq)

    x = session.draw(k)
    session.emit(EventKind.SHUFFLE_APPLIED, of=k)
    tops, bare = tops.rotate(x), bare.rotate(x)
    q = next(i for i, pile in enumerate(tops.piles) if pile[0].face == HEART)
    session.emit(EventKind.TOPS_REVEALED, at=q, of=k)
    tops, bare = tops.rotate(q), bare.rotate(q)

    session.retire([pile[0] for pile in tops.piles])
    session.deck.put_aside(card for pile in tops.piles for card in pile[1:])
    return bare


def pile_choose(session: CardSession, seq: PileSequence, choice: int, op: PileOp) -> PileSequence:
    """
    Apply op to the chosen pile without Vera learning which one it was.

    Args:
        session: The running session.
        seq: Piles in their public order.
        choice: Index of the pile the prover operates on.
        op: Mutates one pile in place, keeping its height.

    Returns:
        PileSequence: The same piles, back in their input order.
    """
    if not 0 <= choice < seq.k:
        raise ValueError(f"choice {choice} out of range for {seq.k} piles")

    def action(bare: PileSequence, tops: PileSequence, origin: PileSequence) -> None:
        wanted = next(i for i, pile in enumerate(tops.piles) if pile[-1].face == SPADE)
        at = session.pick(EventKind.PILE_PICKED, wanted, bare.k)
        op(bare.piles[at])

    with session.scope("pile_choose"):
        return _marked_session(session, seq, action, choice)


def reversible_shuffle_session(
    session: CardSession, seq: PileSequence, ops: Sequence[Tuple[int, PositionOp]]
) -> PileSequence:
    """
    Shuffle once, let the prover run several operations on the shuffled
    sequence, then undo the shuffle.

    Each op receives the shuffled sequence and the position of its pile, so it
    may reach neighbouring piles. Vera learns the positions picked, whose
    differences are the relative distances between the operated piles.
    """
    for index, _ in ops:
        if not 0 <= index < seq.k:
            raise ValueError(f"index {index} out of range for {seq.k} piles")

    def action(bare: PileSequence, tops: PileSequence, origin: PileSequence) -> None:
        for index, op in ops:
            wanted = _position(bare, origin.piles[index])
            at = session.pick(EventKind.PILE_PICKED, wanted, bare.k)
            op(bare, at)

    with session.scope("reversible_shuffle"):
        return _marked_session(session, seq, action)


def select_pile(session: CardSession, seq: PileSequence, choice: int) -> Pile:
    """Keep one pile of the prover's choosing and set the others aside unopened."""
    if not 0 <= choice < seq.k:
        raise ValueError(f"choice {choice} out of range for {seq.k} piles")
    with session.scope("select_pile"):
        shuffled, _ = pile_shifting_shuffle(session, seq)
        at = session.pick(EventKind.PILES_SHIFTED, _position(shuffled, seq.piles[choice]), seq.k)
        shifted = shuffled.rotate(at)
        session.set_aside([card for pile in shifted.piles[1:] for card in pile])
        return shifted.piles[0]


def prove_set_membership(
    session: CardSession, card: Card, faces: Sequence[Face], check: Check = Check.SET_MEMBERSHIP
) -> Card:
    """
    Show that a face-down card's face belongs to `faces`.

    Vera lays out one card per face; the prover swaps the card in for a copy
    of its own face, and the shuffled sequence is opened.

    Returns:
        Card: The card that leaves the sequence and takes the place of `card`.
    """
    with session.scope("set_membership"):
        fresh = session.new_cards(faces)
        target = next((c for c in fresh if c.face == card.face), fresh[0])
        shuffled, _ = pile_shifting_shuffle(session, PileSequence.singles(fresh))
        at = session.pick(EventKind.PILE_PICKED, shuffled.index_of(target), shuffled.k)
        pile = shuffled.piles[at]
        outgoing = pile[0]
        if session.mode is SessionMode.SIMULATED and outgoing.face != card.face:
            outgoing = card
        else:
            pile[0] = card
        shuffled, _ = pile_shifting_shuffle(session, shuffled)
        opened = shuffled.cards()
        session.reveal(opened, Expect.multiset_of(faces), check)
        session.retire(opened)
        return outgoing


def discard_heart(session: CardSession, cards: Sequence[Card], check: Check = Check.HEART_DISCARD) -> Card:
    """
    Shuffle two cards, open and discard one of them as a Heart.

    Returns:
        Card: The card that stays, its face still hidden.
    """
    if len(cards) != 2:
        raise ValueError(f"discard_heart takes 2 cards, got {len(cards)}")
    candidate = next((c for c in reversed(cards) if c.face == HEART), cards[-1])
    with session.scope("discard_heart"):
        shuffled, _ = pile_shifting_shuffle(session, PileSequence.singles(cards))
        at = session.pick(EventKind.PILE_PICKED, shuffled.index_of(candidate), 2)
        chosen = shuffled.piles[at][0]
        session.discard(chosen, HEART, check)
        return shuffled.piles[1 - at][0]


def or_replace(
    session: CardSession, b1: LogicalPair, b2: LogicalPair, pick: int
) -> Tuple[LogicalPair, LogicalPair]:
    """
    Replace two logical pairs with two copies of the one the prover keeps.

    An honest prover keeps a true pair when there is one, so both outputs
    equal b1 or b2. Keeping a false pair can only make the result false.

    Args:
        pick: 0 keeps b1, 1 keeps b2.

    Raises:
        MalformedPair: If either input is not a logical pair.
    """
    b1.value()
    b2.value()
    with session.scope("or_replace"):
        kept = select_pile(session, PileSequence([list(b1), list(b2)]), pick)
        marks = session.new_cards([SPADE, DIAMOND])
        columns = PileSequence([[kept[0], marks[0]], [kept[1], marks[1]]])
        columns, _ = pile_shifting_shuffle(session, columns)

        shown = session.reveal(
            [pile[0] for pile in columns.piles], Expect.one_of(TRUE_FACES, FALSE_FACES), Check.LOGICAL_PAIR
        )
        for pile, card in zip(columns.piles, session.new_cards(shown)):
            pile.append(card)

        columns, _ = pile_shifting_shuffle(session, columns)
        row = session.reveal(
            [pile[1] for pile in columns.piles],
            Expect.one_of((SPADE, DIAMOND), (DIAMOND, SPADE)),
            Check.LOGICAL_PAIR,
            trusted=True,
        )
        if row[0] != SPADE:
            columns = columns.rotate(1)
        session.retire([pile[1] for pile in columns.piles])
        left, right = columns.piles
        return LogicalPair(left[0], right[0]), LogicalPair(left[2], right[2])


def copy_pair(session: CardSession, pair: LogicalPair, pick: int = 0) -> Tuple[LogicalPair, LogicalPair]:
    """Two copies of a logical pair, via a disjunction with a fresh false pair."""
    blank = LogicalPair(*session.new_cards(FALSE_FACES))
    return or_replace(session, pair, blank, pick)


__all__ = [
    "PileOp",
    "PositionOp",
    "copy_pair",
    "discard_heart",
    "or_replace",
    "pile_choose",
    "pile_shifting_shuffle",
    "prove_set_membership",
    "reversible_shuffle_session",
    "select_pile",
]
