"""Mask sequences that stamp a straight segment onto a line of the board."""

import enum
import logging
from typing import Callable, List, Optional, Sequence

from ..cards import (
    CLUB,
    DIAMOND,
    HEART,
    Card,
    CardSession,
    Check,
    EventKind,
    Expect,
    PileSequence,
    pile_shifting_shuffle,
    prove_set_membership,
)

logger = logging.getLogger(__name__)

# Picks the Heart the prover discards, given the k kept cards (shuffled, face
# down) and the index of the revealed Diamond among them.
HeartPick = Callable[[Sequence[Card], int], int]


class SegmentVariant(enum.Flag):
    """How a step of a beam is embedded; combinations describe hidden steps."""

    BASIC = 0
    HIDDEN = enum.auto()
    ALLOW_ZERO = enum.auto()
    FINAL = enum.auto()
    LANDING = enum.auto()


def honest_heart(cards: Sequence[Card], diamond: int) -> int:
    """The Heart just before the run of Clubs that ends at the Diamond."""
    k = len(cards)
    i = (diamond - 1) % k
    while cards[i].face == CLUB:
        i = (i - 1) % k
    return i


def mirror(mask: Sequence[Card]) -> List[Card]:
    """The same mask read leftward: the marker stays at index 0."""
    return [mask[0]] + list(mask[:0:-1])


def zero_mask(session: CardSession, k: int) -> List[Card]:
    """A Diamond marker and k-1 Hearts, laid out in the open."""
    return session.new_cards([DIAMOND] + [HEART] * (k - 1))


def basic_mask(session: CardSession, k: int, length: int, heart_pick: Optional[HeartPick] = None) -> List[Card]:
    """
    Build a hidden rightward mask for a segment of the given length.

    Vera lays out k-1 Clubs, one Diamond and k-1 Hearts. The prover cuts the
    cyclic sequence so that the Diamond lands `length` places after its start,
    keeps k cards and shows that exactly one Heart before the Club run is
    replaced by a marker.

    The marker is a fresh Club: once stamped, the start point reads as occupied
    and the only Diamond on the line is the segment's end.

    Returns:
        k face-down cards: marker, length-1 Clubs, the Diamond, then Hearts.

    Raises:
        ValueError: If length is not in 1..k-1.
    """
    if not 1 <= length <= k - 1:
        raise ValueError(f"segment length {length} out of range for a line of {k} cards")
    heart_pick = heart_pick or honest_heart

    with session.scope("build_mask"):
        cards = session.new_cards([CLUB] * (k - 1) + [DIAMOND] + [HEART] * (k - 1))
        diamond = cards[k - 1]
        shuffled, _ = pile_shifting_shuffle(session, PileSequence.singles(cards))
        size = 2 * k - 1
        at = session.pick(EventKind.PILES_SHIFTED, (shuffled.index_of(diamond) - (length - 1)) % size, size)
        cut = shuffled.rotate(at)
        kept = [pile[0] for pile in cut.piles[:k]]
        session.set_aside([pile[0] for pile in cut.piles[k:]])

        shuffled, _ = pile_shifting_shuffle(session, PileSequence.singles(kept))
        wanted = next((i for i, pile in enumerate(shuffled.piles) if pile[0] is diamond), 0)
        d_index = session.pick(EventKind.PILE_PICKED, wanted, k)
        session.reveal([shuffled.piles[d_index][0]], Expect.exactly([DIAMOND]), Check.MASK_DIAMOND)

        shuffled, _ = pile_shifting_shuffle(session, shuffled)
        order = [pile[0] for pile in shuffled.piles]
        d_index = next((i for i, card in enumerate(order) if card is diamond), 0)
        h_index = session.pick(EventKind.PILE_PICKED, heart_pick(order, d_index) % k, k)
        session.discard(order[h_index], HEART, Check.MASK_HEART)
        order[h_index] = session.new_cards([CLUB])[0]

        following = (h_index + 1) % k
        order[following] = prove_set_membership(session, order[following], [CLUB, DIAMOND])
        return order[h_index:] + order[:h_index]


def build_mask(
    session: CardSession,
    k: int,
    length: int,
    variant: SegmentVariant = SegmentVariant.BASIC,
    heart_pick: Optional[HeartPick] = None,
) -> List[Card]:
    """
    Mask for a segment of `length` steps on a line of k cards.

    A final segment ends on a firefly instead of a Diamond, so its mask is one
    step longer. With ALLOW_ZERO a zero length gives the public zero mask.
    """
    if SegmentVariant.FINAL in variant:
        return basic_mask(session, k, length + 1, heart_pick)
    if length == 0 and SegmentVariant.ALLOW_ZERO in variant:
        return zero_mask(session, k)
    return basic_mask(session, k, length, heart_pick)


__all__ = ["HeartPick", "SegmentVariant", "basic_mask", "build_mask", "honest_heart", "mirror", "zero_mask"]
