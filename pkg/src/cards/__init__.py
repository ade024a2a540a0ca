"""Card model and card-based protocol primitives."""

from .base import RandomTape, TapeExhausted
from .events import Check, CheckFailedError, EventKind, EventLog, VisibleEvent, parse_lines
from .model import (
    CLUB,
    DIAMOND,
    FALSE_FACES,
    HEART,
    SPADE,
    TRUE_FACES,
    Card,
    Deck,
    Face,
    LogicalPair,
    MalformedPair,
    Pile,
    PileSequence,
    Suit,
    number,
)
from .protocols import (
    copy_pair,
    discard_heart,
    or_replace,
    pile_choose,
    pile_shifting_shuffle,
    prove_set_membership,
    reversible_shuffle_session,
    select_pile,
)
from .session import CardSession, Draw, Expect, ReplayMismatch, SessionMode
from .tape import EnumeratedTape, SeededTape, enumerate_tapes, get_tape

__all__ = [
    "CLUB",
    "Card",
    "CardSession",
    "Check",
    "CheckFailedError",
    "DIAMOND",
    "Deck",
    "Draw",
    "EnumeratedTape",
    "EventKind",
    "EventLog",
    "Expect",
    "FALSE_FACES",
    "Face",
    "HEART",
    "LogicalPair",
    "MalformedPair",
    "Pile",
    "PileSequence",
    "RandomTape",
    "ReplayMismatch",
    "SPADE",
    "SeededTape",
    "SessionMode",
    "Suit",
    "TRUE_FACES",
    "TapeExhausted",
    "VisibleEvent",
    "copy_pair",
    "discard_heart",
    "enumerate_tapes",
    "get_tape",
    "number",
    "or_replace",
    "parse_lines",
    "pile_choose",
    "pile_shifting_shuffle",
    "prove_set_membership",
    "reversible_shuffle_session",
    "select_pile",
]
