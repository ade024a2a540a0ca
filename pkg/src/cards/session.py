"""A protocol run between the prover and Vera: tape, deck ledger and event log."""

import logging
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, NamedTuple, NoReturn, Optional, Sequence, Tuple

from .base import RandomTape
from .events import Check, CheckFailedError, EventKind, EventLog, VisibleEvent, format_value
from .model import Card, Deck, Face

logger = logging.getLogger(__name__)


class SessionMode(Enum):
    LIVE = "live"
    # The prover holds no witness; reveals Vera must accept show what she expects.
    SIMULATED = "simulated"
    # Prover decisions and hidden faces are read back from a recorded run.
    REPLAY = "replay"


class ReplayMismatch(ValueError):
    """A re-executed run diverged from the recorded events."""

    def __init__(self, seq: int, message: str):
        super().__init__(f"event {seq}: {message}")
        self.seq = seq


class Draw(NamedTuple):
    k: int
    value: int
    scope: int


@dataclass(frozen=True)
class Expect:
    """What a reveal must show for Vera to continue."""

    options: Tuple[Tuple[Face, ...], ...]
    multiset: bool = False

    @classmethod
    def exactly(cls, faces: Sequence[Face]) -> "Expect":
        return cls((tuple(faces),))

    @classmethod
    def one_of(cls, *options: Sequence[Face]) -> "Expect":
        return cls(tuple(tuple(o) for o in options))

    @classmethod
    def multiset_of(cls, faces: Sequence[Face]) -> "Expect":
        return cls((tuple(faces),), multiset=True)

    def accepts(self, faces: Sequence[Face]) -> bool:
        if self.multiset:
            return Counter(faces) == Counter(self.options[0])
        return tuple(faces) in self.options

    def describe(self) -> str:
        text = "|".join(format_value(list(o)) for o in self.options)
        return f"perm({text})" if self.multiset else text

    def stand_in(self) -> Tuple[Face, ...]:
        return self.options[0]


class CardSession:
    """
    State shared by every primitive of one run.

    Draws and events are tagged with the innermost open scope, which lets tests
    enumerate the offsets of a single primitive while the rest of the run is
    held fixed.
    """

    def __init__(
        self,
        tape: RandomTape,
        mode: SessionMode = SessionMode.LIVE,
        recorded: Sequence[VisibleEvent] = (),
    ):
        self.tape = tape
        self.mode = mode
        self.recorded: List[VisibleEvent] = list(recorded)
        self.deck = Deck()
        self.log = EventLog()
        self.draws: List[Draw] = []
        self.scope_names: Dict[int, str] = {0: "run"}
        self._stack: List[int] = [0]

    @property
    def scope_id(self) -> int:
        return self._stack[-1]

    @contextmanager
    def scope(self, name: str) -> Iterator[int]:
        scope_id = len(self.scope_names)
        self.scope_names[scope_id] = name
        self._stack.append(scope_id)
        try:
            yield scope_id
        finally:
            self._stack.pop()

    def draw(self, k: int) -> int:
        """Offset for a k-pile shuffle; a single pile consumes no randomness."""
        if k == 1:
            return 0
        value = self.tape.draw(k)
        self.draws.append(Draw(k, value, self.scope_id))
        return value

    # -- events -------------------------------------------------------------

    def _recorded_next(self) -> VisibleEvent:
        index = len(self.log)
        if index >= len(self.recorded):
            raise ReplayMismatch(index + 1, "recorded run ends here")
        return self.recorded[index]

    def emit(self, kind: EventKind, **params: Any) -> VisibleEvent:
        event = VisibleEvent.make(kind, **params)
        if self.mode is SessionMode.REPLAY:
            expected = self._recorded_next()
            if expected != event:
                raise ReplayMismatch(len(self.log) + 1, f"recorded {expected.render()!r}, replay produced {event.render()!r}")
        self.log.append(event, self.scope_id)
        return event

    def declare(self, kind: EventKind, chosen: Sequence[str], **params: Any) -> VisibleEvent:
        """
        Emit an event whose `chosen` parameters are the prover's to decide.

        In replay mode those parameters are taken from the record; everything
        else must match it.
        """
        if self.mode is not SessionMode.REPLAY:
            return self.emit(kind, **params)
        event = self._recorded_next()
        mine = VisibleEvent.make(kind, **params)
        seq = len(self.log) + 1
        if event.kind is not kind or event.keys() != mine.keys():
            raise ReplayMismatch(seq, f"recorded {event.render()!r}, expected a {kind.value} event")
        for name, value in mine.params:
            if name not in chosen and event.get(name) != value:
                raise ReplayMismatch(seq, f"recorded {name}={event.get(name)}, replay has {value}")
        self.log.append(event, self.scope_id)
        return event

    def pick(self, kind: EventKind, wanted: int, of: int, **params: Any) -> int:
        """A prover-chosen position in range(of), announced as at=<pos> of=<of>."""
        if not 0 <= wanted < of:
            raise ValueError(f"position {wanted} out of range for {of} piles")
        event = self.declare(kind, ("at",), at=wanted, of=of, **params)
        at = event.get("at")
        if not at.isdigit() or int(at) >= of:
            raise ReplayMismatch(len(self.log), f"position {at} out of range for {of} piles")
        return int(at)

    def reveal(
        self,
        cards: Sequence[Card],
        expect: Expect,
        check: Check,
        kind: Optional[EventKind] = None,
        trusted: bool = False,
        **params: Any,
    ) -> List[Face]:
        """
        Turn cards face up, emit what Vera sees, and fail the run when she
        does not accept it.

        Trusted reveals show Vera's own cards, so even a replay or a simulator
        reproduces them from the card state.
        """
        if kind is None:
            kind = EventKind.CARD_REVEALED if len(cards) == 1 else EventKind.CARDS_REVEALED
        key = "face" if kind in (EventKind.CARD_REVEALED, EventKind.CARD_DISCARDED_VERIFIED) else "faces"
        actual = [card.face for card in cards]
        if trusted or self.mode is SessionMode.LIVE:
            shown = actual
        elif self.mode is SessionMode.SIMULATED:
            shown = actual if expect.accepts(actual) else list(expect.stand_in())
        else:
            event = self._recorded_next()
            if event.kind not in (kind, EventKind.CHECK_FAILED):
                raise ReplayMismatch(len(self.log) + 1, f"recorded {event.render()!r}, expected a {kind.value} event")
            try:
                shown = event.faces(key) if event.kind is kind else event.faces("revealed")
            except (KeyError, ValueError) as e:
                raise ReplayMismatch(len(self.log) + 1, str(e)) from None
            if len(shown) != len(cards):
                raise ReplayMismatch(len(self.log) + 1, f"recorded {len(shown)} faces for {len(cards)} cards")
        if not expect.accepts(shown):
            self.fail(check, expect.describe(), shown)
        self.emit(kind, **params, **{key: shown})
        return shown

    def fail(self, check: Check, expected: str, revealed: Sequence[Any]) -> NoReturn:
        event = self.emit(EventKind.CHECK_FAILED, check=check, expected=expected, revealed=list(revealed))
        logger.debug("check %s failed: expected %s, revealed %s", check.value, expected, format_value(list(revealed)))
        raise CheckFailedError(event)

    # -- cards ----------------------------------------------------------------

    def new_cards(
        self, faces: Sequence[Face], kind: EventKind = EventKind.LAYOUT_CONFIRMED, **params: Any
    ) -> List[Card]:
        """Lay out fresh cards face up for Vera to confirm, then turn them down."""
        cards = [self.deck.new(face, face_up=True) for face in faces]
        if cards:
            self.emit(kind, **params, faces=list(faces))
        for card in cards:
            card.face_up = False
        return cards

    def discard(self, card: Card, expected: Face, check: Check) -> None:
        """Open a card, check its face and remove it from play."""
        self.reveal([card], Expect.exactly([expected]), check, kind=EventKind.CARD_DISCARDED_VERIFIED)
        self.deck.discard(card)

    def retire(self, cards: Sequence[Card]) -> None:
        """Remove cards whose faces Vera has already seen."""
        for card in cards:
            self.deck.discard(card)

    def set_aside(self, cards: Sequence[Card]) -> None:
        """Remove cards from play unopened."""
        if cards:
            self.emit(EventKind.CARDS_SET_ASIDE, count=len(cards))
            self.deck.put_aside(cards)


__all__ = ["CardSession", "Draw", "Expect", "ReplayMismatch", "SessionMode"]
