"""Verifier-visible events and the ordered event log."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, List, Optional, Sequence, Tuple

from .model import Face


class EventKind(Enum):
    LAYOUT_CONFIRMED = "LayoutConfirmed"
    MARKERS_PLACED = "MarkersPlaced"
    SHUFFLE_APPLIED = "ShuffleApplied"
    PILE_PICKED = "PilePicked"
    PILES_SHIFTED = "PilesShifted"
    CARD_REVEALED = "CardRevealed"
    CARDS_REVEALED = "CardsRevealed"
    TOPS_REVEALED = "TopsRevealed"
    CARD_DISCARDED_VERIFIED = "CardDiscardedVerified"
    CARDS_SET_ASIDE = "CardsSetAside"
    BEAM_STARTED = "BeamStarted"
    SEGMENT_STARTED = "SegmentStarted"
    DIRECTION_DECLARED = "DirectionDeclared"
    MERGE_STARTED = "MergeStarted"
    CHECK_FAILED = "CheckFailed"


class Check(Enum):
    """Verifier checks that can fail; the value is what CheckFailed reports."""

    START_DIRECTION = "StartDirection"
    SEGMENT_COUNT = "SegmentCount"
    HEART_DISCARD = "HeartDiscard"
    MASK_DIAMOND = "MaskDiamond"
    MASK_HEART = "MaskHeart"
    SET_MEMBERSHIP = "SetMembership"
    TARGET_MARKER = "TargetMarker"
    HEADER_CONFIRM = "HeaderConfirm"
    PUBLIC_BEAM = "PublicBeam"
    MERGE_ROW = "MergeRow"
    FINAL_TABLE = "FinalTable"
    LOGICAL_PAIR = "LogicalPair"


def format_value(value: Any) -> str:
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


@dataclass(frozen=True)
class VisibleEvent:
    """
    One message Vera sees. Parameters are already rendered to strings, so a
    hidden face or a uid can only get in by being passed explicitly.
    """

    kind: EventKind
    params: Tuple[Tuple[str, str], ...] = ()

    @classmethod
    def make(cls, kind: EventKind, **params: Any) -> "VisibleEvent":
        for key in params:
            if " " in key or "=" in key:
                raise ValueError(f"invalid event parameter name {key!r}")
        rendered = tuple((key, format_value(value)) for key, value in params.items())
        for key, text in rendered:
            if not text or " " in text:
                raise ValueError(f"event parameter {key}={text!r} must be a non-empty token")
        return cls(kind, rendered)

    def get(self, key: str) -> Optional[str]:
        for name, value in self.params:
            if name == key:
                return value
        return None

    def get_int(self, key: str) -> int:
        value = self.get(key)
        if value is None:
            raise KeyError(f"{self.kind.value} has no parameter {key!r}")
        return int(value)

    def faces(self, key: str = "faces") -> List[Face]:
        value = self.get(key)
        if value is None:
            raise KeyError(f"{self.kind.value} has no parameter {key!r}")
        return [Face.parse(part) for part in value.split(",")]

    def keys(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.params)

    def render(self) -> str:
        parts = [self.kind.value] + [f"{name}={value}" for name, value in self.params]
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "VisibleEvent":
        """Parse the output of render(); raises ValueError on bad input."""
        tokens = text.split()
        if not tokens:
            raise ValueError("empty event")
        try:
            kind = EventKind(tokens[0])
        except ValueError:
            raise ValueError(f"unknown event kind {tokens[0]!r}") from None
        params = []
        for token in tokens[1:]:
            name, sep, value = token.partition("=")
            if not sep or not name or not value:
                raise ValueError(f"malformed event parameter {token!r}")
            params.append((name, value))
        return cls(kind, tuple(params))

    def __str__(self) -> str:
        return self.render()


class CheckFailedError(Exception):
    """Raised internally to abort a run once Vera has rejected."""

    def __init__(self, event: VisibleEvent):
        super().__init__(event.render())
        self.event = event


class EventLog:
    """Ordered events, each tagged with the protocol scope that emitted it."""

    def __init__(self):
        self.events: List[VisibleEvent] = []
        self.scopes: List[int] = []

    def append(self, event: VisibleEvent, scope: int = 0) -> None:
        self.events.append(event)
        self.scopes.append(scope)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __getitem__(self, index: int) -> VisibleEvent:
        return self.events[index]

    def lines(self) -> List[str]:
        return [f"{seq} {event.render()}" for seq, event in enumerate(self.events, start=1)]

    def kinds(self) -> List[EventKind]:
        return [event.kind for event in self.events]

    def in_scope(self, scope: int) -> List[VisibleEvent]:
        return [e for e, s in zip(self.events, self.scopes) if s == scope]

    def failure(self) -> Optional[VisibleEvent]:
        for event in self.events:
            if event.kind is EventKind.CHECK_FAILED:
                return event
        return None


def parse_lines(lines: Sequence[str]) -> List[VisibleEvent]:
    """
    Parse numbered event lines; sequence numbers must run 1, 2, 3, ...

    Raises:
        ValueError: On a malformed line or a gap in the numbering.
    """
    events = []
    for expected, line in enumerate(lines, start=1):
        seq, _, rest = line.strip().partition(" ")
        if not seq.isdigit() or int(seq) != expected:
            raise ValueError(f"expected event number {expected}, got {seq!r}")
        events.append(VisibleEvent.parse(rest))
    return events


__all__ = [
    "Check",
    "CheckFailedError",
    "EventKind",
    "EventLog",
    "VisibleEvent",
    "format_value",
    "parse_lines",
]
