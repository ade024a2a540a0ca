"""Card faces, cards, the deck ledger, pile sequences and logical pairs."""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, NamedTuple, Sequence


class Suit(Enum):
    CLUB = "C"
    SPADE = "S"
    HEART = "H"
    DIAMOND = "D"
    NUMBER = "N"


@dataclass(frozen=True)
class Face:
    """The front of a card: a pattern, or a number 1..n."""

    suit: Suit
    number: int = 0

    def __str__(self) -> str:
        if self.suit is Suit.NUMBER:
            return f"N{self.number}"
        return self.suit.value

    @classmethod
    def parse(cls, text: str) -> "Face":
        text = text.strip()
        if text[:1] == "N" and text[1:].isdigit() and int(text[1:]) >= 1:
            return cls(Suit.NUMBER, int(text[1:]))
        try:
            suit = Suit(text)
        except ValueError:
            raise ValueError(f"unknown card face {text!r}") from None
        if suit is Suit.NUMBER:
            raise ValueError(f"number face needs a value: {text!r}")
        return cls(suit)


CLUB = Face(Suit.CLUB)
SPADE = Face(Suit.SPADE)
HEART = Face(Suit.HEART)
DIAMOND = Face(Suit.DIAMOND)


def number(i: int) -> Face:
    if i < 1:
        raise ValueError(f"number cards start at 1, got {i}")
    return Face(Suit.NUMBER, i)


@dataclass(eq=False)
class Card:
    """
    A physical card. The uid tracks it across shuffles for accounting only;
    it never appears in a visible event.
    """

    uid: int
    face: Face
    face_up: bool = False

    def __repr__(self) -> str:
        side = "up" if self.face_up else "down"
        return f"Card(#{self.uid} {self.face} {side})"


Pile = List[Card]


@dataclass
class Deck:
    """Issues cards and keeps the ledger of where every card went."""

    introduced: Dict[int, Card] = field(default_factory=dict)
    discarded: List[Card] = field(default_factory=list)
    aside: List[Card] = field(default_factory=list)
    _uids: Iterator[int] = field(default_factory=lambda: itertools.count(1), repr=False)

    def new(self, face: Face, face_up: bool = False) -> Card:
        card = Card(next(self._uids), face, face_up)
        self.introduced[card.uid] = card
        return card

    def discard(self, card: Card) -> None:
        """Record a card that was shown face up and then removed."""
        self.discarded.append(card)

    def put_aside(self, cards: Iterable[Card]) -> None:
        """Record cards removed from play without being opened."""
        self.aside.extend(cards)

    def problems(self, in_play: Iterable[Card]) -> List[str]:
        """
        Check that every introduced card is accounted for exactly once.

        Args:
            in_play: Cards still on the table.

        Returns:
            List[str]: Human-readable ledger errors; empty when balanced.
        """
        issues = []
        seen: Dict[int, str] = {}
        for where, cards in (("in play", in_play), ("discarded", self.discarded), ("set aside", self.aside)):
            for card in cards:
                if card.uid not in self.introduced:
                    issues.append(f"card #{card.uid} is {where} but was never introduced")
                elif card.uid in seen:
                    issues.append(f"card #{card.uid} is both {seen[card.uid]} and {where}")
                seen.setdefault(card.uid, where)
        missing = sorted(set(self.introduced) - set(seen))
        if missing:
            issues.append(f"cards {missing} were lost")
        return issues


class PileSequence:
    """An ordered list P_0..P_{k-1} of equal-height face-down piles."""

    def __init__(self, piles: Sequence[Pile]):
        if not piles:
            raise ValueError("a pile sequence needs at least one pile")
        heights = {len(p) for p in piles}
        if len(heights) != 1:
            raise ValueError(f"piles must have equal heights, got {sorted(heights)}")
        self.piles: List[Pile] = list(piles)

    @classmethod
    def singles(cls, cards: Sequence[Card]) -> "PileSequence":
        return cls([[card] for card in cards])

    @property
    def k(self) -> int:
        return len(self.piles)

    @property
    def height(self) -> int:
        return len(self.piles[0])

    def cards(self) -> List[Card]:
        return [card for pile in self.piles for card in pile]

    def rotate(self, x: int) -> "PileSequence":
        """P_x, P_{x+1}, ..., P_{x-1}; the pile lists themselves are shared."""
        x %= self.k
        return PileSequence(self.piles[x:] + self.piles[:x])

    def index_of(self, card: Card) -> int:
        for i, pile in enumerate(self.piles):
            if any(c is card for c in pile):
                return i
        raise ValueError(f"{card!r} is not in this sequence")

    def __repr__(self) -> str:
        return f"PileSequence(k={self.k}, height={self.height})"


class MalformedPair(ValueError):
    """Two cards that are not Club-Heart or Heart-Club."""


TRUE_FACES = (CLUB, HEART)
FALSE_FACES = (HEART, CLUB)


class LogicalPair(NamedTuple):
    """Club then Heart is true, Heart then Club is false."""

    left: Card
    right: Card

    def value(self) -> bool:
        faces = (self.left.face, self.right.face)
        if faces == TRUE_FACES:
            return True
        if faces == FALSE_FACES:
            return False
        raise MalformedPair(f"pair {faces[0]},{faces[1]} is not a logical value")


__all__ = [
    "CLUB",
    "Card",
    "DIAMOND",
    "Deck",
    "FALSE_FACES",
    "Face",
    "HEART",
    "LogicalPair",
    "MalformedPair",
    "Pile",
    "PileSequence",
    "SPADE",
    "Suit",
    "TRUE_FACES",
    "number",
]
