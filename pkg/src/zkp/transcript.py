"""Transcript text: header, numbered events and the verdict."""

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from ..cards import VisibleEvent, parse_lines
from ..puzzle.fileio import serialize_instance
from ..puzzle.model import PuzzleInstance

MAGIC = "TRANSCRIPT v1"


class Verdict(Enum):
    ACCEPT = "Accept"
    REJECT = "Reject"


class TranscriptFormatError(ValueError):
    """Raised when transcript text cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def instance_digest(inst: PuzzleInstance) -> str:
    """SHA-256 of the canonical instance text, binding a transcript to its instance."""
    return hashlib.sha256(serialize_instance(inst).encode("utf-8")).hexdigest()


@dataclass
class Transcript:
    seed: Optional[int]
    instance: str
    events: List[VisibleEvent] = field(default_factory=list)
    verdict: Verdict = Verdict.REJECT

    def render(self) -> str:
        lines = [MAGIC, f"seed {self.seed if self.seed is not None else 'none'}", f"instance {self.instance}"]
        lines += [f"{seq} {event.render()}" for seq, event in enumerate(self.events, start=1)]
        lines.append(f"VERDICT {self.verdict.value}")
        return "\n".join(lines) + "\n"


def parse_transcript(text: str) -> Transcript:
    """
    Parse rendered transcript text.

    Raises:
        TranscriptFormatError: On a bad header, event line or verdict.
    """
    lines = text.splitlines()
    if len(lines) < 4:
        raise TranscriptFormatError("transcript needs a header, an instance line and a verdict")
    if lines[0].strip() != MAGIC:
        raise TranscriptFormatError(f"expected {MAGIC!r}", 1)

    name, _, value = lines[1].strip().partition(" ")
    if name != "seed" or not (value == "none" or value.isdigit()):
        raise TranscriptFormatError("expected 'seed <number>' or 'seed none'", 2)
    seed = None if value == "none" else int(value)

    name, _, digest = lines[2].strip().partition(" ")
    if name != "instance" or len(digest) != 64:
        raise TranscriptFormatError("expected 'instance <sha256>'", 3)

    name, _, verdict = lines[-1].strip().partition(" ")
    try:
        if name != "VERDICT":
            raise ValueError(name)
        outcome = Verdict(verdict)
    except ValueError:
        raise TranscriptFormatError("expected 'VERDICT Accept' or 'VERDICT Reject'", len(lines)) from None

    try:
        events = parse_lines(lines[3:-1])
    except ValueError as e:
        raise TranscriptFormatError(str(e)) from None
    return Transcript(seed, digest, events, outcome)


def load_transcript(path: str) -> Transcript:
    with open(path, encoding="utf-8") as f:
        return parse_transcript(f.read())


__all__ = ["MAGIC", "Transcript", "TranscriptFormatError", "Verdict", "instance_digest", "load_transcript", "parse_transcript"]
