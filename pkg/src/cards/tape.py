"""Seeded and enumerated tapes."""

import itertools
import logging
import random
import secrets
from typing import Iterator, List, Optional, Sequence

from ..config import config
from .base import RandomTape, TapeExhausted

logger = logging.getLogger(__name__)


class SeededTape(RandomTape):
    """Uniform offsets from a seeded Mersenne Twister."""

    def __init__(self, seed: int):
        super().__init__()
        self.seed = seed
        self._rng = random.Random(seed)

    def _next(self, k: int) -> int:
        return self._rng.randrange(k)


class EnumeratedTape(RandomTape):
    """An explicit, finite list of offsets."""

    def __init__(self, values: Sequence[int]):
        super().__init__()
        self.values: List[int] = list(values)

    def _next(self, k: int) -> int:
        if self.position >= len(self.values):
            raise TapeExhausted(f"tape exhausted after {len(self.values)} draws")
        value = self.values[self.position]
        if not 0 <= value < k:
            raise ValueError(
                f"offset {value} at draw {self.position} is out of range for {k} piles"
            )
        return value


def enumerate_tapes(sizes: Sequence[int], prefix: Sequence[int] = ()) -> Iterator[EnumeratedTape]:
    """
    Every tape whose draws have the given pile counts, in lexicographic order.

    Args:
        sizes: Pile count of each draw.
        prefix: Fixed offsets placed before the enumerated ones.
    """
    for values in itertools.product(*(range(k) for k in sizes)):
        yield EnumeratedTape(list(prefix) + list(values))


def get_tape(seed: Optional[int] = None, entropy: bool = False) -> SeededTape:
    """
    Get the tape for a protocol run.

    Args:
        seed: Explicit seed; defaults to the configured seed.
        entropy: Draw a fresh 64-bit seed from the OS instead.

    Returns:
        SeededTape: The tape, whose seed is recorded in transcripts.
    """
    if entropy:
        seed = secrets.randbits(64)
        logger.info(f"Using entropy seed {seed}")
    elif seed is None:
        seed = config.get_seed()
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return SeededTape(seed)


__all__ = ["EnumeratedTape", "SeededTape", "TapeExhausted", "enumerate_tapes", "get_tape"]
