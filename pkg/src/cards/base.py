"""Abstract base class for shuffle randomness."""

from abc import ABC, abstractmethod
from typing import Optional


class TapeExhausted(RuntimeError):
    """An enumerated tape has no offsets left."""


class RandomTape(ABC):
    """Abstract source of pile-shifting offsets shared by every shuffle of one run."""

    seed: Optional[int] = None

    def __init__(self):
        self.position = 0

    def draw(self, k: int) -> int:
        """
        Return the offset for a pile-shifting shuffle of k piles.

        Args:
            k: Number of piles being shuffled.

        Returns:
            int: A value in range(k).

        Raises:
            ValueError: If k < 1 or the tape holds an out-of-range offset.
            TapeExhausted: If the tape has no more offsets.
        """
        if k < 1:
            raise ValueError(f"cannot shuffle {k} piles")
        value = self._next(k)
        self.position += 1
        return value

    @abstractmethod
    def _next(self, k: int) -> int:
        """
        Produce the next raw offset.

        Args:
            k: Number of piles being shuffled.

        Returns:
            int: A value in range(k).
        """
        pass
