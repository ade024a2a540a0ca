"""Per-point board state used while placing beams."""

from enum import IntEnum
from typing import Iterable

from ..puzzle.model import GridPoint, PuzzleInstance, Solution


class PointState(IntEnum):
    FREE = 0
    USED_BY_BEAM = 1
    FIREFLY_POINT = 2


class Occupancy:
    """Mutable grid of PointState; firefly points never change."""

    def __init__(self, inst: PuzzleInstance):
        self.width = inst.width
        self.height = inst.height
        self._cells = bytearray(inst.width * inst.height)
        for f in inst.fireflies:
            self._cells[self._index(f.pos)] = PointState.FIREFLY_POINT

    @classmethod
    def from_solution(cls, inst: PuzzleInstance, sol: Solution, owners: Iterable[int]) -> "Occupancy":
        """Board with the interiors of the given beams marked as used."""
        occ = cls(inst)
        for owner in owners:
            occ.mark(sol.beams[owner].interior())
        return occ

    def _index(self, p: GridPoint) -> int:
        return p.y * self.width + p.x

    def state(self, p: GridPoint) -> PointState:
        return PointState(self._cells[self._index(p)])

    def is_free(self, p: GridPoint) -> bool:
        return self._cells[self._index(p)] == PointState.FREE

    def mark(self, points: Iterable[GridPoint]) -> None:
        for p in points:
            i = self._index(p)
            if self._cells[i] != PointState.FREE:
                raise ValueError(f"point {p} is not free")
            self._cells[i] = PointState.USED_BY_BEAM

    def release(self, points: Iterable[GridPoint]) -> None:
        for p in points:
            i = self._index(p)
            if self._cells[i] != PointState.USED_BY_BEAM:
                raise ValueError(f"point {p} is not used by a beam")
            self._cells[i] = PointState.FREE

    def copy(self) -> "Occupancy":
        clone = Occupancy.__new__(Occupancy)
        clone.width, clone.height = self.width, self.height
        clone._cells = bytearray(self._cells)
        return clone
