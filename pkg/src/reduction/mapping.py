"""Placement records of a reduction, serialized as a JSON sidecar."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from ..puzzle.model import Direction, Firefly, GridPoint, PuzzleInstance


class FireflyRecord(BaseModel):
    id: int
    x: int
    y: int
    dot: str
    bends: Optional[int] = None
    role: str

    @property
    def pos(self) -> GridPoint:
        return GridPoint(self.x, self.y)


class VariableGadget(BaseModel):
    """Firefly ids of one variable gadget; `one` and `two` are the control pair."""

    name: str
    anchor: int
    upper_anchor: int
    lower_anchor: int
    shaded: Dict[int, int] = Field(description="formula leg x -> shaded firefly id")
    one: int
    upper_rail: int
    lower_rail: int
    two: int
    exit: int
    upper_exit: int
    lower_exit: int


class LiteralRecord(BaseModel):
    variable: str
    leg_x: int
    firefly: int
    shaded: int
    exit_column: int
    next_hop: int = Field(description="dummy or h firefly reached by the internal route")


class ClauseGadget(BaseModel):
    index: int
    side: str
    frame: List[int]
    blockers: List[int]
    dummies: List[int]
    literals: List[LiteralRecord]


class ReductionMap(BaseModel):
    """Everything needed to rebuild the reduced instance and map witnesses."""

    scale: int
    shift_x: int
    shift_y: int
    width: int
    height: int
    formula: str
    fireflies: List[FireflyRecord]
    variables: List[VariableGadget]
    clauses: List[ClauseGadget]
    chain: List[int]

    def record(self, fid: int) -> FireflyRecord:
        return self.fireflies[fid - 1]

    def position(self, fid: int) -> GridPoint:
        return self.record(fid).pos

    def instance(self) -> PuzzleInstance:
        return PuzzleInstance(
            self.width,
            self.height,
            tuple(Firefly(r.id, r.pos, Direction(r.dot), r.bends) for r in self.fireflies),
        )

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReductionMap":
        return cls.model_validate_json(text)


def load_map(path: str) -> ReductionMap:
    with open(path, "r", encoding="utf-8") as f:
        return ReductionMap.from_json(f.read())
