"""Hotaru Beam instances, beam paths and solutions."""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple


class GridPoint(NamedTuple):
    """Grid intersection; origin bottom-left, x rightward, y upward."""

    x: int
    y: int

    def step(self, direction: "Direction", distance: int = 1) -> "GridPoint":
        return GridPoint(
            self.x + direction.dx * distance, self.y + direction.dy * distance
        )

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


_DELTAS = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}
_OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E"}


class Direction(Enum):
    """Dot direction of a firefly, also used for beam steps."""

    NORTH = "N"
    EAST = "E"
    SOUTH = "S"
    WEST = "W"

    @property
    def dx(self) -> int:
        return _DELTAS[self.value][0]

    @property
    def dy(self) -> int:
        return _DELTAS[self.value][1]

    @property
    def opposite(self) -> "Direction":
        return Direction(_OPPOSITE[self.value])

    @property
    def horizontal(self) -> bool:
        return self.dy == 0

    def turns(self) -> Tuple["Direction", "Direction"]:
        """The two perpendicular directions."""
        if self.horizontal:
            return (Direction.NORTH, Direction.SOUTH)
        return (Direction.EAST, Direction.WEST)

    @classmethod
    def between(cls, a: GridPoint, b: GridPoint) -> "Direction":
        """Unit direction from a to b; the points must share exactly one axis."""
        dx, dy = b.x - a.x, b.y - a.y
        if (dx == 0) == (dy == 0):
            raise ValueError(f"{a} and {b} are not axis-aligned and distinct")
        if dx:
            return cls.EAST if dx > 0 else cls.WEST
        return cls.NORTH if dy > 0 else cls.SOUTH


@dataclass(frozen=True)
class Firefly:
    """A circle on a grid point, its dot, and an optional prescribed bend count."""

    id: int
    pos: GridPoint
    dot: Direction
    bends: Optional[int] = None

    @property
    def numbered(self) -> bool:
        return self.bends is not None

    @property
    def dot_point(self) -> GridPoint:
        """The grid point the beam enters first."""
        return self.pos.step(self.dot)


@dataclass(frozen=True)
class PuzzleInstance:
    """A w×h grid of points with fireflies numbered 1..n."""

    width: int
    height: int
    fireflies: Tuple[Firefly, ...]

    @property
    def n(self) -> int:
        return len(self.fireflies)

    @cached_property
    def _by_id(self) -> Dict[int, Firefly]:
        return {f.id: f for f in self.fireflies}

    @cached_property
    def _by_pos(self) -> Dict[GridPoint, Firefly]:
        return {f.pos: f for f in self.fireflies}

    def firefly(self, fid: int) -> Firefly:
        try:
            return self._by_id[fid]
        except KeyError:
            raise ValueError(f"No firefly with id {fid} (n={self.n})") from None

    def firefly_at(self, point: GridPoint) -> Optional[Firefly]:
        return self._by_pos.get(point)

    def in_bounds(self, point: GridPoint) -> bool:
        return 0 <= point.x < self.width and 0 <= point.y < self.height

    def points(self) -> Iterator[GridPoint]:
        for y in range(self.height):
            for x in range(self.width):
                yield GridPoint(x, y)

    def problems(self) -> List[str]:
        """Semantic problems of the instance; empty when well formed."""
        issues: List[str] = []
        if self.width < 1 or self.height < 1:
            issues.append(f"grid must be at least 1x1, got {self.width}x{self.height}")
        if not self.fireflies:
            issues.append("instance has no fireflies")
        ids = sorted(f.id for f in self.fireflies)
        if ids != list(range(1, len(ids) + 1)):
            issues.append(f"firefly ids must be exactly 1..{len(ids)}, got {ids}")
        seen: Dict[GridPoint, int] = {}
        for f in self.fireflies:
            if not self.in_bounds(f.pos):
                issues.append(f"firefly {f.id} at {f.pos} is off the board")
            elif not self.in_bounds(f.dot_point):
                issues.append(f"firefly {f.id} dot {f.dot.value} points off the board")
            if f.pos in seen:
                issues.append(
                    f"fireflies {seen[f.pos]} and {f.id} share the point {f.pos}"
                )
            seen.setdefault(f.pos, f.id)
            if f.bends is not None and f.bends < 0:
                issues.append(f"firefly {f.id} has negative bend count {f.bends}")
        return issues


@dataclass(frozen=True)
class BeamPath:
    """A rectilinear polyline: start, every corner, then the end point."""

    owner: int
    vertices: Tuple[GridPoint, ...]

    @property
    def start(self) -> GridPoint:
        return self.vertices[0]

    @property
    def end(self) -> GridPoint:
        return self.vertices[-1]

    def segments(self) -> List[Tuple[Direction, int]]:
        """(direction, length) of every straight piece."""
        pieces = []
        for a, b in zip(self.vertices, self.vertices[1:]):
            pieces.append((Direction.between(a, b), abs(b.x - a.x) + abs(b.y - a.y)))
        return pieces

    def points(self) -> List[GridPoint]:
        """Every grid point visited, unit step by unit step, both ends included."""
        path = [self.vertices[0]]
        for direction, length in self.segments():
            for _ in range(length):
                path.append(path[-1].step(direction))
        return path

    def interior(self) -> List[GridPoint]:
        return self.points()[1:-1]


@dataclass
class Solution:
    """One beam per firefly, keyed by owner id."""

    beams: Dict[int, BeamPath] = field(default_factory=dict)

    def edges(self, inst: PuzzleInstance) -> List[Tuple[int, int]]:
        """(s, t) for every beam that ends on a firefly."""
        pairs = []
        for owner in sorted(self.beams):
            target = inst.firefly_at(self.beams[owner].end)
            if target is not None:
                pairs.append((owner, target.id))
        return pairs


class ViolationKind(Enum):
    OFF_BOARD = "OffBoard"
    WRONG_START_DIRECTION = "WrongStartDirection"
    PASSES_THROUGH_FIREFLY = "PassesThroughFirefly"
    SELF_INTERSECT = "SelfIntersect"
    BEAMS_INTERSECT = "BeamsIntersect"
    ENDS_AT_DOT = "EndsAtDot"
    BEND_MISMATCH = "BendMismatch"
    DISCONNECTED = "Disconnected"
    MISSING_BEAM = "MissingBeam"
    BRANCH_OR_MALFORMED = "BranchOrMalformed"


@dataclass(frozen=True)
class Violation:
    """One broken rule, with the fireflies and point involved."""

    kind: ViolationKind
    fireflies: Tuple[int, ...] = ()
    point: Optional[GridPoint] = None
    detail: str = ""

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        result = {"kind": self.kind.value, "fireflies": list(self.fireflies)}
        if self.point is not None:
            result["point"] = [self.point.x, self.point.y]
        if self.detail:
            result["detail"] = self.detail
        return result

    def __str__(self) -> str:
        where = f" at {self.point}" if self.point is not None else ""
        ids = ",".join(str(i) for i in self.fireflies)
        return f"{self.kind.value} [{ids}]{where}: {self.detail}".rstrip(": ")


def relabel_fireflies(
    inst: PuzzleInstance, order: Sequence[int]
) -> Tuple[PuzzleInstance, Dict[int, int]]:
    """
    Renumber fireflies so that order[k] becomes id k+1.

    Returns:
        The relabelled instance and the old-id to new-id mapping.
    """
    if sorted(order) != list(range(1, inst.n + 1)):
        raise ValueError(f"order must be a permutation of 1..{inst.n}, got {list(order)}")
    mapping = {old: new for new, old in enumerate(order, start=1)}
    fireflies = tuple(
        Firefly(mapping[f.id], f.pos, f.dot, f.bends)
        for f in sorted(inst.fireflies, key=lambda f: mapping[f.id])
    )
    return PuzzleInstance(inst.width, inst.height, fireflies), mapping


def relabel_solution(sol: Solution, mapping: Dict[int, int]) -> Solution:
    return Solution(
        {mapping[owner]: BeamPath(mapping[owner], beam.vertices) for owner, beam in sol.beams.items()}
    )
