"""Rule checking for Hotaru Beam solutions."""

from typing import Dict, FrozenSet, Iterable, List, Tuple, Union

from ..utils.disjoint_set import DisjointSet
from .model import (
    BeamPath,
    Direction,
    GridPoint,
    PuzzleInstance,
    Solution,
    Violation,
    ViolationKind,
)


def bend_count(path: BeamPath) -> int:
    """Number of direction changes of a well-formed beam."""
    return max(len(path.vertices) - 2, 0)


def connected_components(
    inst: Union[PuzzleInstance, int], edges: Iterable[Tuple[int, int]]
) -> List[FrozenSet[int]]:
    """
    Partition firefly ids 1..n by the given (s, t) edges.

    Returns:
        Components sorted by their smallest id.

    Raises:
        ValueError: If an edge names an id outside 1..n.
    """
    n = inst if isinstance(inst, int) else inst.n
    ds = DisjointSet(range(1, n + 1))
    for s, t in edges:
        for fid in (s, t):
            if not 1 <= fid <= n:
                raise ValueError(f"firefly id {fid} out of range 1..{n}")
        ds.union(s, t)
    return sorted((frozenset(group) for group in ds.get_sets()), key=min)


def _shape_violations(inst: PuzzleInstance, beam: BeamPath) -> Tuple[bool, List[Violation]]:
    """Shape checks; the flag is set when the beam cannot be expanded point by point."""
    owner = beam.owner
    if len(beam.vertices) < 2:
        return True, [Violation(ViolationKind.BRANCH_OR_MALFORMED, (owner,), None, "beam needs at least two vertices")]
    for v in beam.vertices:
        if not inst.in_bounds(v):
            return True, [Violation(ViolationKind.OFF_BOARD, (owner,), v, "vertex outside the grid")]
    for a, b in zip(beam.vertices, beam.vertices[1:]):
        if (a.x == b.x) == (a.y == b.y):
            return True, [Violation(ViolationKind.BRANCH_OR_MALFORMED, (owner,), b, f"{a}->{b} is not an axis-aligned step")]
    found = []
    directions = [d for d, _ in beam.segments()]
    for corner, (d1, d2) in zip(beam.vertices[1:], zip(directions, directions[1:])):
        if d1.horizontal == d2.horizontal:
            found.append(Violation(ViolationKind.BRANCH_OR_MALFORMED, (owner,), corner, "collinear interior vertex"))
    return False, found


def validate_solution(inst: PuzzleInstance, sol: Solution) -> List[Violation]:
    """
    Check a solution against every rule of the puzzle.

    Returns:
        All violations found; an empty list means sol is a solution.
    """
    violations: List[Violation] = []
    users: Dict[GridPoint, List[int]] = {}
    edges: List[Tuple[int, int]] = []

    for owner in sorted(sol.beams):
        beam = sol.beams[owner]
        if not 1 <= owner <= inst.n:
            violations.append(Violation(ViolationKind.BRANCH_OR_MALFORMED, (owner,), None, "beam for an unknown firefly"))
            continue
        fatal, shape = _shape_violations(inst, beam)
        violations.extend(shape)
        if fatal:
            continue

        source = inst.firefly(owner)
        if beam.start != source.pos:
            violations.append(Violation(ViolationKind.BRANCH_OR_MALFORMED, (owner,), beam.start, f"beam must start at {source.pos}"))
            continue
        if Direction.between(beam.vertices[0], beam.vertices[1]) != source.dot:
            violations.append(Violation(ViolationKind.WRONG_START_DIRECTION, (owner,), beam.start, f"dot points {source.dot.value}"))

        points = beam.points()
        seen = set()
        for p in points[1:-1]:
            other = inst.firefly_at(p)
            if other is not None:
                violations.append(Violation(ViolationKind.PASSES_THROUGH_FIREFLY, (owner, other.id), p, "beams stop at the first firefly"))
                continue
            if p in seen:
                violations.append(Violation(ViolationKind.SELF_INTERSECT, (owner,), p, "point visited twice"))
                continue
            seen.add(p)
            users.setdefault(p, []).append(owner)

        target = inst.firefly_at(beam.end)
        if target is None:
            violations.append(Violation(ViolationKind.BRANCH_OR_MALFORMED, (owner,), beam.end, "beam does not end at a firefly"))
        else:
            edges.append((owner, target.id))
            if points[-2] == target.dot_point:
                violations.append(Violation(ViolationKind.ENDS_AT_DOT, (owner, target.id), beam.end, "arrives along the target's dot edge"))

        if source.numbered and bend_count(beam) != source.bends:
            violations.append(Violation(ViolationKind.BEND_MISMATCH, (owner,), None, f"expected {source.bends} bends, found {bend_count(beam)}"))

    for point in sorted(users):
        owners = users[point]
        if len(owners) > 1:
            violations.append(Violation(ViolationKind.BEAMS_INTERSECT, tuple(sorted(set(owners))), point, "point shared by several beams"))

    for f in inst.fireflies:
        if f.id not in sol.beams:
            violations.append(Violation(ViolationKind.MISSING_BEAM, (f.id,), f.pos, "no beam drawn"))

    components = connected_components(inst, edges)
    if len(components) > 1:
        stray = tuple(sorted(set().union(*components[1:])))
        violations.append(Violation(ViolationKind.DISCONNECTED, stray, None, f"{len(components)} components"))
    return violations
