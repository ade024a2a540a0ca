"""Exhaustive beam-tuple enumeration, used to cross-check the search."""

from typing import Dict, Iterator, List, Optional, Set

from ..puzzle.model import BeamPath, GridPoint, PuzzleInstance, Solution
from ..puzzle.validator import validate_solution
from .occupancy import Occupancy
from .search import iter_beams


def exhaustive_solutions(inst: PuzzleInstance, max_bends: Optional[int] = None) -> Iterator[Solution]:
    """
    Try every tuple of pairwise point-disjoint beams in firefly id order.

    Candidates come from the empty board; no propagation, no pruning.
    Every complete tuple goes through validate_solution.
    """
    cap = max_bends if max_bends is not None else max(inst.width * inst.height - 1, 1)
    empty = Occupancy(inst)
    candidates: Dict[int, List[BeamPath]] = {
        f.id: sorted(iter_beams(inst, empty, f.id, cap), key=lambda b: b.vertices)
        for f in inst.fireflies
    }
    order = [f.id for f in inst.fireflies]
    chosen: Dict[int, BeamPath] = {}
    used: Set[GridPoint] = set()

    def extend(k: int) -> Iterator[Solution]:
        if k == len(order):
            sol = Solution(dict(chosen))
            if not validate_solution(inst, sol):
                yield sol
            return
        fid = order[k]
        for beam in candidates[fid]:
            interior = beam.interior()
            if used.intersection(interior):
                continue
            chosen[fid] = beam
            used.update(interior)
            yield from extend(k + 1)
            used.difference_update(interior)
            del chosen[fid]

    yield from extend(0)


def brute_force_decide(inst: PuzzleInstance) -> bool:
    return next(exhaustive_solutions(inst), None) is not None


def brute_force_count(inst: PuzzleInstance, cap: Optional[int] = None) -> int:
    count = 0
    for _ in exhaustive_solutions(inst):
        count += 1
        if cap is not None and count >= cap:
            break
    return count
