"""Backtracking search for Hotaru Beam solutions."""

import logging
from dataclasses import dataclass, field
from itertools import islice
from typing import Dict, Iterator, List, Optional, Set, Tuple

from ..config import config
from ..puzzle.model import BeamPath, Direction, GridPoint, PuzzleInstance, Solution
from ..puzzle.validator import connected_components
from ..utils.disjoint_set import DisjointSet
from .occupancy import Occupancy, PointState

logger = logging.getLogger(__name__)

# Fireflies with at most this many prescribed bends get exact target sets
# during connectivity pruning; the rest use the free-region estimate.
_EXACT_TARGET_BENDS = 3


class BudgetExhausted(RuntimeError):
    """The node budget ran out before the search space was exhausted."""

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"search budget exhausted after {nodes} nodes")


@dataclass
class SearchConfig:
    """Caps for a search; None for max_bends_unbounded means w·h−1."""

    max_bends_unbounded: Optional[int] = None
    node_budget: int = field(default_factory=config.get_node_budget)
    solution_cap: int = field(default_factory=config.get_solution_cap)
    propagate: bool = field(default_factory=config.get_propagate)

    def __post_init__(self):
        for name in ("node_budget", "solution_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.max_bends_unbounded is not None and self.max_bends_unbounded < 1:
            raise ValueError(f"max_bends_unbounded must be >= 1, got {self.max_bends_unbounded}")

    def bend_cap(self, inst: PuzzleInstance) -> int:
        if self.max_bends_unbounded is not None:
            return self.max_bends_unbounded
        return max(inst.width * inst.height - 1, 1)


def iter_beams(inst: PuzzleInstance, occ: Occupancy, fid: int, bend_cap: int) -> Iterator[BeamPath]:
    """
    Yield the legal beams of one firefly in depth-first order.

    Straight runs are walked in a loop; recursion only happens at corners.
    """
    source = inst.firefly(fid)
    exact = source.numbered
    limit = source.bends if exact else bend_cap
    visited: Set[GridPoint] = set()

    def walk(origin: GridPoint, heading: Direction, bends: int, corners: Tuple[GridPoint, ...]) -> Iterator[BeamPath]:
        stepped: List[GridPoint] = []
        p = origin
        try:
            while True:
                p = p.step(heading)
                if not inst.in_bounds(p):
                    return
                state = occ.state(p)
                if state == PointState.FIREFLY_POINT:
                    target = inst.firefly_at(p)
                    arrives_on_dot = target.dot == heading.opposite
                    bends_ok = bends == limit if exact else bends <= limit
                    if bends_ok and not arrives_on_dot:
                        yield BeamPath(fid, corners + (p,))
                    return
                if state == PointState.USED_BY_BEAM or p in visited:
                    return
                visited.add(p)
                stepped.append(p)
                if bends < limit:
                    for turn in heading.turns():
                        yield from walk(p, turn, bends + 1, corners + (p,))
        finally:
            visited.difference_update(stepped)

    yield from walk(source.pos, source.dot, 0, (source.pos,))


def enumerate_beams(
    inst: PuzzleInstance, occ: Occupancy, fid: int, cfg: Optional[SearchConfig] = None
) -> List[BeamPath]:
    """
    All legal beams from firefly fid on the given occupancy.

    Returns:
        BeamPaths sorted by their vertex sequence.
    """
    cfg = cfg or SearchConfig()
    return sorted(iter_beams(inst, occ, fid, cfg.bend_cap(inst)), key=lambda b: b.vertices)


def is_forced(inst: PuzzleInstance, fid: int) -> bool:
    """Bends 0, or a firefly sits on the dot point: drawn the same way in any solution."""
    f = inst.firefly(fid)
    return f.bends == 0 or inst.firefly_at(f.dot_point) is not None


class _Search:
    def __init__(self, inst: PuzzleInstance, cfg: SearchConfig):
        self.inst = inst
        self.cfg = cfg
        self.cap = cfg.bend_cap(inst)
        self.occ = Occupancy(inst)
        self.placed: Dict[int, BeamPath] = {}
        self.nodes = 0
        ids = [f.id for f in inst.fireflies]
        self.forced = [fid for fid in ids if is_forced(inst, fid)]
        self.others = [fid for fid in ids if not is_forced(inst, fid)]

    def place(self, beam: BeamPath) -> None:
        self.placed[beam.owner] = beam
        self.occ.mark(beam.interior())

    def unplace(self, owner: int) -> None:
        self.occ.release(self.placed.pop(owner).interior())

    def beams(self, fid: int, limit: Optional[int] = None) -> List[BeamPath]:
        found = iter_beams(self.inst, self.occ, fid, self.cap)
        if limit is not None:
            return list(islice(found, limit))
        return sorted(found, key=lambda b: b.vertices)

    def propagate(self) -> Optional[List[int]]:
        """Place single-candidate fireflies until a fixpoint; None on a dead end."""
        trail: List[int] = []
        changed = True
        while changed:
            changed = False
            for group in (self.forced, self.others):
                for fid in group:
                    if fid in self.placed:
                        continue
                    found = self.beams(fid, limit=2)
                    if not found:
                        for owner in reversed(trail):
                            self.unplace(owner)
                        return None
                    if len(found) == 1:
                        self.place(found[0])
                        trail.append(fid)
                        changed = True
                if changed:
                    break
        return trail

    def _reachable_targets(self, dot: GridPoint, regions: Dict[GridPoint, int], targets: List[Set[int]]) -> Set[int]:
        region = regions.get(dot)
        if region is None:
            region = len(targets)
            reached: Set[int] = set()
            stack = [dot]
            regions[dot] = region
            while stack:
                cell = stack.pop()
                for heading in Direction:
                    q = cell.step(heading)
                    if not self.inst.in_bounds(q):
                        continue
                    state = self.occ.state(q)
                    if state == PointState.FREE and q not in regions:
                        regions[q] = region
                        stack.append(q)
                    elif state == PointState.FIREFLY_POINT:
                        other = self.inst.firefly_at(q)
                        if other.dot_point != cell:
                            reached.add(other.id)
            targets.append(reached)
        return targets[region]

    def connectivity_possible(self) -> bool:
        """Over-approximate the final firefly graph; False when it must be disconnected."""
        ds = DisjointSet(f.id for f in self.inst.fireflies)
        for owner, beam in self.placed.items():
            ds.union(owner, self.inst.firefly_at(beam.end).id)
        regions: Dict[GridPoint, int] = {}
        targets: List[Set[int]] = []
        for f in self.inst.fireflies:
            if f.id in self.placed:
                continue
            dot = f.dot_point
            state = self.occ.state(dot)
            if state == PointState.FIREFLY_POINT:
                ds.union(f.id, self.inst.firefly_at(dot).id)
                continue
            if state == PointState.USED_BY_BEAM:
                return False
            if f.numbered and f.bends <= _EXACT_TARGET_BENDS:
                reached = {self.inst.firefly_at(b.end).id for b in self.beams(f.id, limit=None)}
            else:
                reached = self._reachable_targets(dot, regions, targets)
            if not reached:
                return False
            for other in reached:
                ds.union(f.id, other)
        return ds.num_sets() == 1

    def branch_choice(self, unplaced: List[int]) -> Tuple[int, List[BeamPath]]:
        best: Optional[int] = None
        best_count = 0
        for fid in unplaced:
            if not self.inst.firefly(fid).numbered:
                continue
            probe = len(self.beams(fid, limit=best_count if best is not None else None))
            if best is None or probe < best_count:
                best, best_count = fid, probe
                if probe <= 1:
                    break
        if best is None:
            best = unplaced[0]
        return best, self.beams(best)

    def is_connected(self) -> bool:
        edges = [(owner, self.inst.firefly_at(b.end).id) for owner, b in self.placed.items()]
        return len(connected_components(self.inst, edges)) == 1

    def explore(self) -> Iterator[Solution]:
        self.nodes += 1
        if self.nodes > self.cfg.node_budget:
            raise BudgetExhausted(self.nodes - 1)
        trail = self.propagate() if self.cfg.propagate else []
        if trail is None:
            return
        try:
            unplaced = [f.id for f in self.inst.fireflies if f.id not in self.placed]
            if not unplaced:
                if self.is_connected():
                    yield Solution(dict(sorted(self.placed.items())))
                return
            if not self.connectivity_possible():
                return
            fid, options = self.branch_choice(unplaced)
            for beam in options:
                self.place(beam)
                try:
                    yield from self.explore()
                finally:
                    self.unplace(beam.owner)
        finally:
            for owner in reversed(trail):
                self.unplace(owner)


def iter_solutions(inst: PuzzleInstance, cfg: Optional[SearchConfig] = None) -> Iterator[Solution]:
    """Every solution, in the deterministic exploration order."""
    cfg = cfg or SearchConfig()
    search = _Search(inst, cfg)
    try:
        yield from search.explore()
    finally:
        logger.debug("search visited %d nodes", search.nodes)


def solve(inst: PuzzleInstance, cfg: Optional[SearchConfig] = None) -> Optional[Solution]:
    """
    Find one solution.

    Returns:
        A valid Solution, or None once the whole space was searched.

    Raises:
        BudgetExhausted: If the node budget binds first.
    """
    return next(iter_solutions(inst, cfg), None)


def count_solutions(inst: PuzzleInstance, cfg: Optional[SearchConfig] = None) -> int:
    """Number of distinct solutions, saturating at cfg.solution_cap."""
    cfg = cfg or SearchConfig()
    count = 0
    for _ in iter_solutions(inst, cfg):
        count += 1
        if count >= cfg.solution_cap:
            break
    return count
