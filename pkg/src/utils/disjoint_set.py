"""Union-find over hashable items, used for firefly connectivity."""

from typing import Dict, Hashable, Iterable, List, Set


class DisjointSet:
    """Union-find with path compression and union by rank."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: Dict[Hashable, Hashable] = {}
        self.rank: Dict[Hashable, int] = {}
        for item in items:
            self.make_set(item)

    def make_set(self, x: Hashable) -> None:
        """Create a singleton set for x if it is not tracked yet."""
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x: Hashable) -> Hashable:
        """Return the representative of x's set."""
        self.make_set(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Hashable, y: Hashable) -> bool:
        """
        Merge the sets containing x and y.

        Returns:
            bool: True if two different sets were merged.
        """
        root_x, root_y = self.find(x), self.find(y)
        if root_x == root_y:
            return False
        if self.rank[root_x] < self.rank[root_y]:
            root_x, root_y = root_y, root_x
        self.parent[root_y] = root_x
        if self.rank[root_x] == self.rank[root_y]:
            self.rank[root_x] += 1
        return True

    def connected(self, x: Hashable, y: Hashable) -> bool:
        """Check whether x and y share a set."""
        return self.find(x) == self.find(y)

    def get_sets(self) -> List[Set[Hashable]]:
        """Return every set, in first-seen order of their members."""
        groups: Dict[Hashable, Set[Hashable]] = {}
        for x in self.parent:
            groups.setdefault(self.find(x), set()).add(x)
        return list(groups.values())

    def num_sets(self) -> int:
        """Return the number of disjoint sets."""
        return len({self.find(x) for x in self.parent})
