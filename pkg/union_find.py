# Disjoint sets over hashable points
from typing import Callable, Hashable, Iterable


class UnionFind:
    def __init__(self, points: Iterable[Hashable]):
        self.parent = {x: x for x in points}
        self.size = dict.fromkeys(self.parent, 1)

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y) -> bool:
        """Merge the classes of x and y. Returns False when they were already one class."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size.pop(y)
        return True

    def classes(self) -> list[list]:
        """All classes as sorted lists, ordered by their smallest member."""
        members: dict = {}
        for x in self.parent:
            members.setdefault(self.find(x), []).append(x)
        return sorted(sorted(c) for c in members.values())

    def __len__(self):
        return len(self.size)


def find_orbits(gens, space, action: Callable) -> list[list]:
    """Orbits of the group generated by gens, for action(g, x)."""
    uf = UnionFind(space)
    for g in gens:
        for x in space:
            uf.union(x, action(g, x))
    return uf.classes()
