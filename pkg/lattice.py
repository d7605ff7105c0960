# Modules
import logging
from typing import Callable, Iterable
from pydantic import BaseModel, ConfigDict, PrivateAttr
from errors import LatticeError

logger = logging.getLogger(__name__)


def order_fields(size: int, leq: Callable[[int, int], bool]) -> dict:
    """below-sets, cover pairs, bottom and top of a finite poset given by leq."""
    below = tuple(frozenset(j for j in range(size) if leq(j, i)) for i in range(size))
    everything = frozenset(range(size))
    bottoms = [i for i in range(size) if all(i in below[k] for k in range(size))]
    tops = [i for i in range(size) if below[i] == everything]
    if not bottoms or not tops:
        raise LatticeError('poset has no least or no greatest element')

    covers = []
    for b in range(size):
        strict = below[b] - {b}
        for a in strict:
            if not any(a in below[c] for c in strict if c != a):
                covers.append((a, b))
    return {
        'below': below,
        'covers': tuple(sorted(covers)),
        'bottom': bottoms[0],
        'top': tops[0],
    }


# Finite lattice
class FiniteLattice(BaseModel):
    """
    A finite lattice on the indices 0..size-1.

    below[i] is the set of j with j ≤ i; covers lists the pairs (a, b) with a <· b.
    """
    model_config = ConfigDict(frozen=True)

    labels: tuple[str, ...]
    below: tuple[frozenset[int], ...]
    covers: tuple[tuple[int, int], ...]
    bottom: int
    top: int

    _above: tuple = PrivateAttr(default=())
    _upper: tuple = PrivateAttr(default=())
    _lower: tuple = PrivateAttr(default=())
    _cover_set: frozenset = PrivateAttr(default_factory=frozenset)
    _meets: dict = PrivateAttr(default_factory=dict)
    _joins: dict = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        n = len(self.labels)
        above: list[set[int]] = [set() for _ in range(n)]
        for i, lower in enumerate(self.below):
            for j in lower:
                above[j].add(i)
        upper: list[list[int]] = [[] for _ in range(n)]
        lower_covers: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.covers:
            upper[a].append(b)
            lower_covers[b].append(a)
        self._above = tuple(frozenset(a) for a in above)
        self._upper = tuple(tuple(sorted(u)) for u in upper)
        self._lower = tuple(tuple(sorted(d)) for d in lower_covers)
        self._cover_set = frozenset(self.covers)

    @classmethod
    def from_order(cls, labels: Iterable[str], leq: Callable[[int, int], bool]) -> 'FiniteLattice':
        labels = tuple(labels)
        return cls(labels=labels, **order_fields(len(labels), leq))

    @classmethod
    def from_covers(cls, labels: Iterable[str], covers: Iterable[tuple[int, int]]) -> 'FiniteLattice':
        """Build from a Hasse diagram given as (lower, upper) pairs."""
        labels = tuple(labels)
        lower: dict[int, list[int]] = {i: [] for i in range(len(labels))}
        for a, b in covers:
            lower[b].append(a)
        closure: dict[int, frozenset[int]] = {}

        def down(i: int) -> frozenset[int]:
            if i not in closure:
                acc = {i}
                for j in lower[i]:
                    acc |= down(j)
                closure[i] = frozenset(acc)
            return closure[i]

        return cls.from_order(labels, lambda a, b: a in down(b))

    @property
    def size(self) -> int:
        return len(self.labels)

    def leq(self, a: int, b: int) -> bool:
        return a in self.below[b]

    def is_cover(self, a: int, b: int) -> bool:
        return (a, b) in self._cover_set

    def upper_covers(self, a: int) -> tuple[int, ...]:
        return self._upper[a]

    def lower_covers(self, b: int) -> tuple[int, ...]:
        return self._lower[b]

    def above(self, a: int) -> frozenset[int]:
        return self._above[a]

    def meet(self, a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        if key not in self._meets:
            common = self.below[a] & self.below[b]
            best = [m for m in common if common <= self.below[m]]
            if not best:
                raise LatticeError(f'{self.labels[a]} and {self.labels[b]} have no meet')
            self._meets[key] = best[0]
        return self._meets[key]

    def join(self, a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        if key not in self._joins:
            common = self._above[a] & self._above[b]
            best = [m for m in common if common <= self._above[m]]
            if not best:
                raise LatticeError(f'{self.labels[a]} and {self.labels[b]} have no join')
            self._joins[key] = best[0]
        return self._joins[key]

    def heights(self) -> list[int]:
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.size
        for i in sorted(range(self.size), key=lambda i: len(self.below[i])):
            h[i] = max((h[j] + 1 for j in self._lower[i]), default=0)
        return h

    def interval(self, a: int, b: int) -> tuple['FiniteLattice', list[int]]:
        """The sublattice [a, b] and the map from its indices back to this lattice."""
        if not self.leq(a, b):
            raise LatticeError(f'{self.labels[a]} is not below {self.labels[b]}')
        index = [j for j in range(self.size) if a in self.below[j] and j in self.below[b]]
        sub = FiniteLattice.from_order(
            (self.labels[j] for j in index),
            lambda x, y: index[x] in self.below[index[y]],
        )
        return sub, index


# Isomorphism by backtracking on the cover digraph
def find_isomorphism(L1: FiniteLattice, L2: FiniteLattice) -> list[int] | None:
    if L1.size != L2.size or len(L1.covers) != len(L2.covers):
        return None
    h1, h2 = L1.heights(), L2.heights()

    def signature(L: FiniteLattice, h: list[int], i: int) -> tuple:
        return (h[i], len(L.lower_covers(i)), len(L.upper_covers(i)), len(L.below[i]), len(L.above(i)))

    sig1 = [signature(L1, h1, i) for i in range(L1.size)]
    sig2 = [signature(L2, h2, j) for j in range(L2.size)]
    if sorted(sig1) != sorted(sig2):
        return None

    order = sorted(range(L1.size), key=lambda i: (h1[i], i))
    candidates = {i: [j for j in range(L2.size) if sig2[j] == sig1[i]] for i in order}
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(i: int, j: int) -> bool:
        for k, l in mapping.items():
            if L1.is_cover(k, i) != L2.is_cover(l, j) or L1.is_cover(i, k) != L2.is_cover(j, l):
                return False
        return True

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        for j in candidates[i]:
            if j in used or not consistent(i, j):
                continue
            mapping[i] = j
            used.add(j)
            if extend(pos + 1):
                return True
            del mapping[i]
            used.discard(j)
        return False

    if not extend(0):
        return None
    return [mapping[i] for i in range(L1.size)]
