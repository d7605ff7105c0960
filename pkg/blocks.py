# Modules
import logging
from enum import Enum
from pydantic import BaseModel, ConfigDict, model_validator
from errors import BlockSystemError, HypothesisError, InvariantViolation, NotTransitiveError
from perm import (
    GroupTable,
    Permutation,
    _check_point,
    is_transitive,
    orbits,
    point_stabilizer,
    require_subgroup,
)
from structure import conjugate_members, is_normal
from union_find import UnionFind

logger = logging.getLogger(__name__)


# Block system
class BlockSystem(BaseModel):
    """
    A partition of {1..n} into blocks of equal size.

    Blocks are sorted tuples ordered by their smallest point, which also serves
    as the block id in block_of.
    """
    model_config = ConfigDict(frozen=True)

    degree: int
    blocks: tuple[tuple[int, ...], ...]

    @model_validator(mode='after')
    def _equal_partition(self) -> 'BlockSystem':
        points = sorted(p for block in self.blocks for p in block)
        if points != list(range(1, self.degree + 1)):
            raise ValueError('blocks must partition the points 1..n')
        if len({len(block) for block in self.blocks}) != 1:
            raise ValueError('blocks must all have the same size')
        return self

    @classmethod
    def from_blocks(cls, degree: int, blocks) -> 'BlockSystem':
        canonical = tuple(sorted(tuple(sorted(b)) for b in blocks))
        return cls(degree=degree, blocks=canonical)

    @classmethod
    def singletons(cls, degree: int) -> 'BlockSystem':
        return cls.from_blocks(degree, [[p] for p in range(1, degree + 1)])

    @classmethod
    def one_block(cls, degree: int) -> 'BlockSystem':
        return cls.from_blocks(degree, [range(1, degree + 1)])

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def block_of(self) -> tuple[int, ...]:
        """block_of[p - 1] is the id (smallest point) of the block containing p."""
        ids = [0] * self.degree
        for block in self.blocks:
            for p in block:
                ids[p - 1] = block[0]
        return tuple(ids)

    def block_containing(self, point: int) -> tuple[int, ...]:
        for block in self.blocks:
            if point in block:
                return block
        raise BlockSystemError(f'point {point} is not covered by the system')

    def refines(self, other: 'BlockSystem') -> bool:
        """True when every block of self lies inside a block of other (self ≤ other in E(G))."""
        ids = other.block_of
        return all(len({ids[p - 1] for p in block}) == 1 for block in self.blocks)

    def is_invariant(self, g: Permutation) -> bool:
        ids = self.block_of
        for block in self.blocks:
            if len({ids[g.images[p - 1]] for p in block}) != 1:
                return False
        return True

    def __str__(self) -> str:
        return ' | '.join(' '.join(str(p) for p in block) for block in self.blocks)


def _sort_key(E: BlockSystem) -> tuple:
    return (E.block_size, E.blocks)


def _require_transitive(G: GroupTable) -> None:
    if not is_transitive(G):
        raise NotTransitiveError('the group is not transitive')


def _require_invariant(G: GroupTable, E: BlockSystem) -> None:
    if E.degree != G.degree or not all(E.is_invariant(g) for g in G.generators):
        raise BlockSystemError('the partition is not invariant under the group')


# Minimal block through a pair of points
def minimal_block_system(G: GroupTable, omega: int, delta: int) -> BlockSystem:
    """
    The finest block system with omega and delta in one block.

    Merge the pair, then for each merged pair (α, β) and each generator g merge
    α^g with β^g, queueing every pair that joined two classes.
    """
    _require_transitive(G)
    _check_point(omega, G.degree)
    _check_point(delta, G.degree)
    uf = UnionFind(range(G.degree))
    queue = []
    if uf.union(omega - 1, delta - 1):
        queue.append((omega - 1, delta - 1))
    while queue:
        a, b = queue.pop()
        for g in G.generators:
            x, y = g.images[a], g.images[b]
            if uf.union(x, y):
                queue.append((x, y))
    return BlockSystem.from_blocks(G.degree, [[p + 1 for p in c] for c in uf.classes()])


def join_systems(E: BlockSystem, F: BlockSystem) -> BlockSystem:
    """Finest partition coarser than both; for invariant partitions of a transitive group it is again a block system."""
    uf = UnionFind(range(1, E.degree + 1))
    for system in (E, F):
        for block in system.blocks:
            for p in block[1:]:
                uf.union(block[0], p)
    return BlockSystem.from_blocks(E.degree, uf.classes())


def meet_systems(E: BlockSystem, F: BlockSystem) -> BlockSystem:
    parts = []
    for a in E.blocks:
        for b in F.blocks:
            common = set(a) & set(b)
            if common:
                parts.append(common)
    return BlockSystem.from_blocks(E.degree, parts)


def all_block_systems(G: GroupTable, omega: int) -> list[BlockSystem]:
    """E(G): the join-closure of the minimal systems through omega, smallest blocks first."""
    _require_transitive(G)
    _check_point(omega, G.degree)
    atoms = {minimal_block_system(G, omega, delta) for delta in range(1, G.degree + 1)}
    systems = set(atoms)
    frontier = list(atoms)
    while frontier:
        E = frontier.pop()
        for A in atoms:
            J = join_systems(E, A)
            if J not in systems:
                systems.add(J)
                frontier.append(J)
    result = sorted(systems, key=_sort_key)
    logger.debug('found %d block systems (degree %d)', len(result), G.degree)
    return result


# Stabilizers and kernels
def block_stabilizer(G: GroupTable, E: BlockSystem, omega: int) -> GroupTable:
    """G_{E(omega)}: the setwise stabilizer of the block through omega."""
    _require_invariant(G, E)
    block = set(E.block_containing(omega))
    w = omega - 1
    return GroupTable.from_members(G.degree, (g for g in G.elements if g.images[w] + 1 in block))


def kernel_on_blocks(G: GroupTable, E: BlockSystem) -> GroupTable:
    """G_E: the elements fixing every block setwise."""
    _require_invariant(G, E)
    ids = E.block_of
    reps = [block[0] - 1 for block in E.blocks]
    return GroupTable.from_members(
        G.degree,
        (g for g in G.elements if all(ids[g.images[r]] == r + 1 for r in reps)),
    )


def right_coset_representatives(G: GroupTable, A: GroupTable) -> list[Permutation]:
    covered: set[Permutation] = set()
    reps = []
    for g in G.elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(a * g for a in A.elements)
    return reps


def core(G: GroupTable, A: GroupTable) -> GroupTable:
    """core_G(A): the intersection of the conjugates g⁻¹Ag, one per right coset Ag."""
    require_subgroup(A, G)
    members = set(A.members)
    for g in right_coset_representatives(G, A):
        members &= conjugate_members(A, g)
        if len(members) == 1:
            break
    return GroupTable.from_members(G.degree, members)


def product_set(A: GroupTable, B: GroupTable) -> frozenset:
    return frozenset(a * b for a in A.elements for b in B.elements)


def is_core_complementary(G: GroupTable, omega: int, A: GroupTable) -> bool:
    """A = G_omega · core_G(A)."""
    stabilizer = point_stabilizer(G, omega)
    require_subgroup(A, G)
    if not stabilizer <= A:
        raise HypothesisError('the subgroup does not contain the point stabilizer')
    return product_set(stabilizer, core(G, A)) == A.members


# Normal systems
def orbit_system(N: GroupTable) -> BlockSystem:
    return BlockSystem.from_blocks(N.degree, orbits(N.generators, N.degree))


def normal_system(G: GroupTable, N: GroupTable) -> BlockSystem:
    """Ω/N, the orbit partition of a normal subgroup."""
    require_subgroup(N, G)
    if not is_normal(N, G):
        raise HypothesisError('the subgroup is not normal')
    return orbit_system(N)


def kernel_orbit_system(G: GroupTable, E: BlockSystem) -> BlockSystem:
    return orbit_system(kernel_on_blocks(G, E))


def is_normal_system(G: GroupTable, E: BlockSystem) -> bool:
    return kernel_orbit_system(G, E) == E


def system_from_subgroup(G: GroupTable, omega: int, K: GroupTable) -> BlockSystem:
    """E_K: the blocks omega^{Kg}, inverse to block_stabilizer."""
    require_subgroup(K, G)
    _check_point(omega, G.degree)
    if not point_stabilizer(G, omega) <= K:
        raise HypothesisError('the subgroup does not contain the point stabilizer')
    w = omega - 1
    block = frozenset(k.images[w] for k in K.elements)
    images = {frozenset(g.images[p] for p in block) for g in G.elements}
    return BlockSystem.from_blocks(G.degree, [[p + 1 for p in b] for b in images])


# H-transitive / H-intransitive classification
class HKind(str, Enum):
    TRANSITIVE = 'H-transitive'
    INTRANSITIVE = 'H-intransitive'


class HClassification(BaseModel):
    kind: HKind
    n1: int
    n2: int
    block_size: int
    d: int | None = None
    d1: int | None = None
    d2: int | None = None


def _two_orbits(h: Permutation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    cycles = h.all_cycles()
    if len(cycles) != 2:
        raise HypothesisError(f'{h} has {len(cycles)} orbits, expected exactly two')
    return cycles[0], cycles[1]


def classify_H(h: Permutation, E: BlockSystem) -> HClassification:
    first, second = _two_orbits(h)
    if not E.is_invariant(h):
        raise BlockSystemError('the partition is not invariant under h')
    n1, n2 = len(first), len(second)
    ids = E.block_of
    block_orbits = UnionFind(block[0] for block in E.blocks)
    for block in E.blocks:
        block_orbits.union(block[0], ids[h.images[block[0] - 1]])

    size = E.block_size
    if len(block_orbits) == 1:
        d = E.block_count
        for block in E.blocks:
            inside = len(set(block) & set(first))
            if n1 % d or n2 % d or inside != n1 // d or size - inside != n2 // d:
                raise InvariantViolation(
                    'H-transitive block has the wrong shape',
                    {'block': block, 'd': d, 'n1': n1, 'n2': n2},
                )
        return HClassification(kind=HKind.TRANSITIVE, n1=n1, n2=n2, block_size=size, d=d)

    first_set = set(first)
    d1 = sum(1 for block in E.blocks if set(block) <= first_set)
    d2 = E.block_count - d1
    if d1 * size != n1 or d2 * size != n2:
        raise InvariantViolation(
            'H-intransitive system violates n1/d1 = n2/d2 = n_E',
            {'n1': n1, 'n2': n2, 'd1': d1, 'd2': d2, 'block_size': size},
        )
    return HClassification(kind=HKind.INTRANSITIVE, n1=n1, n2=n2, block_size=size, d1=d1, d2=d2)


def normal_refinement(G: GroupTable, E: BlockSystem, h: Permutation) -> BlockSystem:
    """
    For a non-normal H-transitive system E, the normal H-intransitive E' ≤ E of index 2.

    The blocks of E' are the orbits of the kernel of G on the blocks of E.
    """
    classification = classify_H(h, E)
    if classification.kind != HKind.TRANSITIVE or is_normal_system(G, E):
        raise HypothesisError('the system is not a non-normal H-transitive system')
    refined = kernel_orbit_system(G, E)
    evidence = {'system': str(E), 'refinement': str(refined), 'n1': classification.n1, 'n2': classification.n2}
    if classification.n1 != classification.n2:
        raise InvariantViolation('non-normal H-transitive system with orbits of different length', evidence)
    if not refined.refines(E) or E.block_size != 2 * refined.block_size:
        raise InvariantViolation('kernel orbits do not refine the system with index 2', evidence)
    if not is_normal_system(G, refined):
        raise InvariantViolation('index-2 refinement is not normal', evidence)
    if classify_H(h, refined).kind != HKind.INTRANSITIVE:
        raise InvariantViolation('index-2 refinement is not H-intransitive', evidence)
    return refined
