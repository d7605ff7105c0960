# Modules
import logging
from enum import Enum
from math import gcd, lcm
from graphviz import Digraph
from pydantic import BaseModel, ConfigDict
from sympy import divisors
from blocks import all_block_systems, block_stabilizer, product_set
from config import settings
from errors import HypothesisError, LatticeError, NotTransitiveError, OrderCapExceeded
from lattice import FiniteLattice, order_fields
from perm import (
    GroupTable,
    Permutation,
    intersection,
    is_transitive,
    join_subgroups,
    point_stabilizer,
    require_subgroup,
)
from structure import is_cyclic, structure_tag

logger = logging.getLogger(__name__)


# Construction strategy
class Strategy(str, Enum):
    VIA_BLOCKS = 'via-blocks'
    VIA_SUBGROUPS = 'via-subgroup-enumeration'
    AUTO = 'auto'


# Interval lattice L(G_omega, G)
class IntervalLattice(FiniteLattice):
    """Subgroups X with G_omega ≤ X ≤ G, sorted by (order, element list)."""
    model_config = ConfigDict(frozen=True)

    nodes: tuple[GroupTable, ...]
    point: int
    strategy: Strategy

    def index_of(self, X: GroupTable) -> int:
        for i, node in enumerate(self.nodes):
            if node == X:
                return i
        raise LatticeError(f'subgroup of order {X.order} is not a node of the interval')

    def orders(self) -> list[int]:
        return [X.order for X in self.nodes]


def _node_key(X: GroupTable) -> tuple:
    return (X.order, tuple(p.images for p in X.elements))


def lattice_of_subgroups(
    nodes: list[GroupTable],
    point: int = 1,
    strategy: Strategy = Strategy.VIA_SUBGROUPS,
) -> IntervalLattice:
    """Order a family of subgroups by inclusion."""
    nodes = sorted(set(nodes), key=_node_key)
    fields = order_fields(len(nodes), lambda a, b: nodes[a] <= nodes[b])
    return IntervalLattice(
        labels=tuple(structure_tag(X) for X in nodes),
        nodes=tuple(nodes),
        point=point,
        strategy=strategy,
        **fields,
    )


# Overgroup enumeration
def enumerate_overgroups(bottom: GroupTable, top: GroupTable, cap: int | None = None) -> list[GroupTable]:
    """
    All subgroups X with bottom ≤ X ≤ top.

    Seeds are the cyclic extensions ⟨bottom, g⟩, one per double coset bottom·g·bottom;
    every other overgroup is a join of seeds, so the family is closed by joining seeds.
    """
    require_subgroup(bottom, top, 'lower subgroup')
    cap = settings.order_cap if cap is None else cap
    done: set[Permutation] = set(bottom.members)
    seeds: dict[frozenset, GroupTable] = {}
    for g in top.elements:
        if g in done:
            continue
        done.update(a * g * b for a in bottom.elements for b in bottom.elements)
        X = join_subgroups(bottom, GroupTable.from_members(top.degree, _powers(g), [g]), cap)
        seeds.setdefault(X.members, X)

    found: dict[frozenset, GroupTable] = {bottom.members: bottom, **seeds}
    queue = list(seeds.values())
    while queue:
        X = queue.pop()
        for S in seeds.values():
            if S <= X:
                continue
            Y = join_subgroups(X, S, cap)
            if Y.members not in found:
                found[Y.members] = Y
                queue.append(Y)
    logger.debug('enumerated %d overgroups of a subgroup of order %d', len(found), bottom.order)
    return sorted(found.values(), key=_node_key)


def _powers(g: Permutation) -> set[Permutation]:
    result = {Permutation.identity(g.degree)}
    x = g
    while not x.is_identity:
        result.add(x)
        x = x * g
    return result


def build_interval(
    G: GroupTable,
    omega: int,
    strategy: Strategy = Strategy.AUTO,
    cap: int | None = None,
) -> IntervalLattice:
    if not is_transitive(G):
        raise NotTransitiveError('the interval lattice needs a transitive group')
    cap = settings.order_cap if cap is None else cap
    if G.order > cap:
        raise OrderCapExceeded(cap)
    stabilizer = point_stabilizer(G, omega)
    if strategy == Strategy.AUTO:
        strategy = Strategy.VIA_SUBGROUPS if stabilizer.order == 1 else Strategy.VIA_BLOCKS

    if strategy == Strategy.VIA_BLOCKS:
        nodes = [block_stabilizer(G, E, omega) for E in all_block_systems(G, omega)]
    else:
        nodes = enumerate_overgroups(stabilizer, G, cap)
    L = lattice_of_subgroups(nodes, omega, strategy)
    logger.debug('interval lattice via %s: %d nodes, %d covers', strategy.value, L.size, len(L.covers))
    return L


# Meet and join by group operations
def meet(L: IntervalLattice, a: int, b: int) -> int:
    return L.index_of(intersection(L.nodes[a], L.nodes[b]))


def join(L: IntervalLattice, a: int, b: int) -> int:
    return L.index_of(join_subgroups(L.nodes[a], L.nodes[b]))


# Divisor lattice L_n
class DivisorLattice(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    divisors: tuple[int, ...]

    def meet(self, a: int, b: int) -> int:
        return gcd(a, b)

    def join(self, a: int, b: int) -> int:
        return lcm(a, b)

    def leq(self, a: int, b: int) -> bool:
        return b % a == 0

    def as_lattice(self) -> FiniteLattice:
        ds = self.divisors
        return FiniteLattice.from_order((str(d) for d in ds), lambda i, j: ds[j] % ds[i] == 0)


def divisor_lattice(n: int) -> DivisorLattice:
    if n < 1:
        raise HypothesisError(f'the divisor lattice needs a positive n, got {n}')
    return DivisorLattice(n=n, divisors=tuple(divisors(n)))


# Dedekind embedding X ↦ X ∩ B
class DedekindEmbedding(BaseModel):
    images: list[int]
    injective: bool
    meet_preserved: bool
    join_preserved: bool
    dedekind_identity: bool
    failures: list[str] = []

    @property
    def is_embedding(self) -> bool:
        return self.injective and self.meet_preserved and self.join_preserved and self.dedekind_identity


def intersection_embedding(G: GroupTable, omega: int, B: GroupTable, L: IntervalLattice) -> tuple[list[GroupTable], DedekindEmbedding]:
    """
    Check that X ↦ X ∩ B embeds L into the subgroup lattice of B.

    Returns the image subgroups and a report; images in the report are |X ∩ B|.
    """
    require_subgroup(B, G)
    stabilizer = L.nodes[L.bottom]
    images = [intersection(X, B) for X in L.nodes]
    failures: list[str] = []

    injective = len(set(images)) == len(images)
    if not injective:
        failures.append('two nodes have the same intersection')

    meet_ok = join_ok = True
    for a in range(L.size):
        for b in range(a + 1, L.size):
            m, j = L.meet(a, b), L.join(a, b)
            if images[m] != intersection(images[a], images[b]):
                meet_ok = False
                failures.append(f'meet of nodes {a},{b} not preserved')
            if images[j] != join_subgroups(images[a], images[b]):
                join_ok = False
                failures.append(f'join of nodes {a},{b} not preserved')

    identity_ok = all(product_set(stabilizer, images[i]) == X.members for i, X in enumerate(L.nodes))
    if not identity_ok:
        failures.append('X = G_omega (X ∩ B) fails for some node')

    report = DedekindEmbedding(
        images=[X.order for X in images],
        injective=injective,
        meet_preserved=meet_ok,
        join_preserved=join_ok,
        dedekind_identity=identity_ok,
        failures=failures,
    )
    return images, report


def dedekind_embedding(G: GroupTable, omega: int, C: GroupTable, L: IntervalLattice | None = None) -> DedekindEmbedding:
    """
    X ↦ |X ∩ C| for a transitive cyclic C of order n = degree.

    The report says whether the map is injective and carries meets to gcd and joins to lcm.
    """
    require_subgroup(C, G)
    if not is_cyclic(C):
        raise HypothesisError('C is not cyclic')
    if not is_transitive(C) or C.order != G.degree:
        raise HypothesisError('C is not a transitive cyclic subgroup of order n')
    L = L or build_interval(G, omega)
    _, report = intersection_embedding(G, omega, C, L)

    orders = report.images
    meet_ok, join_ok = report.meet_preserved, report.join_preserved
    for a in range(L.size):
        for b in range(a + 1, L.size):
            if orders[L.meet(a, b)] != gcd(orders[a], orders[b]):
                meet_ok = False
            if orders[L.join(a, b)] != lcm(orders[a], orders[b]):
                join_ok = False
    return report.model_copy(update={'meet_preserved': meet_ok, 'join_preserved': join_ok})


def cyclic_transitive_subgroups(G: GroupTable) -> list[GroupTable]:
    """Transitive cyclic subgroups ⟨c⟩, i.e. generated by an n-cycle."""
    found = {}
    for c in G.elements:
        if len(c.all_cycles()) == 1:
            C = GroupTable.from_members(G.degree, _powers(c), [c])
            found.setdefault(C.members, C)
    return sorted(found.values(), key=_node_key)


# DOT export of the cover digraph
def lattice_to_dot(L: FiniteLattice, name: str = 'interval') -> str:
    dot = Digraph(name=name)
    dot.attr(rankdir='BT')
    orders = L.orders() if isinstance(L, IntervalLattice) else None
    for i, label in enumerate(L.labels):
        text = f'{label} |{orders[i]}|' if orders else label
        dot.node(f'n{i}', label=text)
    for a, b in L.covers:
        dot.edge(f'n{a}', f'n{b}')
    return dot.source
