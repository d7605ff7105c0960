# Modules
import logging
from collections import Counter
from pydantic import BaseModel, ConfigDict
from check_status import CheckStatus
from errors import LatticeError
from interval import IntervalLattice
from lattice import FiniteLattice
from props import is_lower_semimodular, is_semimodular
from union_find import UnionFind

logger = logging.getLogger(__name__)


# Chains
class MaximalChain(BaseModel):
    """Node ids a = a_0 <· a_1 <· … <· a_k = b."""
    model_config = ConfigDict(frozen=True)

    nodes: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1


class RewriteGraph(BaseModel):
    """Chains joined when they differ in exactly one interior element."""
    chains: list[MaximalChain]
    edges: list[tuple[int, int]]


def enumerate_maximal_chains(L: FiniteLattice, a: int, b: int) -> list[MaximalChain]:
    if not L.leq(a, b):
        raise LatticeError(f'{L.labels[a]} is not below {L.labels[b]}')
    result: list[MaximalChain] = []
    path = [a]

    def walk(x: int) -> None:
        if x == b:
            result.append(MaximalChain(nodes=tuple(path)))
            return
        for y in L.upper_covers(x):
            if L.leq(y, b):
                path.append(y)
                walk(y)
                path.pop()

    walk(a)
    logger.debug('%d maximal chains between %s and %s', len(result), L.labels[a], L.labels[b])
    return result


def rewrite_graph(chains: list[MaximalChain]) -> RewriteGraph:
    """
    Bucket chains by (length, chain with one interior position blanked).

    Two chains share a bucket exactly when they differ at that one position.
    """
    buckets: dict[tuple, list[int]] = {}
    for i, chain in enumerate(chains):
        for pos in range(1, len(chain.nodes) - 1):
            key = (chain.length, pos, chain.nodes[:pos], chain.nodes[pos + 1:])
            buckets.setdefault(key, []).append(i)
    edges = set()
    for members in buckets.values():
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                edges.add((members[x], members[y]))
    return RewriteGraph(chains=chains, edges=sorted(edges))


def _components(graph: RewriteGraph) -> list[list[MaximalChain]]:
    uf = UnionFind(range(len(graph.chains)))
    for i, j in graph.edges:
        uf.union(i, j)
    return [[graph.chains[i] for i in cls] for cls in uf.classes()]


def r_equivalence_classes(L: FiniteLattice, a: int, b: int) -> list[list[MaximalChain]]:
    """Connected components of the rewrite graph, ordered by their first chain."""
    return _components(rewrite_graph(enumerate_maximal_chains(L, a, b)))


def cover_index_profile(L, chain: MaximalChain) -> list[int]:
    """Sorted cover indices [X_{i+1} : X_i] along a chain of subgroups."""
    orders = L.orders()
    return sorted(orders[y] // orders[x] for x, y in zip(chain.nodes, chain.nodes[1:]))


# Lattice-level first Ritt theorem
class RittReport(BaseModel):
    status: CheckStatus
    semimodular: bool
    lower_semimodular: bool
    class_count: int
    pairs_checked: int
    counterexample: tuple[int, int] | None = None


def ritt_theorem_check(L: FiniteLattice, exhaustive: bool = False) -> RittReport:
    """
    Under (lower) semimodularity all maximal chains between two elements are r-equivalent.

    Checks bottom to top, or every comparable pair when exhaustive is set.
    """
    upper, lower = is_semimodular(L), is_lower_semimodular(L)
    class_count = len(r_equivalence_classes(L, L.bottom, L.top))
    if not (upper or lower):
        return RittReport(
            status=CheckStatus.NOT_APPLICABLE,
            semimodular=upper,
            lower_semimodular=lower,
            class_count=class_count,
            pairs_checked=0,
        )

    pairs = [(L.bottom, L.top)]
    if exhaustive:
        pairs = [(a, b) for b in range(L.size) for a in L.below[b] if a != b]
    counterexample = None
    for a, b in pairs:
        if len(r_equivalence_classes(L, a, b)) != 1:
            counterexample = (a, b)
            break
    return RittReport(
        status=CheckStatus.FAIL if counterexample else CheckStatus.PASS,
        semimodular=upper,
        lower_semimodular=lower,
        class_count=class_count,
        pairs_checked=len(pairs),
        counterexample=counterexample,
    )


# Report
class ChainSummary(BaseModel):
    length: int
    tags: list[str]
    orders: list[int] | None = None  # subgroup orders, interval lattices only


class ChainReport(BaseModel):
    chain_count: int
    length_histogram: dict[int, int]
    class_count: int
    class_sizes: list[int]
    representatives: list[ChainSummary]


def summarize_chain(L: FiniteLattice, chain: MaximalChain) -> ChainSummary:
    orders = None
    if isinstance(L, IntervalLattice):
        all_orders = L.orders()
        orders = [all_orders[i] for i in chain.nodes]
    return ChainSummary(length=chain.length, tags=[L.labels[i] for i in chain.nodes], orders=orders)


def chain_report(L: FiniteLattice, a: int | None = None, b: int | None = None) -> ChainReport:
    a = L.bottom if a is None else a
    b = L.top if b is None else b
    chains = enumerate_maximal_chains(L, a, b)
    classes = _components(rewrite_graph(chains))
    histogram = Counter(c.length for c in chains)
    return ChainReport(
        chain_count=len(chains),
        length_histogram=dict(sorted(histogram.items())),
        class_count=len(classes),
        class_sizes=[len(cls) for cls in classes],
        representatives=[summarize_chain(L, cls[0]) for cls in classes],
    )
