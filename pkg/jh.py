# Modules
import logging
from collections import Counter
from pydantic import BaseModel, ConfigDict
from blocks import is_core_complementary
from chains import MaximalChain, enumerate_maximal_chains, r_equivalence_classes
from errors import NotTransitiveError
from interval import IntervalLattice, build_interval
from perm import GroupTable, Permutation, generate, is_transitive, join_subgroups, require_subgroup
from structure import structure_tag

logger = logging.getLogger(__name__)


# Induced coset action A//B
class InducedAction(BaseModel):
    """A acting on the right cosets of B by right multiplication; the image is the faithful quotient."""
    model_config = ConfigDict(frozen=True)

    source: tuple[GroupTable, GroupTable]
    degree: int
    image: GroupTable

    def describe(self) -> tuple[int, int, str]:
        return (self.degree, self.image.order, structure_tag(self.image))


def coset_action(A: GroupTable, B: GroupTable) -> InducedAction:
    """
    Right cosets Bx are numbered by their smallest element, so B itself is point 1.
    """
    require_subgroup(B, A, 'the stabilized subgroup')
    coset_of: dict[Permutation, int] = {}
    reps: list[Permutation] = []
    for x in A.elements:
        if x in coset_of:
            continue
        index = len(reps)
        reps.append(x)
        for b in B.elements:
            coset_of[b * x] = index
    degree = len(reps)
    gens = [Permutation.from_images(coset_of[x * g] for x in reps) for g in A.generators]
    image = generate(degree, gens)
    return InducedAction(source=(A, B), degree=degree, image=image)


# Permutation equivalence
class PermEquivalence(BaseModel):
    """λ(x^g) = λ(x)^φ(g); point_map[x - 1] = λ(x), φ given on the generators of the first group."""
    point_map: tuple[int, ...]
    generator_images: list[tuple[Permutation, Permutation]]


def _cycle_census(G: GroupTable) -> Counter:
    return Counter(p.cycle_type() for p in G.elements)


def _extend_homomorphism(P: GroupTable, gens: list[Permutation], images: list[Permutation]) -> dict | None:
    """The map P → Q sending gens to images, or None when it is not a well-defined bijection."""
    phi = {P.identity: Permutation.identity(images[0].degree)}
    queue = [P.identity]
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for g, h in zip(gens, images):
            y, target = x * g, phi[x] * h
            known = phi.get(y)
            if known is None:
                phi[y] = target
                queue.append(y)
            elif known != target:
                return None
    if len(phi) != P.order or len(set(phi.values())) != P.order:
        return None
    return phi


def _point_map(P: GroupTable, Q: GroupTable, phi: dict) -> tuple[int, ...] | None:
    """λ with λ(1) = 1 and λ(1^p) = 1^φ(p); requires φ(P_1) ≤ Q_1."""
    lam: dict[int, int] = {}
    for p, q in phi.items():
        x, y = p.images[0], q.images[0]
        if lam.setdefault(x, y) != y:
            return None
    if len(set(lam.values())) != P.degree:
        return None
    for g in P.generators:
        h = phi[g]
        if any(lam[g.images[x]] != h.images[lam[x]] for x in range(P.degree)):
            return None
    return tuple(lam[x] + 1 for x in range(P.degree))


def perm_equivalent(P: GroupTable, Q: GroupTable) -> PermEquivalence | None:
    """
    A point bijection and group isomorphism intertwining the two actions, or None.

    Generator images are searched among elements of equal cycle type, pruned by
    the cycle types of pairwise products. Fixing λ(1) = 1 loses nothing: any
    other choice differs by an inner automorphism of Q.
    """
    if not is_transitive(P) or not is_transitive(Q):
        raise NotTransitiveError('permutation equivalence is only decided for transitive groups')
    if P.degree != Q.degree or P.order != Q.order or _cycle_census(P) != _cycle_census(Q):
        return None
    gens = list(GroupTable.from_members(P.degree, P.elements).generators)
    if P == Q:
        return PermEquivalence(
            point_map=tuple(range(1, P.degree + 1)),
            generator_images=[(g, g) for g in gens],
        )

    by_type: dict[tuple, list[Permutation]] = {}
    for q in Q.elements:
        by_type.setdefault(q.cycle_type(), []).append(q)
    candidates = [by_type.get(g.cycle_type(), []) for g in gens]
    chosen: list[Permutation] = []

    def search(k: int) -> PermEquivalence | None:
        if k == len(gens):
            phi = _extend_homomorphism(P, gens, chosen)
            if phi is None:
                return None
            lam = _point_map(P, Q, phi)
            if lam is None:
                return None
            return PermEquivalence(point_map=lam, generator_images=list(zip(gens, chosen)))
        for q in candidates[k]:
            if any((gens[j] * gens[k]).cycle_type() != (chosen[j] * q).cycle_type() for j in range(k)):
                continue
            chosen.append(q)
            found = search(k + 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    return search(0)


# Jordan-Hölder property for imprimitivity systems
def jh_profile(L: IntervalLattice, chain: MaximalChain) -> list[InducedAction]:
    """The factors A_i // A_{i-1} along a chain, sorted by (degree, order)."""
    actions = [coset_action(L.nodes[y], L.nodes[x]) for x, y in zip(chain.nodes, chain.nodes[1:])]
    return sorted(actions, key=lambda a: (a.degree, a.image.order))


class JHReport(BaseModel):
    holds: bool
    chain_count: int
    lengths: list[int]
    reason: str
    counterexample: tuple[tuple[int, ...], tuple[int, ...]] | None = None


class _EquivalenceCache:
    def __init__(self):
        self._known: dict[tuple[GroupTable, GroupTable], bool] = {}

    def __call__(self, P: GroupTable, Q: GroupTable) -> bool:
        key = (P, Q)
        if key not in self._known:
            self._known[key] = self._known[(Q, P)] = perm_equivalent(P, Q) is not None
        return self._known[key]


def _profiles_match(first: list[InducedAction], second: list[InducedAction], equivalent) -> bool:
    if len(first) != len(second):
        return False
    used = [False] * len(second)

    def match(i: int) -> bool:
        if i == len(first):
            return True
        P = first[i].image
        for j, action in enumerate(second):
            Q = action.image
            if used[j] or Q.degree != P.degree or Q.order != P.order or not equivalent(P, Q):
                continue
            used[j] = True
            if match(i + 1):
                return True
            used[j] = False
        return False

    return match(0)


def jh_holds(L: IntervalLattice) -> JHReport:
    chains = enumerate_maximal_chains(L, L.bottom, L.top)
    lengths = sorted({c.length for c in chains})
    if len(lengths) > 1:
        short = next(c for c in chains if c.length == lengths[0])
        long = next(c for c in chains if c.length == lengths[-1])
        return JHReport(
            holds=False,
            chain_count=len(chains),
            lengths=lengths,
            reason=f'maximal chains of lengths {lengths[0]} and {lengths[-1]}',
            counterexample=(short.nodes, long.nodes),
        )

    actions: dict[tuple[int, int], InducedAction] = {}

    def profile(chain: MaximalChain) -> list[InducedAction]:
        for x, y in zip(chain.nodes, chain.nodes[1:]):
            if (x, y) not in actions:
                actions[(x, y)] = coset_action(L.nodes[y], L.nodes[x])
        steps = [actions[(x, y)] for x, y in zip(chain.nodes, chain.nodes[1:])]
        return sorted(steps, key=lambda a: (a.degree, a.image.order))

    equivalent = _EquivalenceCache()
    reference = profile(chains[0])
    for chain in chains[1:]:
        if not _profiles_match(reference, profile(chain), equivalent):
            return JHReport(
                holds=False,
                chain_count=len(chains),
                lengths=lengths,
                reason='induced actions are not permutation equivalent',
                counterexample=(chains[0].nodes, chain.nodes),
            )
    logger.debug('JH property holds on %d chains of length %s', len(chains), lengths)
    return JHReport(holds=True, chain_count=len(chains), lengths=lengths, reason='all chain profiles match')


class JHClassProfile(BaseModel):
    chain_count: int
    length: int
    factors: list[tuple[int, int, str]]


def jh_report(L: IntervalLattice) -> list[JHClassProfile]:
    """Per r-equivalence class, the JH profile of its first chain as (degree, order, tag)."""
    return [
        JHClassProfile(
            chain_count=len(cls),
            length=cls[0].length,
            factors=[action.describe() for action in jh_profile(L, cls[0])],
        )
        for cls in r_equivalence_classes(L, L.bottom, L.top)
    ]


# Hamiltonian subgroups
def _cyclic(g: Permutation) -> GroupTable:
    return GroupTable.from_members(g.degree, (g ** k for k in range(g.order())), [g])


def is_hamiltonian(K: GroupTable) -> bool:
    """Every subgroup is normal, equivalently every cyclic subgroup is."""
    for x in K.elements:
        powers = {x ** k for k in range(x.order())}
        for g in K.generators:
            if g.inverse() * x * g not in powers:
                return False
    return True


def _is_semiregular(K: GroupTable) -> bool:
    return all(p.is_identity or all(len(c) > 1 for c in p.all_cycles()) for p in K.elements)


def has_transitive_hamiltonian(G: GroupTable) -> GroupTable | None:
    """
    A transitive Hamiltonian subgroup K ≤ G, or None.

    Such K is regular, so the search joins cyclic semiregular subgroups and
    keeps only semiregular Hamiltonian joins of order dividing n.
    """
    n = G.degree
    if n == 1:
        return G
    seeds: dict[frozenset, GroupTable] = {}
    for g in G.elements:
        if g.is_identity or n % g.order():
            continue
        C = _cyclic(g)
        if _is_semiregular(C):
            seeds.setdefault(C.members, C)

    found: dict[frozenset, GroupTable] = dict(seeds)
    queue = list(seeds.values())
    while queue:
        X = queue.pop(0)
        if X.order == n and is_hamiltonian(X):
            logger.debug('transitive Hamiltonian subgroup %s of order %d', structure_tag(X), n)
            return X
        for S in seeds.values():
            if S <= X:
                continue
            Y = join_subgroups(X, S)
            if Y.members in found or n % Y.order:
                continue
            found[Y.members] = Y
            if _is_semiregular(Y) and is_hamiltonian(Y):
                queue.append(Y)
    return None


# L_c(G_omega, G) = L(G_omega, G)
def lc_equals_l(G: GroupTable, omega: int, L: IntervalLattice | None = None) -> bool:
    """Every subgroup between the point stabilizer and G is core-complementary."""
    L = L or build_interval(G, omega)
    return all(is_core_complementary(G, omega, X) for X in L.nodes)
