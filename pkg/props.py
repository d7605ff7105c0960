# Modules
import logging
from pydantic import BaseModel, ConfigDict
from blocks import core, product_set
from errors import DegreeMismatchError, HypothesisError, InvariantViolation, NotTransitiveError
from interval import IntervalLattice, enumerate_overgroups, lattice_of_subgroups
from lattice import FiniteLattice, find_isomorphism
from perm import (
    GroupTable,
    Permutation,
    generate,
    intersection,
    is_transitive,
    join_subgroups,
    parse_cycles,
    point_stabilizer,
    two_orbit_generators,
)
from structure import is_dihedral, is_normal

logger = logging.getLogger(__name__)


# Permutability
def are_permutable(A: GroupTable, B: GroupTable) -> bool:
    """AB = BA as element sets."""
    if A.degree != B.degree:
        raise DegreeMismatchError('subgroups act on different degrees')
    if A <= B or B <= A:
        return True
    return product_set(A, B) == product_set(B, A)


class IndexInequality(BaseModel):
    lhs: int
    rhs: int
    equality: bool
    permutable: bool


def index_inequality_check(A: GroupTable, B: GroupTable) -> IndexInequality:
    """[⟨A,B⟩:B] ≥ [A:A∩B], with equality exactly when A and B permute."""
    lhs = join_subgroups(A, B).order // B.order
    rhs = A.order // intersection(A, B).order
    permutable = are_permutable(A, B)
    if lhs < rhs or (lhs == rhs) != permutable:
        raise InvariantViolation(
            'index inequality does not match permutability',
            {'lhs': lhs, 'rhs': rhs, 'permutable': permutable},
        )
    return IndexInequality(lhs=lhs, rhs=rhs, equality=lhs == rhs, permutable=permutable)


# Semimodularity
def _incomparable_pairs(L: FiniteLattice):
    for a in range(L.size):
        for b in range(a + 1, L.size):
            if not L.leq(a, b) and not L.leq(b, a):
                yield a, b


def semimodular_violations(L: FiniteLattice) -> list[tuple[int, int]]:
    """Pairs where a∧b <· a, b holds but a, b <· a∨b does not."""
    found = []
    for a, b in _incomparable_pairs(L):
        m, j = L.meet(a, b), L.join(a, b)
        if L.is_cover(m, a) and L.is_cover(m, b) and not (L.is_cover(a, j) and L.is_cover(b, j)):
            found.append((a, b))
    return found


def lower_semimodular_violations(L: FiniteLattice) -> list[tuple[int, int]]:
    """Pairs where a, b <· a∨b holds but a∧b <· a, b does not."""
    found = []
    for a, b in _incomparable_pairs(L):
        m, j = L.meet(a, b), L.join(a, b)
        if L.is_cover(a, j) and L.is_cover(b, j) and not (L.is_cover(m, a) and L.is_cover(m, b)):
            found.append((a, b))
    return found


def is_semimodular(L: FiniteLattice) -> bool:
    return not semimodular_violations(L)


def is_lower_semimodular(L: FiniteLattice) -> bool:
    return not lower_semimodular_violations(L)


def is_modular(L: FiniteLattice) -> bool:
    return is_semimodular(L) and is_lower_semimodular(L)


# Dihedral intervals
class DihedralWitness(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int
    normal_subgroup: GroupTable
    top: GroupTable
    quotient_generators: tuple[Permutation, Permutation]
    interval_isomorphic: bool


def dihedral_group(m: int) -> GroupTable:
    """D_2m as a permutation group: natural on m points for m ≥ 3, V4 and C2 for m = 2, 1."""
    if m == 1:
        return generate(2, [parse_cycles('(1 2)', 2)])
    if m == 2:
        return generate(4, [parse_cycles('(1 2)(3 4)', 4), parse_cycles('(1 3)(2 4)', 4)])
    rotation = Permutation.from_images([(i + 1) % m for i in range(m)])
    reflection = Permutation.from_images([(-i) % m for i in range(m)])
    return generate(m, [rotation, reflection])


def subgroup_lattice(H: GroupTable) -> FiniteLattice:
    return lattice_of_subgroups(enumerate_overgroups(GroupTable.from_members(H.degree, [H.identity]), H))


def _coset_order(x: Permutation, N: GroupTable) -> int:
    k, y = 1, x
    while y not in N:
        y = y * x
        k += 1
    return k


def dihedral_quotient_check(G: GroupTable, E: GroupTable, F: GroupTable) -> DihedralWitness | None:
    """
    For [E:E∩F] = [F:E∩F] = 2, the witness that ⟨E,F⟩/(E∩F) ≅ D_2m.

    Verifies normality of E∩F, the dihedral relations of two coset
    representatives and the lattice isomorphism L(E∩F, ⟨E,F⟩) ≅ L(D_2m).
    Returns None when the index hypothesis fails.
    """
    if E == F:
        return None
    N = intersection(E, F)
    if E.order != 2 * N.order or F.order != 2 * N.order:
        return None
    J = join_subgroups(E, F)
    evidence = {'E': E.order, 'F': F.order, 'join': J.order}
    if not is_normal(N, J):
        raise InvariantViolation('E∩F is not normal in ⟨E,F⟩', evidence)
    m = J.order // N.order // 2
    e = next(x for x in E.elements if x not in N)
    f = next(x for x in F.elements if x not in N)
    if _coset_order(e, N) != 2 or _coset_order(f, N) != 2 or _coset_order(e * f, N) != m:
        raise InvariantViolation(f'quotient of order {2 * m} fails the dihedral relations', evidence)
    if N.order == 1 and is_dihedral(J) != m:
        raise InvariantViolation('⟨E,F⟩ is not recognized as dihedral', evidence)

    interval = lattice_of_subgroups(enumerate_overgroups(N, J))
    isomorphic = find_isomorphism(interval, subgroup_lattice(dihedral_group(m))) is not None
    if not isomorphic:
        raise InvariantViolation(f'L(E∩F, ⟨E,F⟩) is not isomorphic to L(D{2 * m})', evidence)
    return DihedralWitness(
        m=m,
        normal_subgroup=N,
        top=J,
        quotient_generators=(e, f),
        interval_isomorphic=isomorphic,
    )


def modularity_witness(G: GroupTable, L: IntervalLattice) -> DihedralWitness | None:
    """
    A dihedral interval explaining a failure of modularity, or None.

    Looks at the semimodularity violations (E, F) with [E:E∩F] = [F:E∩F] = 2
    and returns the witness with the smallest E∩F.
    """
    best: DihedralWitness | None = None
    for a, b in semimodular_violations(L):
        witness = dihedral_quotient_check(G, L.nodes[a], L.nodes[b])
        if witness is None:
            continue
        if best is None or witness.normal_subgroup.order < best.normal_subgroup.order:
            best = witness
    return best


# Lifting non-permutable pairs to pairs with equal cores
def lift_nonpermutable(G: GroupTable, A: GroupTable, B: GroupTable) -> tuple[GroupTable, GroupTable]:
    """
    Replace (A, B) by (A·core_G(B), B·core_G(A)) until the cores agree.

    Each step keeps the pair non-permutable and either enlarges a subgroup or stops.
    """
    if are_permutable(A, B):
        raise HypothesisError('the subgroups are permutable')
    while True:
        core_a, core_b = core(G, A), core(G, B)
        if core_a == core_b:
            return A, B
        lifted_a, lifted_b = join_subgroups(A, core_b), join_subgroups(B, core_a)
        if lifted_a == A and lifted_b == B:
            raise InvariantViolation('cores differ but neither subgroup grows', {'orders': (A.order, B.order)})
        if are_permutable(lifted_a, lifted_b):
            raise InvariantViolation('lifting produced a permutable pair', {'orders': (lifted_a.order, lifted_b.order)})
        logger.debug('lifted pair of orders (%d, %d) to (%d, %d)', A.order, B.order, lifted_a.order, lifted_b.order)
        A, B = lifted_a, lifted_b


def nonpermutable_dihedral_witness(G: GroupTable, omega: int, E: GroupTable, F: GroupTable) -> DihedralWitness:
    """
    N ⊴ G with E∩F ≤ N and G/N dihedral, for non-permutable E, F generating G.

    G must be transitive with a cyclic subgroup with two orbits, and both
    E and F must contain the stabilizer of omega.
    """
    if not is_transitive(G):
        raise NotTransitiveError('the group is not transitive')
    stabilizer = point_stabilizer(G, omega)
    if not (stabilizer <= E and stabilizer <= F):
        raise HypothesisError(f'the subgroups must contain the stabilizer of {omega}')
    if not two_orbit_generators(G):
        raise HypothesisError('the group has no cyclic subgroup with two orbits')
    if are_permutable(E, F):
        raise HypothesisError('the subgroups are permutable')
    if join_subgroups(E, F) != G:
        raise HypothesisError('the subgroups do not generate the group')
    lifted_e, lifted_f = lift_nonpermutable(G, E, F)
    witness = dihedral_quotient_check(G, lifted_e, lifted_f)
    evidence = {'lifted_orders': (lifted_e.order, lifted_f.order)}
    if witness is None:
        raise InvariantViolation('lifted pair does not have index 2 over its intersection', evidence)
    if witness.top != G or not is_normal(witness.normal_subgroup, G):
        raise InvariantViolation('lifted intersection is not normal in the group', evidence)
    if not intersection(E, F) <= witness.normal_subgroup:
        raise InvariantViolation('E∩F is not contained in the normal subgroup', evidence)
    return witness
