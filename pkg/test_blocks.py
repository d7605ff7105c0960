import pytest
from blocks import (
    BlockSystem,
    HKind,
    all_block_systems,
    block_stabilizer,
    classify_H,
    core,
    is_core_complementary,
    is_normal_system,
    join_systems,
    kernel_on_blocks,
    meet_systems,
    minimal_block_system,
    normal_refinement,
    normal_system,
    system_from_subgroup,
)
from errors import BlockSystemError, HypothesisError, NotTransitiveError
from perm import GroupTable, generate, parse_cycles, point_stabilizer, two_orbit_generators
from structure import center


def _subgroup(degree, *cycles):
    return generate(degree, [parse_cycles(c, degree) for c in cycles])


def _reflection_subgroup(G: GroupTable) -> GroupTable:
    z = center(G)
    s = next(g for g in G.elements if g.order() == 2 and g not in z)
    return GroupTable.from_members(G.degree, [G.identity, s])


# Block systems
def test_dihedral_square_systems(group):
    systems = all_block_systems(group('d8'), 1)
    assert [str(E) for E in systems] == ['1 | 2 | 3 | 4', '1 3 | 2 4', '1 2 3 4']


def test_natural_s4_is_primitive(group):
    systems = all_block_systems(group('s4'), 1)
    assert systems == [BlockSystem.singletons(4), BlockSystem.one_block(4)]


def test_regular_a4_systems(group):
    assert len(all_block_systems(group('a4', regular=True), 1)) == 10


def test_minimal_block_system(group):
    D8 = group('d8')
    assert minimal_block_system(D8, 1, 3) == BlockSystem.from_blocks(4, [[1, 3], [2, 4]])
    assert minimal_block_system(D8, 1, 2) == BlockSystem.one_block(4)
    assert minimal_block_system(D8, 2, 2) == BlockSystem.singletons(4)


def test_two_orbit9_blocks(group):
    systems = all_block_systems(group('two_orbit9'), 1)
    assert BlockSystem.from_blocks(9, [[1, 4, 7], [2, 5, 8], [3, 6, 9]]) in systems


def test_intransitive_group_rejected(perm_group):
    with pytest.raises(NotTransitiveError):
        all_block_systems(perm_group(4, '(1 2)', '(3 4)'), 1)


def test_join_and_meet_of_systems():
    E = BlockSystem.from_blocks(6, [[1, 4], [2, 5], [3, 6]])
    F = BlockSystem.from_blocks(6, [[1, 3, 5], [2, 4, 6]])
    assert join_systems(E, F) == BlockSystem.one_block(6)
    assert meet_systems(E, F) == BlockSystem.singletons(6)
    assert E.refines(join_systems(E, F))
    assert not E.refines(F)


def test_partition_validator():
    with pytest.raises(ValueError):
        BlockSystem.from_blocks(4, [[1, 2], [3]])
    with pytest.raises(ValueError):
        BlockSystem.from_blocks(4, [[1, 2, 3], [4]])


# Stabilizers, kernels and cores
def test_block_stabilizer_round_trip(group):
    G = group('a4', regular=True)
    for E in all_block_systems(G, 1):
        K = block_stabilizer(G, E, 1)
        assert K.order == E.block_size
        assert system_from_subgroup(G, 1, K) == E


def test_block_stabilizer_needs_invariant_partition(group):
    with pytest.raises(BlockSystemError):
        block_stabilizer(group('d8'), BlockSystem.from_blocks(4, [[1, 2], [3, 4]]), 1)


def test_kernel_on_blocks(group):
    D8 = group('d8')
    E = BlockSystem.from_blocks(4, [[1, 3], [2, 4]])
    kernel = kernel_on_blocks(D8, E)
    assert kernel.order == 4
    assert is_normal_system(D8, E)


def test_core(group):
    S4 = group('s4')
    assert core(S4, point_stabilizer(S4, 1)).order == 1
    assert core(S4, group('a4')).order == 12


def test_core_complementary(group):
    G = group('d8', regular=True)
    assert not is_core_complementary(G, 1, _reflection_subgroup(G))
    rotations = _subgroup(8, *[str(h) for h in two_orbit_generators(G)])
    assert is_core_complementary(G, 1, rotations)


def test_system_from_subgroup_needs_stabilizer(group):
    D8 = group('d8')
    with pytest.raises(HypothesisError):
        system_from_subgroup(D8, 1, _subgroup(4, '(1 3)'))


def test_normal_system(group):
    D8 = group('d8')
    assert normal_system(D8, _subgroup(4, '(1 3)(2 4)')) == BlockSystem.from_blocks(4, [[1, 3], [2, 4]])
    with pytest.raises(HypothesisError):
        normal_system(D8, _subgroup(4, '(1 3)'))


# Two-orbit elements
def test_classify_h_transitive():
    h = parse_cycles('(1 2 3 4 5 6)(7 8 9)', 9)
    E = BlockSystem.from_blocks(9, [[1, 4, 7], [2, 5, 8], [3, 6, 9]])
    result = classify_H(h, E)
    assert result.kind == HKind.TRANSITIVE
    assert (result.n1, result.n2, result.d) == (6, 3, 3)


def test_classify_h_intransitive():
    h = parse_cycles('(1 3)(2 4)', 4)
    result = classify_H(h, BlockSystem.from_blocks(4, [[1, 3], [2, 4]]))
    assert result.kind == HKind.INTRANSITIVE
    assert (result.d1, result.d2, result.block_size) == (1, 1, 2)
    assert classify_H(h, BlockSystem.one_block(4)).kind == HKind.TRANSITIVE


def test_classify_h_needs_two_orbits():
    with pytest.raises(HypothesisError):
        classify_H(parse_cycles('(1 3)', 4), BlockSystem.singletons(4))


def test_normal_refinement_of_regular_dihedral_group(group):
    G = group('d8', regular=True)
    E = system_from_subgroup(G, 1, _reflection_subgroup(G))
    h = two_orbit_generators(G)[0]
    assert classify_H(h, E).kind == HKind.TRANSITIVE
    assert not is_normal_system(G, E)
    assert normal_refinement(G, E, h) == BlockSystem.singletons(8)


def test_normal_refinement_rejects_normal_systems(group):
    G = group('d8', regular=True)
    h = two_orbit_generators(G)[0]
    with pytest.raises(HypothesisError):
        normal_refinement(G, BlockSystem.one_block(8), h)
