import pytest
from errors import NotSubgroupError, NotTransitiveError
from jh import coset_action, has_transitive_hamiltonian, is_hamiltonian, jh_holds, jh_report, lc_equals_l, perm_equivalent
from perm import Permutation, generate, is_transitive, parse_cycles, point_stabilizer


# Coset actions
def test_natural_action_is_recovered(group):
    S4 = group('s4')
    action = coset_action(S4, point_stabilizer(S4, 1))
    assert action.describe() == (4, 24, 'S4')


def test_coset_action_on_the_center(group, perm_group):
    action = coset_action(group('d8'), perm_group(4, '(1 3)(2 4)'))
    assert action.describe() == (4, 4, 'V4')
    assert is_transitive(action.image)


def test_trivial_coset_action(group):
    A4 = group('a4')
    action = coset_action(A4, A4)
    assert action.degree == 1
    assert action.image.order == 1


def test_coset_action_needs_a_subgroup(group, perm_group):
    with pytest.raises(NotSubgroupError):
        coset_action(group('a4'), perm_group(4, '(1 2)'))


# Permutation equivalence
def test_relabelled_dihedral_group_is_equivalent(group, perm_group):
    P = group('d8')
    # conjugate by (2 3)
    Q = perm_group(4, '(1 3 2 4)', '(1 2)')
    witness = perm_equivalent(P, Q)
    assert witness is not None
    assert witness.point_map[0] == 1
    assert sorted(witness.point_map) == [1, 2, 3, 4]
    lam = witness.point_map
    for g, h in witness.generator_images:
        assert g.cycle_type() == h.cycle_type()
        for x in range(1, 5):
            assert lam[g.image(x) - 1] == h.image(lam[x - 1])


def test_identical_groups(group):
    witness = perm_equivalent(group('a4'), group('a4'))
    assert witness.point_map == (1, 2, 3, 4)


def test_cyclic_and_klein_groups_differ(perm_group):
    C4 = perm_group(4, '(1 2 3 4)')
    V4 = perm_group(4, '(1 2)(3 4)', '(1 3)(2 4)')
    assert perm_equivalent(C4, V4) is None


def test_equivalence_needs_transitive_groups(perm_group):
    with pytest.raises(NotTransitiveError):
        perm_equivalent(perm_group(4, '(1 2)'), perm_group(4, '(1 2 3 4)'))


# Jordan-Hölder property
def test_jh_fails_on_chains_of_different_lengths(interval):
    report = jh_holds(interval('a4', regular=True))
    assert not report.holds
    assert report.lengths == [2, 3]
    assert report.chain_count == 7
    short, long = report.counterexample
    assert (len(short), len(long)) == (3, 4)


@pytest.mark.parametrize('name, regular', [('c12', True), ('d8', True), ('d12', False)])
def test_jh_holds(interval, name, regular):
    report = jh_holds(interval(name, regular=regular))
    assert report.holds
    assert len(report.lengths) == 1


def test_jh_report_a4(interval):
    profiles = jh_report(interval('a4', regular=True))
    assert [(p.chain_count, p.length) for p in profiles] == [(3, 3), (4, 2)]
    assert profiles[0].factors == [(2, 2, 'C2'), (2, 2, 'C2'), (3, 3, 'C3')]
    assert profiles[1].factors == [(3, 3, 'C3'), (4, 12, 'A4')]


def test_jh_report_natural_hexagon(interval):
    (profile,) = jh_report(interval('d12'))
    assert profile.factors == [(2, 2, 'C2'), (3, 6, 'S3')]


# Hamiltonian subgroups
def test_is_hamiltonian(group):
    assert is_hamiltonian(group('q8'))
    assert is_hamiltonian(group('c12'))
    assert not is_hamiltonian(group('d8'))


@pytest.mark.parametrize('name, order', [('q8', 8), ('c12', 12), ('s4', 4), ('a5', 5), ('f20', 5)])
def test_transitive_hamiltonian_subgroup(group, name, order):
    K = has_transitive_hamiltonian(group(name))
    assert K is not None
    assert K.order == order
    assert is_transitive(K)
    assert K <= group(name)


def test_no_transitive_hamiltonian_subgroup(group):
    assert has_transitive_hamiltonian(group('a4', regular=True)) is None


def test_trivial_group_is_its_own_hamiltonian_subgroup():
    trivial = generate(1, [Permutation.from_images([0])])
    assert has_transitive_hamiltonian(trivial) == trivial


# Core-complementary intervals
def test_lc_equals_l(group):
    assert lc_equals_l(group('s4'), 1)
    assert lc_equals_l(group('c12', regular=True), 1)
    assert not lc_equals_l(group('d8', regular=True), 1)
