import pytest
from perm import generate, parse_cycles, point_stabilizer
from structure import abelian_invariants, center, is_abelian, is_cyclic, is_dihedral, is_normal, structure_tag


@pytest.mark.parametrize(
    'name, tag',
    [
        ('s4', 'S4'),
        ('a4', 'A4'),
        ('d8', 'D8'),
        ('d12', 'D12'),
        ('q8', 'Q8'),
        ('c12', 'C12'),
        ('f20', 'F20'),
        ('sl23', 'SL(2,3)'),
        ('a5', 'A5'),
        ('s3wrc3', 'G648'),
    ],
)
def test_structure_tags_of_sample_groups(group, name, tag):
    assert structure_tag(group(name)) == tag


def test_small_tags(perm_group):
    assert structure_tag(perm_group(4, '(1 2)(3 4)', '(1 3)(2 4)')) == 'V4'
    assert structure_tag(perm_group(3, '(1 2 3)', '(1 2)')) == 'S3'
    assert structure_tag(perm_group(8, '(1 2)', '(3 4 5 6 7 8)')) == 'C2xC6'
    assert structure_tag(perm_group(4, '()')) == 'e'


def test_abelian_invariants(perm_group):
    assert abelian_invariants(perm_group(8, '(1 2)', '(3 4 5 6 7 8)')) == [2, 6]
    assert abelian_invariants(perm_group(12, '(1 2 3 4 5 6 7 8 9 10 11 12)')) == [12]


def test_predicates(group):
    assert is_cyclic(group('c12'))
    assert not is_abelian(group('d8'))
    assert is_abelian(group('c12'))
    assert len(center(group('q8'))) == 2
    assert len(center(group('a5'))) == 1


def test_is_dihedral(group, perm_group):
    assert is_dihedral(group('d8')) == 4
    assert is_dihedral(group('d16')) == 8
    assert is_dihedral(group('d12', regular=True)) == 6
    assert is_dihedral(group('q8')) is None
    assert is_dihedral(group('a4')) is None
    # degenerate cases
    assert is_dihedral(perm_group(4, '(1 2)(3 4)', '(1 3)(2 4)')) == 2
    assert is_dihedral(perm_group(2, '(1 2)')) == 1


def test_is_normal(group):
    S4 = group('s4')
    V4 = generate(4, [parse_cycles('(1 2)(3 4)', 4), parse_cycles('(1 3)(2 4)', 4)])
    assert is_normal(V4, S4)
    assert is_normal(group('a4'), S4)
    assert not is_normal(point_stabilizer(S4, 1), S4)
