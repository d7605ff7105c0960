import pytest
from errors import LatticeError
from interval import divisor_lattice
from lattice import FiniteLattice, find_isomorphism


@pytest.fixture
def pentagon():
    # 0 < 1 < 2 < 4 and 0 < 3 < 4
    return FiniteLattice.from_covers('01234', [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])


def test_pentagon_order(pentagon):
    assert pentagon.bottom == 0
    assert pentagon.top == 4
    assert pentagon.leq(1, 4)
    assert not pentagon.leq(3, 2)
    assert pentagon.covers == ((0, 1), (0, 3), (1, 2), (2, 4), (3, 4))
    assert pentagon.upper_covers(0) == (1, 3)
    assert pentagon.lower_covers(4) == (2, 3)


def test_pentagon_meet_and_join(pentagon):
    assert pentagon.meet(2, 3) == 0
    assert pentagon.join(1, 3) == 4
    assert pentagon.meet(1, 2) == 1
    assert pentagon.join(1, 2) == 2


def test_heights(pentagon):
    assert pentagon.heights() == [0, 1, 2, 1, 3]


def test_interval(pentagon):
    sub, index = pentagon.interval(1, 4)
    assert index == [1, 2, 4]
    assert sub.covers == ((0, 1), (1, 2))
    with pytest.raises(LatticeError):
        pentagon.interval(3, 2)


def test_poset_without_bottom():
    with pytest.raises(LatticeError):
        FiniteLattice.from_covers('abc', [(0, 2), (1, 2)])


def test_missing_join():
    # two atoms with two minimal upper bounds
    L = FiniteLattice.from_covers('0abcd1', [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)])
    with pytest.raises(LatticeError, match='no join'):
        L.join(1, 2)


def test_divisor_lattices_isomorphism():
    L12 = divisor_lattice(12).as_lattice()
    L18 = divisor_lattice(18).as_lattice()
    L30 = divisor_lattice(30).as_lattice()
    mapping = find_isomorphism(L12, L18)
    assert mapping is not None
    assert all(L12.is_cover(a, b) == L18.is_cover(mapping[a], mapping[b]) for a in range(6) for b in range(6))
    assert find_isomorphism(L12, L30) is None


def test_pentagon_is_not_a_chain(pentagon):
    chain = FiniteLattice.from_covers('01234', [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert find_isomorphism(pentagon, chain) is None
