# Shared fixtures: the shipped group corpus and its interval lattices
import pytest
from interval import build_interval
from perm import GroupTable, generate, parse_cycles
from sample_data import load_sample

collect_ignore = ['examples']


@pytest.fixture(scope='session')
def group():
    cache: dict[tuple[str, bool], GroupTable] = {}

    def load(name: str, regular: bool = False) -> GroupTable:
        key = (name, regular)
        if key not in cache:
            cache[key] = load_sample(name, regular=regular)
        return cache[key]

    return load


@pytest.fixture(scope='session')
def interval(group):
    cache = {}

    def build(name: str, regular: bool = False, point: int = 1):
        key = (name, regular, point)
        if key not in cache:
            cache[key] = build_interval(group(name, regular), point)
        return cache[key]

    return build


@pytest.fixture
def perm_group():
    """Group generated by permutations given in cycle notation."""
    def make(degree: int, *cycles: str) -> GroupTable:
        return generate(degree, [parse_cycles(c, degree) for c in cycles])

    return make
