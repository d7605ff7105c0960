# Modules
import logging
from math import lcm
from pathlib import Path
from typing import Iterable
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator
from config import settings
from errors import (
    DegreeMismatchError,
    NotSubgroupError,
    OrderCapExceeded,
    ParseError,
    PointOutOfRangeError,
)
from union_find import find_orbits

logger = logging.getLogger(__name__)


# Permutation
class Permutation(BaseModel):
    """
    A bijection of the points {1..n}.

    Images are stored 0-based. Products act left to right, so
    (p * q)(x) = q(p(x)) and x^(pq) = (x^p)^q.
    """
    model_config = ConfigDict(frozen=True)

    images: tuple[int, ...]

    @field_validator('images')
    @classmethod
    def _is_bijection(cls, images: tuple[int, ...]) -> tuple[int, ...]:
        if not images:
            raise ValueError('a permutation needs at least one point')
        if sorted(images) != list(range(len(images))):
            raise ValueError('images must be a bijection on {0..n-1}')
        return images

    @classmethod
    def from_images(cls, images: Iterable[int]) -> 'Permutation':
        return cls.model_construct(images=tuple(images))

    @classmethod
    def identity(cls, degree: int) -> 'Permutation':
        return cls.model_construct(images=tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def image(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def inverse(self) -> 'Permutation':
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation.model_construct(images=tuple(inv))

    def all_cycles(self) -> list[tuple[int, ...]]:
        """Every cycle including fixed points, 1-based, each starting at its smallest point."""
        seen = [False] * len(self.images)
        result = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x + 1)
                x = self.images[x]
            result.append(tuple(cycle))
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        return [c for c in self.all_cycles() if len(c) > 1]

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.all_cycles()), reverse=True))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.all_cycles()))

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        return compose(self, other)

    def __pow__(self, k: int) -> 'Permutation':
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k) % self.order()):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: 'Permutation') -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        return format_cycles(self)


# Generators of a group
class GroupSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    degree: int = Field(gt=0)
    generators: tuple[Permutation, ...] = Field(min_length=1)
    name: str = ''

    @model_validator(mode='after')
    def _same_degree(self) -> 'GroupSpec':
        for g in self.generators:
            if g.degree != self.degree:
                raise ValueError(f'generator {g} has degree {g.degree}, expected {self.degree}')
        return self


# Fully enumerated group
class GroupTable(BaseModel):
    """A small permutation group with its sorted element list. Equality is equality of element sets."""
    model_config = ConfigDict(frozen=True)

    spec: GroupSpec
    elements: tuple[Permutation, ...]
    order: int

    _members: frozenset = PrivateAttr(default_factory=frozenset)

    def model_post_init(self, __context) -> None:
        self._members = frozenset(self.elements)

    @classmethod
    def from_members(
        cls,
        degree: int,
        members: Iterable[Permutation],
        generators: Iterable[Permutation] | None = None,
        name: str = '',
    ) -> 'GroupTable':
        """Wrap an element set already known to be a group."""
        elements = tuple(sorted(set(members)))
        gens = tuple(generators) if generators is not None else _generating_set(degree, elements)
        if not gens:
            gens = (Permutation.identity(degree),)
        spec = GroupSpec.model_construct(degree=degree, generators=gens, name=name)
        return cls.model_construct(spec=spec, elements=elements, order=len(elements))

    @property
    def degree(self) -> int:
        return self.spec.degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self.spec.generators

    @property
    def members(self) -> frozenset:
        return self._members

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, p: Permutation) -> bool:
        return p in self._members

    def __le__(self, other: 'GroupTable') -> bool:
        return self._members <= other._members

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupTable) and self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)


# Closure
def _closure(
    generators: Iterable[Permutation],
    degree: int,
    cap: int | None = None,
    seed: Iterable[Permutation] = (),
) -> set[tuple[int, ...]]:
    """Image tuples of the group generated by generators (and seed, which must lie in it)."""
    gens = [g.images for g in generators if not g.is_identity]
    found = {tuple(range(degree))}
    found.update(p.images for p in seed)
    queue = list(found)
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for g in gens:
            y = tuple(g[k] for k in x)
            if y not in found:
                found.add(y)
                queue.append(y)
                if cap is not None and len(found) > cap:
                    raise OrderCapExceeded(cap)
    return found


def _generating_set(degree: int, elements: Iterable[Permutation]) -> tuple[Permutation, ...]:
    gens: list[Permutation] = []
    current = {tuple(range(degree))}
    for p in sorted(elements, key=lambda p: (-p.order(), p.images)):
        if p.images not in current:
            gens.append(p)
            current = _closure(gens, degree)
    return tuple(gens)


def _table(degree: int, images: set[tuple[int, ...]], generators, name: str = '') -> GroupTable:
    elements = tuple(Permutation.model_construct(images=x) for x in sorted(images))
    gens = tuple(g for g in generators if not g.is_identity) or (Permutation.identity(degree),)
    spec = GroupSpec.model_construct(degree=degree, generators=gens, name=name)
    return GroupTable.model_construct(spec=spec, elements=elements, order=len(elements))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """x ↦ q(p(x)): apply p first, then q."""
    if p.degree != q.degree:
        raise DegreeMismatchError(f'cannot compose permutations of degree {p.degree} and {q.degree}')
    qi = q.images
    return Permutation.model_construct(images=tuple(qi[i] for i in p.images))


def close(spec: GroupSpec, cap: int | None = None) -> GroupTable:
    cap = settings.order_cap if cap is None else cap
    images = _closure(spec.generators, spec.degree, cap)
    logger.debug('closed %s: degree %d, order %d', spec.name or 'group', spec.degree, len(images))
    table = _table(spec.degree, images, spec.generators, spec.name)
    return table.model_copy(update={'spec': spec})


def generate(degree: int, generators: Iterable[Permutation], cap: int | None = None) -> GroupTable:
    """Subgroup generated by the given permutations."""
    gens = tuple(generators)
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatchError(f'generator {g} has degree {g.degree}, expected {degree}')
    return _table(degree, _closure(gens, degree, cap), gens)


def join_subgroups(A: GroupTable, B: GroupTable, cap: int | None = None) -> GroupTable:
    """⟨A, B⟩, seeded with the elements of A."""
    if A.degree != B.degree:
        raise DegreeMismatchError('subgroups act on different degrees')
    if B <= A:
        return A
    if A <= B:
        return B
    extra = [g for g in B.generators if g not in A]
    gens = A.generators + tuple(extra)
    images = _closure(gens, A.degree, cap, seed=A.elements)
    return _table(A.degree, images, gens)


def intersection(A: GroupTable, B: GroupTable) -> GroupTable:
    return GroupTable.from_members(A.degree, A.members & B.members)


def is_subgroup(A: GroupTable, G: GroupTable) -> bool:
    return A.degree == G.degree and A <= G


def require_subgroup(A: GroupTable, G: GroupTable, what: str = 'subgroup') -> None:
    if not is_subgroup(A, G):
        raise NotSubgroupError(f'{what} is not contained in the group')


# Orbits and stabilizers
def _check_point(point: int, degree: int) -> None:
    if not 1 <= point <= degree:
        raise PointOutOfRangeError(f'point {point} is outside 1..{degree}')


def orbits(elements: Iterable[Permutation], degree: int) -> list[list[int]]:
    """Orbit partition of the group generated by elements, 1-based, singletons included."""
    classes = find_orbits(list(elements), range(degree), lambda g, x: g.images[x])
    return [[x + 1 for x in orbit] for orbit in classes]


def orbit(G: GroupTable, point: int) -> list[int]:
    _check_point(point, G.degree)
    for o in orbits(G.generators, G.degree):
        if point in o:
            return o
    return [point]


def is_transitive(G: GroupTable) -> bool:
    return len(orbits(G.generators, G.degree)) == 1


def point_stabilizer(G: GroupTable, point: int) -> GroupTable:
    _check_point(point, G.degree)
    w = point - 1
    return GroupTable.from_members(G.degree, (g for g in G.elements if g.images[w] == w))


def two_orbit_generators(G: GroupTable, orbit_count: int = 2) -> list[Permutation]:
    """
    One generator per cyclic subgroup ⟨h⟩ ≤ G with exactly orbit_count orbits.

    The number of ⟨h⟩-orbits equals the number of cycles of h, fixed points included.
    The representative is the smallest generator of the cyclic subgroup.
    """
    seen: set[frozenset] = set()
    found = []
    for h in G.elements:
        if len(h.all_cycles()) != orbit_count:
            continue
        powers = frozenset(h ** k for k in range(h.order()))
        if powers in seen:
            continue
        seen.add(powers)
        found.append(min(p for p in powers if p.order() == h.order()))
    return sorted(found)


def regular_representation(G: GroupTable, name: str = '') -> GroupSpec:
    """
    Right-regular action x ↦ x·g on the sorted element list.

    Point i+1 is G.elements[i]; point 1 is the identity, so its stabilizer is trivial.
    """
    index = {p: i for i, p in enumerate(G.elements)}
    gens = tuple(
        Permutation.from_images(index[e * g] for e in G.elements)
        for g in G.generators
        if not g.is_identity
    ) or (Permutation.identity(G.order),)
    return GroupSpec(degree=G.order, generators=gens, name=name or f'{G.spec.name}_regular'.lstrip('_'))


# Cycle notation
def parse_cycles(text: str, degree: int) -> Permutation:
    if degree < 1:
        raise ParseError('degree must be positive')
    images = list(range(degree))
    seen: set[int] = set()
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != '(':
            raise ParseError(f'unexpected character {ch!r}', position=pos, expected=['('])
        pos += 1
        cycle: list[int] = []
        while True:
            while pos < n and (text[pos].isspace() or text[pos] == ','):
                pos += 1
            if pos >= n:
                raise ParseError('unclosed cycle', position=pos, expected=[')'])
            ch = text[pos]
            if ch == ')':
                pos += 1
                break
            if not ch.isdigit():
                raise ParseError(f'unexpected character {ch!r}', position=pos, expected=['point', ')'])
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            point = int(text[start:pos])
            if not 1 <= point <= degree:
                raise ParseError(f'point out of range: {point} not in 1..{degree}', position=start)
            if point in seen:
                raise ParseError(f'repeated point {point}', position=start)
            seen.add(point)
            cycle.append(point - 1)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
    return Permutation.from_images(images)


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return '()'
    return ''.join('(' + ' '.join(str(x) for x in c) + ')' for c in cycles)


# Group files
def parse_group_text(text: str, name: str = '') -> GroupSpec:
    """
    Parse the group file format.

    The first meaningful line is the degree, every further nonempty line that
    is not a comment is one generator in cycle notation.
    """
    degree: int | None = None
    generators: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if degree is None:
            try:
                degree = int(line)
            except ValueError:
                raise ParseError(f'expected the degree, got {line!r}', line=lineno, expected=['integer']) from None
            if degree < 1:
                raise ParseError('degree must be positive', line=lineno)
            continue
        try:
            generators.append(parse_cycles(line, degree))
        except ParseError as exc:
            raise ParseError(exc.message, position=exc.position, line=lineno, expected=exc.expected) from exc
    if not generators:
        raise ParseError('no generators')
    return GroupSpec(degree=degree, generators=tuple(generators), name=name)


def load_group_file(path: str | Path) -> GroupSpec:
    path = Path(path)
    return parse_group_text(path.read_text(), name=path.stem)


def format_group_file(spec: GroupSpec, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f'# {line}' for line in comment.splitlines())
    lines.append(str(spec.degree))
    lines.extend(format_cycles(g) for g in spec.generators)
    return '\n'.join(lines) + '\n'
