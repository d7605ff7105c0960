# Modules
from collections import Counter
from sympy import factorint
from perm import GroupTable, Permutation


# Element and group predicates
def element_order(p: Permutation) -> int:
    return p.order()


def is_cyclic(H: GroupTable) -> bool:
    return any(p.order() == H.order for p in H.elements)


def is_abelian(H: GroupTable) -> bool:
    gens = H.generators
    return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])


def conjugate_members(H: GroupTable, g: Permutation) -> frozenset:
    """g⁻¹ H g as an element set."""
    g_inv = g.inverse()
    return frozenset(g_inv * h * g for h in H.elements)


def is_normal(N: GroupTable, G: GroupTable) -> bool:
    for g in G.generators:
        g_inv = g.inverse()
        for n in N.generators:
            if g_inv * n * g not in N:
                return False
    return True


def center(H: GroupTable) -> frozenset:
    return frozenset(z for z in H.elements if all(z * g == g * z for g in H.generators))


def order_statistics(H: GroupTable) -> Counter:
    """How many elements of each order H has."""
    return Counter(p.order() for p in H.elements)


# Dihedral recognition
def is_dihedral(H: GroupTable) -> int | None:
    """
    Return m when H ≅ D_2m, otherwise None.

    D_2m is ⟨r, s⟩ with r of order m, s an involution outside ⟨r⟩ and srs⁻¹ = r⁻¹.
    The degenerate cases count: D_2 ≅ C2 (m=1) and D_4 ≅ V4 (m=2).
    """
    if H.order % 2:
        return None
    m = H.order // 2
    involutions = [s for s in H.elements if s.order() == 2]
    for r in H.elements:
        if r.order() != m:
            continue
        rotations = {r ** k for k in range(m)}
        r_inv = r.inverse()
        for s in involutions:
            if s not in rotations and s * r * s == r_inv:
                return m
    return None


# Abelian invariants, e.g. [2, 6] for C2 x C6
def abelian_invariants(H: GroupTable) -> list[int]:
    stats = order_statistics(H)

    def killed_by(k: int) -> int:
        return sum(count for order, count in stats.items() if k % order == 0)

    by_prime: dict[int, list[int]] = {}
    for p, e in factorint(H.order).items():
        ranks = []
        for j in range(1, e + 1):
            ratio = killed_by(p ** j) // killed_by(p ** (j - 1))
            ranks.append(factorint(ratio).get(p, 0) if ratio > 1 else 0)
        ranks.append(0)
        powers = []
        for j in range(1, e + 1):
            powers.extend([p ** j] * (ranks[j - 1] - ranks[j]))
        by_prime[p] = sorted(powers, reverse=True)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for i in range(width):
        f = 1
        for powers in by_prime.values():
            if i < len(powers):
                f *= powers[i]
        factors.append(f)
    return sorted(factors)


# Structure tag used in reports and DOT labels
def structure_tag(H: GroupTable) -> str:
    n = H.order
    if n == 1:
        return 'e'
    if is_cyclic(H):
        return f'C{n}'
    if is_abelian(H):
        tag = 'x'.join(f'C{f}' for f in abelian_invariants(H))
        return 'V4' if tag == 'C2xC2' else tag
    m = is_dihedral(H)
    if m is not None:
        return 'S3' if m == 3 else f'D{2 * m}'
    stats = order_statistics(H)
    orders = set(stats)
    trivial_center = len(center(H)) == 1
    if n == 8 and stats[2] == 1:
        return 'Q8'
    if n == 12 and orders <= {1, 2, 3}:
        return 'A4'
    if n == 20 and trivial_center and 4 in orders:
        return 'F20'
    if n == 24 and trivial_center and orders <= {1, 2, 3, 4}:
        return 'S4'
    if n == 24 and stats[2] == 1 and orders <= {1, 2, 3, 4, 6}:
        return 'SL(2,3)'
    if n == 60 and orders <= {1, 2, 3, 5}:
        return 'A5'
    return f'G{n}'
