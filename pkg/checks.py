# Modules
import logging
from enum import Enum
from pydantic import BaseModel
from blocks import (
    HKind,
    all_block_systems,
    block_stabilizer,
    classify_H,
    is_core_complementary,
    is_normal_system,
    normal_refinement,
)
from chains import ritt_theorem_check
from check_result import CheckResult
from check_status import CheckStatus
from errors import InvariantViolation
from interval import (
    IntervalLattice,
    Strategy,
    build_interval,
    cyclic_transitive_subgroups,
    dedekind_embedding,
    intersection_embedding,
)
from jh import has_transitive_hamiltonian, is_hamiltonian, jh_holds, lc_equals_l
from perm import GroupTable, two_orbit_generators
from props import (
    are_permutable,
    index_inequality_check,
    is_lower_semimodular,
    is_modular,
    is_semimodular,
    lower_semimodular_violations,
    modularity_witness,
    semimodular_violations,
)
from structure import structure_tag

logger = logging.getLogger(__name__)


class Property(str, Enum):
    LOWER_SEMIMODULAR = 'lower-semimodular'
    SEMIMODULAR = 'semimodular'
    MODULAR = 'modular'
    RITT = 'ritt'
    JH = 'jh'
    HAMILTONIAN = 'hamiltonian'
    TWO_ORBIT = 'two-orbit'
    DEDEKIND = 'dedekind'
    NORMAL_SYSTEMS = 'normal-systems'
    PERMUTABILITY = 'permutability'


class CheckContext(BaseModel):
    group: GroupTable
    point: int
    lattice: IntervalLattice
    exhaustive: bool = False


def _node(L: IntervalLattice, i: int) -> str:
    return f'{L.labels[i]} |{L.nodes[i].order}|'


def _pair(L: IntervalLattice, pair: tuple[int, int] | None) -> list[str] | None:
    return None if pair is None else [_node(L, pair[0]), _node(L, pair[1])]


def _two_orbit_hypothesis(G: GroupTable) -> list[dict]:
    return [
        {'element': str(h), 'orbit_lengths': sorted((len(c) for c in h.all_cycles()), reverse=True)}
        for h in two_orbit_generators(G)
    ]


def _status(ok: bool) -> CheckStatus:
    return CheckStatus.PASS if ok else CheckStatus.FAIL


# Semimodularity
def check_lower_semimodular(ctx: CheckContext) -> CheckResult:
    L = ctx.lattice
    violations = lower_semimodular_violations(L)
    hypothesis = _two_orbit_hypothesis(ctx.group)
    details = {
        'violations': len(violations),
        'first_violation': _pair(L, violations[0] if violations else None),
        'two_orbit_elements': hypothesis,
        'theorem_violated': bool(hypothesis and violations),
    }
    if violations and hypothesis:
        reason = 'a cyclic subgroup has two orbits, yet the interval is not lower semimodular'
    elif violations:
        reason = 'interval is not lower semimodular'
    else:
        reason = 'interval is lower semimodular'
    return CheckResult(property=Property.LOWER_SEMIMODULAR.value, status=_status(not violations), reason=reason, details=details)


def check_semimodular(ctx: CheckContext) -> CheckResult:
    L = ctx.lattice
    violations = semimodular_violations(L)
    return CheckResult(
        property=Property.SEMIMODULAR.value,
        status=_status(not violations),
        reason='interval is semimodular' if not violations else 'interval is not semimodular',
        details={'violations': len(violations), 'first_violation': _pair(L, violations[0] if violations else None)},
    )


def check_modular(ctx: CheckContext) -> CheckResult:
    L = ctx.lattice
    if is_modular(L):
        return CheckResult(property=Property.MODULAR.value, status=CheckStatus.PASS, reason='interval is modular')
    details: dict = {'semimodular': is_semimodular(L), 'lower_semimodular': is_lower_semimodular(L)}
    witness = modularity_witness(ctx.group, L)
    if witness is not None:
        details['dihedral_interval'] = {
            'm': witness.m,
            'normal_subgroup': structure_tag(witness.normal_subgroup),
            'normal_order': witness.normal_subgroup.order,
            'top_order': witness.top.order,
            'isomorphic': witness.interval_isomorphic,
        }
    return CheckResult(property=Property.MODULAR.value, status=CheckStatus.FAIL, reason='interval is not modular', details=details)


# Chains
def check_ritt(ctx: CheckContext) -> CheckResult:
    report = ritt_theorem_check(ctx.lattice, exhaustive=ctx.exhaustive)
    if report.status == CheckStatus.NOT_APPLICABLE:
        reason = 'interval is neither semimodular nor lower semimodular'
    elif report.status == CheckStatus.PASS:
        reason = 'all maximal chains are r-equivalent'
    else:
        reason = 'maximal chains split into several r-equivalence classes'
    details = report.model_dump(mode='json')
    details['counterexample'] = _pair(ctx.lattice, report.counterexample)
    return CheckResult(property=Property.RITT.value, status=report.status, reason=reason, details=details)


def _chain_orders(L: IntervalLattice, nodes: tuple[int, ...]) -> list[int]:
    return [L.nodes[i].order for i in nodes]


def check_jh(ctx: CheckContext) -> CheckResult:
    G, L = ctx.group, ctx.lattice
    report = jh_holds(L)
    hypotheses = {
        'lc_equals_l': lc_equals_l(G, ctx.point, L),
        'transitive_hamiltonian': has_transitive_hamiltonian(G) is not None,
        'two_orbits_of_different_length': any(
            len(set(item['orbit_lengths'])) == 2 for item in _two_orbit_hypothesis(G)
        ),
    }
    details = {
        'chain_count': report.chain_count,
        'lengths': report.lengths,
        'hypotheses': hypotheses,
        'theorem_violated': any(hypotheses.values()) and not report.holds,
    }
    if report.counterexample:
        details['counterexample'] = [_chain_orders(L, chain) for chain in report.counterexample]
    return CheckResult(property=Property.JH.value, status=_status(report.holds), reason=report.reason, details=details)


# Hamiltonian subgroups
def check_hamiltonian(ctx: CheckContext) -> CheckResult:
    G, L = ctx.group, ctx.lattice
    K = has_transitive_hamiltonian(G)
    if K is None:
        return CheckResult(
            property=Property.HAMILTONIAN.value,
            status=CheckStatus.NOT_APPLICABLE,
            reason='no transitive Hamiltonian subgroup',
        )
    _, embedding = intersection_embedding(G, ctx.point, K, L)
    modular = is_modular(L)
    jh = jh_holds(L).holds
    ok = embedding.is_embedding and modular and jh and is_hamiltonian(K)
    return CheckResult(
        property=Property.HAMILTONIAN.value,
        status=_status(ok),
        reason=f'transitive Hamiltonian subgroup {structure_tag(K)} found',
        details={
            'subgroup': structure_tag(K),
            'embedding': embedding.model_dump(),
            'modular': modular,
            'jh_holds': jh,
        },
    )


# Cyclic subgroups with two orbits
def check_two_orbit(ctx: CheckContext) -> CheckResult:
    G, L = ctx.group, ctx.lattice
    hs = two_orbit_generators(G)
    if not hs:
        return CheckResult(
            property=Property.TWO_ORBIT.value,
            status=CheckStatus.NOT_APPLICABLE,
            reason='no cyclic subgroup with exactly two orbits',
        )
    problems: list[str] = []
    refinements = 0
    systems = all_block_systems(G, ctx.point)
    for h in hs:
        for E in systems:
            kind = classify_H(h, E).kind
            normal = is_normal_system(G, E)
            if kind == HKind.INTRANSITIVE and not normal:
                problems.append(f'H-intransitive system {E} for {h} is not normal')
            if kind == HKind.TRANSITIVE and not normal:
                normal_refinement(G, E, h)
                refinements += 1
    lower = is_lower_semimodular(L)
    if not lower:
        problems.append('interval is not lower semimodular')
    details: dict = {
        'two_orbit_elements': _two_orbit_hypothesis(G),
        'block_systems': len(systems),
        'refinements_checked': refinements,
        'lower_semimodular': lower,
        'modular': is_modular(L),
        'problems': problems,
    }
    if not details['modular']:
        witness = modularity_witness(G, L)
        if witness is None:
            problems.append('modularity fails without a dihedral interval')
        else:
            details['dihedral_interval'] = {'m': witness.m, 'normal_order': witness.normal_subgroup.order}
    return CheckResult(
        property=Property.TWO_ORBIT.value,
        status=_status(not problems),
        reason='two-orbit conclusions hold' if not problems else problems[0],
        details=details,
    )


# Transitive cyclic subgroups
def check_dedekind(ctx: CheckContext) -> CheckResult:
    G, L = ctx.group, ctx.lattice
    cyclic = cyclic_transitive_subgroups(G)
    if not cyclic:
        return CheckResult(
            property=Property.DEDEKIND.value,
            status=CheckStatus.NOT_APPLICABLE,
            reason='no transitive cyclic subgroup',
        )
    C = cyclic[0]
    report = dedekind_embedding(G, ctx.point, C, L)
    modular = is_modular(L)
    return CheckResult(
        property=Property.DEDEKIND.value,
        status=_status(report.is_embedding and modular),
        reason='X ↦ |X ∩ C| embeds the interval into the divisor lattice'
        if report.is_embedding
        else 'X ↦ |X ∩ C| is not a lattice embedding',
        details={
            'divisor_map': {_node(L, i): d for i, d in enumerate(report.images)},
            'modular': modular,
            'failures': report.failures,
        },
    )


# Block systems
def check_normal_systems(ctx: CheckContext) -> CheckResult:
    """Normal block systems are exactly those whose block stabilizer is core-complementary."""
    G, omega = ctx.group, ctx.point
    disagreements = []
    systems = all_block_systems(G, omega)
    for E in systems:
        normal = is_normal_system(G, E)
        complementary = is_core_complementary(G, omega, block_stabilizer(G, E, omega))
        if normal != complementary:
            disagreements.append({'system': str(E), 'normal': normal, 'core_complementary': complementary})
    return CheckResult(
        property=Property.NORMAL_SYSTEMS.value,
        status=_status(not disagreements),
        reason='normal systems match core-complementary stabilizers'
        if not disagreements
        else 'a system is normal but not core-complementary or conversely',
        details={'systems': len(systems), 'disagreements': disagreements},
    )


def check_permutability(ctx: CheckContext) -> CheckResult:
    G, omega, L = ctx.group, ctx.point, ctx.lattice
    problems: list[str] = []
    complementary = [i for i, X in enumerate(L.nodes) if is_core_complementary(G, omega, X)]
    all_permutable = True
    for a in range(L.size):
        for b in range(a + 1, L.size):
            A, B = L.nodes[a], L.nodes[b]
            index_inequality_check(A, B)
            permutable = are_permutable(A, B)
            all_permutable &= permutable
            if (a in complementary or b in complementary) and not permutable:
                problems.append(f'core-complementary {_node(L, a)} does not permute with {_node(L, b)}')
            j, m = L.join(a, b), L.meet(a, b)
            if a in complementary and b in complementary and j not in complementary:
                problems.append(f'product of {_node(L, a)} and {_node(L, b)} is not core-complementary')
            if permutable and L.is_cover(m, a) and L.is_cover(m, b):
                if not (L.is_cover(a, j) and L.is_cover(b, j)):
                    problems.append(f'{_node(L, a)} and {_node(L, b)} permute but are not maximal in their product')
    if all_permutable and not is_modular(L):
        problems.append('all pairs permute but the interval is not modular')
    return CheckResult(
        property=Property.PERMUTABILITY.value,
        status=_status(not problems),
        reason='permutability conclusions hold' if not problems else problems[0],
        details={
            'core_complementary': [_node(L, i) for i in complementary],
            'all_permutable': all_permutable,
            'problems': problems,
        },
    )


CHECKS = {
    Property.LOWER_SEMIMODULAR: check_lower_semimodular,
    Property.SEMIMODULAR: check_semimodular,
    Property.MODULAR: check_modular,
    Property.RITT: check_ritt,
    Property.JH: check_jh,
    Property.HAMILTONIAN: check_hamiltonian,
    Property.TWO_ORBIT: check_two_orbit,
    Property.DEDEKIND: check_dedekind,
    Property.NORMAL_SYSTEMS: check_normal_systems,
    Property.PERMUTABILITY: check_permutability,
}


def run_check(prop: Property, ctx: CheckContext) -> CheckResult:
    try:
        return CHECKS[Property(prop)](ctx)
    except InvariantViolation as exc:
        logger.error('invariant violated while checking %s: %s', prop, exc)
        return CheckResult(
            property=Property(prop).value,
            status=CheckStatus.FAIL,
            reason=f'invariant violated: {exc}',
            details={'evidence': {k: str(v) for k, v in exc.evidence.items()}},
        )


def run_checks(
    G: GroupTable,
    point: int,
    properties: list[Property] | None = None,
    strategy: Strategy = Strategy.AUTO,
    cap: int | None = None,
    exhaustive: bool = False,
) -> list[CheckResult]:
    """Build the interval once and run the requested properties (all of them by default)."""
    L = build_interval(G, point, strategy, cap)
    ctx = CheckContext(group=G, point=point, lattice=L, exhaustive=exhaustive)
    return [run_check(prop, ctx) for prop in (properties or list(Property))]


def overall_status(results: list[CheckResult]) -> CheckStatus:
    statuses = {r.status for r in results}
    if CheckStatus.FAIL in statuses:
        return CheckStatus.FAIL
    if CheckStatus.PASS in statuses:
        return CheckStatus.PASS
    return CheckStatus.NOT_APPLICABLE
