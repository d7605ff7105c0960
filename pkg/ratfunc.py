# Modules
import logging
from enum import Enum
from functools import reduce
from pydantic import BaseModel, ConfigDict
from sympy import Poly, QQ, Rational, Symbol, divisors, fraction, sympify, together
from errors import InvariantViolation, RatFuncError

logger = logging.getLogger(__name__)

z = Symbol('z')


def _poly(expr) -> Poly:
    return Poly(expr, z, domain=QQ)


def _deg(p: Poly) -> int:
    return 0 if p.is_zero else p.degree()


# Rational function over the rationals
class RatFunc(BaseModel):
    """
    num/den in lowest terms with a monic denominator.

    Two canonical forms are equal exactly when the functions are.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    num: Poly
    den: Poly

    @classmethod
    def canonical(cls, num: Poly, den: Poly) -> 'RatFunc':
        if den.is_zero:
            raise RatFuncError('denominator is the zero polynomial')
        g = num.gcd(den)
        num, den = num.exquo(g), den.exquo(g)
        lc = den.LC()
        return cls.model_construct(num=num.quo_ground(lc), den=den.monic())

    @classmethod
    def from_poly(cls, p: Poly) -> 'RatFunc':
        return cls.canonical(_poly(p.as_expr()), _poly(1))

    @classmethod
    def from_expr(cls, expr) -> 'RatFunc':
        """Build from a sympy expression in z (x is read as z)."""
        expr = sympify(expr).subs(Symbol('x'), z)
        num, den = fraction(together(expr))
        return cls.canonical(_poly(num), _poly(den))

    @classmethod
    def constant(cls, c) -> 'RatFunc':
        return cls.model_construct(num=_poly(Rational(c)), den=_poly(1))

    @classmethod
    def variable(cls) -> 'RatFunc':
        return cls.model_construct(num=_poly(z), den=_poly(1))

    @property
    def degree(self) -> int:
        return max(_deg(self.num), _deg(self.den))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return _deg(self.den) == 0

    def coefficients(self) -> tuple[list[Rational], list[Rational]]:
        """Numerator and denominator coefficients, lowest power first."""
        return (
            [self.num.nth(k) for k in range(_deg(self.num) + 1)],
            [self.den.nth(k) for k in range(_deg(self.den) + 1)],
        )

    def as_expr(self):
        return self.num.as_expr() / self.den.as_expr()

    def compose(self, other: 'RatFunc') -> 'RatFunc':
        return compose(self, other)

    def __add__(self, other) -> 'RatFunc':
        other = _coerce(other)
        return RatFunc.canonical(self.num * other.den + other.num * self.den, self.den * other.den)

    def __radd__(self, other) -> 'RatFunc':
        return self + other

    def __neg__(self) -> 'RatFunc':
        return RatFunc.model_construct(num=-self.num, den=self.den)

    def __sub__(self, other) -> 'RatFunc':
        return self + (-_coerce(other))

    def __rsub__(self, other) -> 'RatFunc':
        return _coerce(other) - self

    def __mul__(self, other) -> 'RatFunc':
        other = _coerce(other)
        return RatFunc.canonical(self.num * other.num, self.den * other.den)

    def __rmul__(self, other) -> 'RatFunc':
        return self * other

    def __truediv__(self, other) -> 'RatFunc':
        other = _coerce(other)
        if other.is_zero:
            raise RatFuncError('division by the zero function')
        return RatFunc.canonical(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> 'RatFunc':
        return _coerce(other) / self

    def __pow__(self, k: int) -> 'RatFunc':
        if self.is_zero and k <= 0:
            raise RatFuncError('0^0 is undefined' if k == 0 else 'negative power of the zero function')
        if k < 0:
            return RatFunc.canonical(self.den ** -k, self.num ** -k)
        return RatFunc.canonical(self.num ** k, self.den ** k)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Rational)):
            other = RatFunc.constant(other)
        return isinstance(other, RatFunc) and self.coefficients() == other.coefficients()

    def __hash__(self) -> int:
        num, den = self.coefficients()
        return hash((tuple(num), tuple(den)))

    def __str__(self) -> str:
        return format_ratfunc(self)


def _coerce(value) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    return RatFunc.constant(value)


# Composition
def _homogenize(P: Poly, A: Poly, B: Poly, d: int) -> Poly:
    """Σ p_k A^k B^(d-k), i.e. B^d · P(A/B)."""
    total = _poly(0)
    for (k,), c in P.terms():
        total += A ** k * B ** (d - k) * c
    return total


def compose(F: RatFunc, G: RatFunc) -> RatFunc:
    """F∘G = F(G(z))."""
    d = F.degree
    return RatFunc.canonical(_homogenize(F.num, G.num, G.den, d), _homogenize(F.den, G.num, G.den, d))


def compose_all(factors: list[RatFunc]) -> RatFunc:
    if not factors:
        raise RatFuncError('no factors to compose')
    return reduce(compose, factors)


def inverse_mobius(mu: RatFunc) -> RatFunc:
    """(az + b)/(cz + d) ↦ (dz − b)/(−cz + a)."""
    if mu.degree != 1:
        raise RatFuncError(f'a Möbius map has degree 1, got degree {mu.degree}')
    a, b = mu.num.nth(1), mu.num.nth(0)
    c, d = mu.den.nth(1), mu.den.nth(0)
    return RatFunc.canonical(_poly(d * z - b), _poly(-c * z + a))


# Chebyshev polynomials
def chebyshev(n: int) -> RatFunc:
    """T_0 = 1, T_1 = z, T_{n+1} = 2z T_n − T_{n-1}."""
    if n < 0:
        raise RatFuncError('Chebyshev index must be nonnegative')
    prev, cur = _poly(1), _poly(z)
    if n == 0:
        return RatFunc.from_poly(prev)
    for _ in range(n - 1):
        prev, cur = cur, _poly(2 * z) * cur - prev
    return RatFunc.from_poly(cur)


# Klein functions
class KleinKind(str, Enum):
    CYCLIC = 'C'
    DIHEDRAL = 'D'
    A4 = 'A4'
    S4 = 'S4'


def klein(kind: KleinKind, n: int = 1) -> RatFunc:
    """
    The regular coverings with monodromy C_n, D_2n, A4 and S4.

    f_Cn = z^n, f_D2n = ½(z^n + z^-n), deg f_A4 = 12, deg f_S4 = 24.
    """
    kind = KleinKind(kind)
    if kind in (KleinKind.CYCLIC, KleinKind.DIHEDRAL) and n < 1:
        raise RatFuncError('n must be positive')
    if kind == KleinKind.CYCLIC:
        return RatFunc.from_expr(z ** n)
    if kind == KleinKind.DIHEDRAL:
        return RatFunc.from_expr(Rational(1, 2) * (z ** n + z ** -n))
    if kind == KleinKind.A4:
        return RatFunc.from_expr(Rational(-1, 64) * z ** 3 * (z ** 3 - 8) ** 3 / (z ** 3 + 1) ** 3)
    return RatFunc.from_expr(256 * z ** 3 * (z ** 6 - 7 * z ** 3 - 8) ** 3 / (z ** 6 + 20 * z ** 3 - 8) ** 4)


# Verification of explicit compositions
class CoefficientMismatch(BaseModel):
    part: str
    power: int
    expected: str
    actual: str


class CompositionReport(BaseModel):
    equal: bool
    factor_degrees: list[int]
    composed_degree: int
    target_degree: int
    flagged_factors: list[int] = []
    mismatch: CoefficientMismatch | None = None


def first_mismatch(actual: RatFunc, expected: RatFunc) -> CoefficientMismatch | None:
    for part, got, want in zip(('numerator', 'denominator'), actual.coefficients(), expected.coefficients()):
        for k in range(max(len(got), len(want))):
            a = got[k] if k < len(got) else Rational(0)
            e = want[k] if k < len(want) else Rational(0)
            if a != e:
                return CoefficientMismatch(part=part, power=k, expected=str(e), actual=str(a))
    return None


def verify_composition(factors: list[RatFunc], target: RatFunc) -> CompositionReport:
    """
    Compare F_1∘F_2∘…∘F_r with the target on canonical coefficients.

    Factors of degree below 2 are reported in flagged_factors.
    """
    composed = compose_all(factors)
    mismatch = first_mismatch(composed, target)
    report = CompositionReport(
        equal=mismatch is None,
        factor_degrees=[f.degree for f in factors],
        composed_degree=composed.degree,
        target_degree=target.degree,
        flagged_factors=[i for i, f in enumerate(factors) if f.degree < 2],
        mismatch=mismatch,
    )
    if composed.degree != reduce(lambda a, b: a * b, report.factor_degrees, 1):
        raise InvariantViolation('degree is not multiplicative under composition', report.model_dump())
    logger.debug('composition of degrees %s: equal=%s', report.factor_degrees, report.equal)
    return report


# Poles on the Riemann sphere
def pole_count(F: RatFunc) -> int:
    """Distinct poles: roots of the square-free part of den, plus ∞ when deg num > deg den."""
    if F.is_zero:
        return 0
    _, factors = F.den.sqf_list()
    finite = sum(_deg(p) for p, _ in factors)
    return finite + (1 if _deg(F.num) > _deg(F.den) else 0)


# A function with three poles and decompositions of lengths 3 and 2
def three_pole_target() -> RatFunc:
    return RatFunc.from_expr(Rational(-1, 27) * (z ** 4 + 2 * z ** 2 - 3) ** 3 / (z ** 2 + 1) ** 4)


def three_pole_chains() -> tuple[list[RatFunc], list[RatFunc]]:
    longer = [
        RatFunc.from_expr(Rational(1, 54) * (7 - z) ** 3 / (z + 1) ** 2),
        RatFunc.from_expr(2 * z ** 2 + 4 * z + 1),
        RatFunc.from_expr(z ** 2),
    ]
    shorter = [
        RatFunc.from_expr(Rational(-256, 27) * z ** 3 * (z - 1)),
        RatFunc.from_expr(Rational(1, 4) * (z - 1) ** 3 / (z ** 2 + 1) + 1),
    ]
    return longer, shorter


class ThreePoleReport(BaseModel):
    longer: CompositionReport
    shorter: CompositionReport
    chains_agree: bool
    pole_count: int
    lengths: tuple[int, int]
    all_factors_nontrivial: bool

    @property
    def verified(self) -> bool:
        return (
            self.longer.equal
            and self.shorter.equal
            and self.chains_agree
            and self.pole_count == 3
            and self.all_factors_nontrivial
        )


def verify_three_pole_counterexample() -> ThreePoleReport:
    target = three_pole_target()
    longer, shorter = three_pole_chains()
    long_report = verify_composition(longer, target)
    short_report = verify_composition(shorter, target)
    return ThreePoleReport(
        longer=long_report,
        shorter=short_report,
        chains_agree=compose_all(longer) == compose_all(shorter),
        pole_count=pole_count(target),
        lengths=(len(longer), len(shorter)),
        all_factors_nontrivial=not (long_report.flagged_factors or short_report.flagged_factors),
    )


# Equivalence of decompositions
def equivalence_certificate(dec1: list[RatFunc], dec2: list[RatFunc], mus: list[RatFunc]) -> bool:
    """
    U = dec1 and V = dec2 are linked by the Möbius maps μ_1..μ_{k-1} when

    U_1 = V_1∘μ_1,  U_i = μ_{i-1}⁻¹∘V_i∘μ_i,  U_k = μ_{k-1}⁻¹∘V_k.
    """
    if len(dec1) != len(dec2):
        return False
    k = len(dec1)
    if k == 0:
        raise RatFuncError('empty decomposition')
    if len(mus) != k - 1:
        raise RatFuncError(f'{k} factors need {k - 1} linking maps, got {len(mus)}')
    inverses = [inverse_mobius(mu) for mu in mus]

    for i in range(k):
        linked = dec2[i]
        if i > 0:
            linked = compose(inverses[i - 1], linked)
        if i < k - 1:
            linked = compose(linked, mus[i])
        if linked != dec1[i]:
            return False
    if compose_all(dec1) != compose_all(dec2):
        raise InvariantViolation('linked decompositions compose to different functions')
    return True


# ½(z^n + z^-n) through every divisor of n
class DihedralIdentity(BaseModel):
    n: int
    d: int
    via_power: bool
    via_chebyshev: bool


def dihedral_factorization_identities(n: int) -> list[DihedralIdentity]:
    """
    For d | n: f_D2n = f_D2(n/d) ∘ z^d and f_D2n = T_{n/d} ∘ f_D2d.
    """
    target = klein(KleinKind.DIHEDRAL, n)
    results = []
    for d in divisors(n):
        via_power = compose(klein(KleinKind.DIHEDRAL, n // d), klein(KleinKind.CYCLIC, d)) == target
        via_chebyshev = compose(chebyshev(n // d), klein(KleinKind.DIHEDRAL, d)) == target
        results.append(DihedralIdentity(n=n, d=d, via_power=via_power, via_chebyshev=via_chebyshev))
    return results


# Printing in the expression syntax
def _format_coefficient(c: Rational) -> str:
    c = Rational(c)
    return str(c.p) if c.q == 1 else f'({c.p}/{c.q})'


def _format_poly(p: Poly) -> str:
    if p.is_zero:
        return '0'
    parts = []
    for (k,), c in p.terms():
        c = Rational(c)
        sign = '-' if c < 0 else '+'
        c = abs(c)
        power = '' if k == 0 else ('z' if k == 1 else f'z^{k}')
        if not power:
            body = _format_coefficient(c)
        elif c == 1:
            body = power
        else:
            body = f'{_format_coefficient(c)}*{power}'
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ('-' if first_sign == '-' else '') + first
    for sign, body in parts[1:]:
        text += f' {sign} {body}'
    return text


def format_ratfunc(F: RatFunc) -> str:
    if F.is_polynomial:
        return _format_poly(F.num)
    return f'({_format_poly(F.num)})/({_format_poly(F.den)})'
