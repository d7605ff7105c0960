# Modules
import logging
from pathlib import Path
from pydantic import BaseModel
from errors import ParseError, RatFuncError
from ratfunc import CompositionReport, RatFunc, compose_all, pole_count, verify_composition

logger = logging.getLogger(__name__)

# Grammar
#
# chain    := sum ('o' chain)?            composition, right-associative, lowest precedence
# sum      := product (('+' | '-') product)*
# product  := unary (('*' | '/') unary | unary)*   juxtaposition multiplies
# unary    := ('-' | '+') unary | power
# power    := atom ('^' ['-' | '+'] integer)?
# atom     := integer | 'z' | 'x' | '(' chain ')'

OPERAND_START = ('(', '+', '-', 'integer', 'z')


class Token:
    __slots__ = ('kind', 'text', 'position')

    def __init__(self, kind: str, text: str, position: int):
        self.kind = kind
        self.text = text
        self.position = position

    def __repr__(self) -> str:
        return f'Token({self.kind!r}, {self.text!r}, {self.position})'


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            tokens.append(Token('integer', text[start:pos], start))
        elif ch.isalpha():
            start = pos
            while pos < n and text[pos].isalpha():
                pos += 1
            word = text[start:pos]
            if word in ('z', 'x'):
                tokens.append(Token('z', word, start))
            elif word == 'o':
                tokens.append(Token('o', word, start))
            else:
                raise ParseError(f'unknown name {word!r}', position=start, expected=['o', 'z'])
        elif ch in '+-*/^()':
            tokens.append(Token(ch, ch, pos))
            pos += 1
        else:
            raise ParseError(f'unexpected character {ch!r}', position=pos)
    tokens.append(Token('end', '', n))
    return tokens


class Parser:
    """Recursive descent over the token list; every value is an exact RatFunc."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def fail(self, expected) -> ParseError:
        token = self.current
        found = 'end of input' if token.kind == 'end' else repr(token.text)
        return ParseError(f'unexpected {found}', position=token.position, expected=expected)

    def chain(self) -> list[RatFunc]:
        factors = [self.sum()]
        if self.current.kind == 'o':
            self.advance()
            factors.extend(self.chain())
        return factors

    def sum(self) -> RatFunc:
        value = self.product()
        while self.current.kind in ('+', '-'):
            op = self.advance()
            rhs = self.product()
            value = value + rhs if op.kind == '+' else value - rhs
        return value

    def product(self) -> RatFunc:
        value = self.unary()
        while True:
            kind = self.current.kind
            if kind in ('*', '/'):
                op = self.advance()
                rhs = self.unary()
                if op.kind == '*':
                    value = value * rhs
                else:
                    value = self._divide(value, rhs, op)
            elif kind in ('integer', 'z', '('):
                value = value * self.unary()
            else:
                return value

    def _divide(self, lhs: RatFunc, rhs: RatFunc, op: Token) -> RatFunc:
        try:
            return lhs / rhs
        except RatFuncError as exc:
            raise ParseError(str(exc), position=op.position) from exc

    def unary(self) -> RatFunc:
        if self.current.kind == '-':
            self.advance()
            return -self.unary()
        if self.current.kind == '+':
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.current.kind != '^':
            return base
        op = self.advance()
        sign = 1
        if self.current.kind in ('-', '+'):
            sign = -1 if self.advance().kind == '-' else 1
        if self.current.kind != 'integer':
            raise self.fail(['integer'])
        exponent = sign * int(self.advance().text)
        try:
            return base ** exponent
        except RatFuncError as exc:
            raise ParseError(str(exc), position=op.position) from exc

    def atom(self) -> RatFunc:
        token = self.current
        if token.kind == 'integer':
            self.advance()
            return RatFunc.constant(int(token.text))
        if token.kind == 'z':
            self.advance()
            return RatFunc.variable()
        if token.kind == '(':
            self.advance()
            value = compose_all(self.chain())
            if self.current.kind != ')':
                raise self.fail([')', 'o', '+', '-', '*', '/', '^'])
            self.advance()
            return value
        raise self.fail(OPERAND_START)

    def finish(self) -> None:
        if self.current.kind != 'end':
            raise self.fail(['o', '+', '-', '*', '/', '^', 'end of input'])


def parse_factors(text: str) -> list[RatFunc]:
    """The top-level composition chain F_1 o F_2 o … as its list of factors."""
    parser = Parser(text)
    factors = parser.chain()
    parser.finish()
    return factors


def parse_expr(text: str) -> RatFunc:
    return compose_all(parse_factors(text))


# Verification scenarios
#
#   VERIFY <expr> o <expr> o ... == <expr>
#   POLES <expr> == <integer>
#   # comment
class ScenarioLine(BaseModel):
    line: int
    directive: str
    text: str
    passed: bool
    message: str = ''
    report: CompositionReport | None = None


class ScenarioResult(BaseModel):
    lines: list[ScenarioLine]

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.lines)

    @property
    def failures(self) -> list[ScenarioLine]:
        return [line for line in self.lines if not line.passed]


def _relocate(exc: ParseError, offset: int, lineno: int) -> ParseError:
    position = None if exc.position is None else exc.position + offset
    return ParseError(exc.message, position=position, line=lineno, expected=exc.expected)


def _split_sides(body: str, offset: int, lineno: int) -> tuple[str, int, str, int]:
    if '==' not in body:
        raise ParseError("missing '=='", position=offset + len(body), line=lineno, expected=['=='])
    left, right = body.split('==', 1)
    return left, offset, right, offset + len(left) + 2


def _run_line(directive: str, body: str, offset: int, lineno: int, raw: str) -> ScenarioLine:
    left, left_at, right, right_at = _split_sides(body, offset, lineno)
    try:
        factors = parse_factors(left)
    except ParseError as exc:
        raise _relocate(exc, left_at, lineno) from exc

    if directive == 'POLES':
        expected = right.strip()
        if not expected.isdigit():
            raise ParseError('expected a pole count', position=right_at, line=lineno, expected=['integer'])
        count = pole_count(compose_all(factors))
        return ScenarioLine(
            line=lineno,
            directive=directive,
            text=raw,
            passed=count == int(expected),
            message=f'{count} poles',
        )

    try:
        target = parse_expr(right)
    except ParseError as exc:
        raise _relocate(exc, right_at, lineno) from exc
    report = verify_composition(factors, target)
    message = ''
    if report.mismatch:
        m = report.mismatch
        message = f'{m.part} coefficient of z^{m.power}: expected {m.expected}, got {m.actual}'
    elif report.flagged_factors:
        message = f'factors of degree < 2 at positions {report.flagged_factors}'
    return ScenarioLine(line=lineno, directive=directive, text=raw, passed=report.equal, message=message, report=report)


def run_scenario(text: str) -> ScenarioResult:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0]
        stripped = content.strip()
        if not stripped:
            continue
        lead = len(content) - len(content.lstrip())
        directive, _, rest = stripped.partition(' ')
        if directive not in ('VERIFY', 'POLES'):
            raise ParseError(f'unknown directive {directive!r}', position=lead, line=lineno, expected=['POLES', 'VERIFY'])
        offset = lead + len(directive) + 1
        lines.append(_run_line(directive, rest, offset, lineno, raw.strip()))
    result = ScenarioResult(lines=lines)
    logger.info('[AUDIT] scenario verified: %d lines, %d failed', len(lines), len(result.failures))
    return result


def run_scenario_file(path: str | Path) -> ScenarioResult:
    return run_scenario(Path(path).read_text())
