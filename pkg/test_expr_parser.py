from pathlib import Path
import pytest
from config import settings
from errors import ParseError
from expr_parser import parse_expr, parse_factors, run_scenario, run_scenario_file, tokenize
from ratfunc import KleinKind, RatFunc, klein, z


def R(expr) -> RatFunc:
    return RatFunc.from_expr(expr)


# Expressions
@pytest.mark.parametrize(
    'text, expected',
    [
        ('z^2 + 1', z ** 2 + 1),
        ('2z^2', 2 * z ** 2),
        ('2(z+1)', 2 * z + 2),
        ('3x - 1', 3 * z - 1),
        ('z^-2', z ** -2),
        ('-z^2', -z ** 2),
        ('(1/2) * (z + 1/z)', (z ** 2 + 1) / (2 * z)),
        ('256 z^3 (z-1)', 256 * z ** 4 - 256 * z ** 3),
        ('(z+1)/(z-1) - 1', 2 / (z - 1)),
    ],
)
def test_parse_expr(text, expected):
    assert parse_expr(text) == R(expected)


def test_composition_chain():
    factors = parse_factors('z^2 o z + 1 o 2z')
    assert factors == [R(z ** 2), R(z + 1), R(2 * z)]
    assert parse_expr('z^2 o z + 1 o 2z') == R((2 * z + 1) ** 2)


def test_parenthesized_chain_is_one_factor():
    factors = parse_factors('(z^2 o z + 1) o 2z')
    assert factors == [R((z + 1) ** 2), R(2 * z)]


def test_printed_functions_parse_back():
    for F in (klein(KleinKind.S4), R(z ** 2 - 3 * z / 2 + 1), klein(KleinKind.DIHEDRAL, 3)):
        assert parse_expr(str(F)) == F


def test_tokens_carry_positions():
    tokens = tokenize('2z o x')
    assert [(t.kind, t.position) for t in tokens] == [('integer', 0), ('z', 1), ('o', 3), ('z', 5), ('end', 6)]


@pytest.mark.parametrize(
    'text, position',
    [
        ('z +', 3),
        ('1/0', 1),
        ('0^0', 1),
        ('y + 1', 0),
        ('z $', 2),
        ('(z + 1', 6),
        ('z^z', 2),
        ('z )', 2),
    ],
)
def test_parse_errors(text, position):
    with pytest.raises(ParseError) as exc:
        parse_expr(text)
    assert exc.value.position == position


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as exc:
        parse_expr('z +')
    assert 'z' in exc.value.expected
    assert 'end of input' in str(exc.value)


# Scenarios
def test_scenario_lines():
    result = run_scenario('# header\nVERIFY z^2 o z + 1 == z^2 + 2z + 1\n\nPOLES 1/(z^2+1) == 2\n')
    assert result.passed
    assert [line.line for line in result.lines] == [2, 4]
    assert [line.directive for line in result.lines] == ['VERIFY', 'POLES']


def test_scenario_reports_the_first_mismatch():
    result = run_scenario('VERIFY (1/2) * (z + 1/z) o z^2 == z^4')
    (line,) = result.failures
    assert not result.passed
    assert line.message == 'numerator coefficient of z^0: expected 0, got 1/2'


def test_scenario_errors_point_into_the_line():
    with pytest.raises(ParseError) as exc:
        run_scenario('VERIFY z + == z')
    assert (exc.value.line, exc.value.position) == (1, 11)


def test_scenario_error_on_the_right_side():
    with pytest.raises(ParseError) as exc:
        run_scenario('\nVERIFY z == z *')
    assert (exc.value.line, exc.value.position) == (2, 15)


@pytest.mark.parametrize('text', ['CHECK z == z', 'VERIFY z^2', 'POLES z == many'])
def test_malformed_scenario_lines(text):
    with pytest.raises(ParseError):
        run_scenario(text)


def test_shipped_scenario_verifies():
    result = run_scenario_file(Path(settings.scenarios_dir) / 'appendix.scn')
    assert len(result.lines) == 16
    assert result.failures == []
    assert sum(line.directive == 'POLES' for line in result.lines) == 1
