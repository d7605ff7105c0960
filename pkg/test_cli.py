import json
from pathlib import Path
import pytest
from typer.testing import CliRunner
from cli import app
from config import settings
from sample_data import seed_sample_data

runner = CliRunner()

GROUPS = Path(settings.groups_dir)
APPENDIX = Path(settings.scenarios_dir) / 'appendix.scn'


@pytest.fixture(scope='module')
def regular_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp('regular')
    seed_sample_data(directory)
    return directory


def test_seed_writes_the_regular_presentations(regular_dir):
    names = sorted(p.name for p in regular_dir.glob('*.grp'))
    assert names == sorted(f'{n}_regular.grp' for n in ('c12', 'd8', 'd12', 'd16', 'a4', 's4', 'a5'))


# info
def test_info_natural_a4():
    result = runner.invoke(app, ['info', str(GROUPS / 'a4.grp')])
    assert result.exit_code == 0
    assert 'a4: degree 4, order 12' in result.output
    assert 'transitive: yes' in result.output


def test_info_regular_a4(regular_dir):
    result = runner.invoke(app, ['info', str(regular_dir / 'a4_regular.grp'), '--format', 'json'])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert (report['degree'], report['order'], report['transitive']) == (12, 12, True)
    assert report['schema'] == settings.schema_version


def test_info_reports_two_orbit_element():
    result = runner.invoke(app, ['info', str(GROUPS / 'two_orbit9.grp')])
    assert result.exit_code == 0
    assert 'two-orbit element (1 2 3 4 5 6)(7 8 9) with orbit lengths (6, 3) (different lengths)' in result.output


def test_info_on_empty_file(tmp_path):
    path = tmp_path / 'empty.grp'
    path.write_text('# nothing\n')
    result = runner.invoke(app, ['info', str(path)])
    assert result.exit_code == 2
    assert 'no generators' in result.output


def test_info_parse_error_has_line_number(tmp_path):
    path = tmp_path / 'bad.grp'
    path.write_text('4\n(1 2)\n(1 2 7)\n')
    result = runner.invoke(app, ['info', str(path)])
    assert result.exit_code == 2
    assert 'line 3' in result.output


# lattice
def test_lattice_dot_for_regular_a4(regular_dir):
    args = ['lattice', str(regular_dir / 'a4_regular.grp'), '--format', 'dot']
    result = runner.invoke(app, args)
    assert result.exit_code == 0
    assert result.output.count('[label=') == 10
    assert runner.invoke(app, args).output == result.output


def test_lattice_json_for_regular_s4(regular_dir):
    result = runner.invoke(app, ['lattice', str(regular_dir / 's4_regular.grp'), '--format', 'json'])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert len(payload['nodes']) == 30
    assert payload['strategy'] == 'via-subgroup-enumeration'


def test_lattice_text_with_point_and_strategy():
    result = runner.invoke(app, ['lattice', str(GROUPS / 'd12.grp'), '-w', '2', '--strategy', 'via-subgroup-enumeration'])
    assert result.exit_code == 0
    assert result.output.startswith('4 nodes')


def test_lattice_rejects_intransitive_groups(tmp_path):
    path = tmp_path / 'split.grp'
    path.write_text('4\n(1 2)\n(3 4)\n')
    result = runner.invoke(app, ['lattice', str(path)])
    assert result.exit_code == 2
    assert 'transitive' in result.output


def test_lattice_order_cap():
    result = runner.invoke(app, ['lattice', str(GROUPS / 's4.grp'), '--cap', '10'])
    assert result.exit_code == 2
    assert 'cap' in result.output


@pytest.mark.parametrize(
    'args, option',
    [
        (['lattice', str(GROUPS / 'a4.grp'), '--point', '0'], '--point'),
        (['check', str(GROUPS / 'a4.grp'), 'modular', '--cap', '0'], '--cap'),
        (['regularize', str(GROUPS / 'd8.grp'), '--cap', '0'], '--cap'),
    ],
)
def test_nonpositive_options_are_usage_errors(args, option):
    result = runner.invoke(app, args)
    assert result.exit_code == 2
    assert f'error: {option}: Input should be greater than or equal to 1' in result.output
    assert 'Traceback' not in result.output


# chains
def test_chains_for_regular_a4(regular_dir):
    result = runner.invoke(app, ['chains', str(regular_dir / 'a4_regular.grp')])
    assert result.exit_code == 0
    assert result.output.startswith('7 maximal chains (4 of length 2, 3 of length 3), 2 r-equivalence classes')


def test_chains_json(regular_dir):
    result = runner.invoke(app, ['chains', str(regular_dir / 'd8_regular.grp'), '--format', 'json'])
    payload = json.loads(result.output)
    assert payload['chains']['class_count'] == 1
    assert len(payload['jh_profiles']) == 1


# check
def test_check_ritt_on_regular_d12(regular_dir):
    result = runner.invoke(app, ['check', str(regular_dir / 'd12_regular.grp'), 'ritt'])
    assert result.exit_code == 0
    assert result.output.startswith('ritt: PASS')


def test_check_jh_on_regular_a4_fails(regular_dir):
    result = runner.invoke(app, ['check', str(regular_dir / 'a4_regular.grp'), 'jh', '--format', 'json'])
    assert result.exit_code == 1
    payload = json.loads(result.output)
    (jh,) = payload['results']
    assert payload['status'] == 'fail'
    assert jh['details']['counterexample'] == [[1, 3, 12], [1, 2, 4, 12]]


def test_check_dedekind_on_f20():
    result = runner.invoke(app, ['check', str(GROUPS / 'f20.grp'), 'dedekind', '--format', 'json'])
    assert result.exit_code == 0
    (dedekind,) = json.loads(result.output)['results']
    assert dedekind['status'] == 'pass'
    assert dedekind['details']['divisor_map'] == {'C4 |4|': 1, 'F20 |20|': 5}


def test_check_unknown_property():
    result = runner.invoke(app, ['check', str(GROUPS / 'f20.grp'), 'confluence'])
    assert result.exit_code == 2


# ratfunc
def test_ratfunc_shipped_scenario():
    result = runner.invoke(app, ['ratfunc', str(APPENDIX)])
    assert result.exit_code == 0
    assert '16/16 passed' in result.output


def test_ratfunc_failing_line(tmp_path):
    path = tmp_path / 'wrong.scn'
    path.write_text('VERIFY z^2 o z^2 == z^5\n')
    result = runner.invoke(app, ['ratfunc', str(path)])
    assert result.exit_code == 1
    assert 'line 1: FAIL' in result.output


def test_ratfunc_parse_error(tmp_path):
    path = tmp_path / 'broken.scn'
    path.write_text('VERIFY z + == z\n')
    result = runner.invoke(app, ['ratfunc', str(path)])
    assert result.exit_code == 2
    assert 'position 11' in result.output


def test_ratfunc_missing_file(tmp_path):
    result = runner.invoke(app, ['ratfunc', str(tmp_path / 'absent.scn')])
    assert result.exit_code == 2
    assert 'no such file' in result.output


# regularize
def test_regularize_to_stdout():
    result = runner.invoke(app, ['regularize', str(GROUPS / 'd8.grp')])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == '# right-regular action of d8'
    assert lines[1] == '8'


def test_regularize_to_file(tmp_path):
    target = tmp_path / 'q.grp'
    result = runner.invoke(app, ['regularize', str(GROUPS / 'c12.grp'), '-o', str(target)])
    assert result.exit_code == 0
    assert target.read_text().splitlines()[1] == '12'
