"""Tests of the seqnorms command and its subcommands."""
import json

# 3rd party libraries
import pytest

# Local imports
from seqnorms import cli
from seqnorms.evaluation import common
from seqnorms.evaluation import optim
from seqnorms.evaluation import report
from seqnorms.evaluation import script
from seqnorms.evaluation import suites


# Constants ############################################################

FAST = ['--restarts', '1', '--iterations', '20']
VECTORS = json.dumps({'oracle': 'l2:2', 'vectors': [[3, 4], [0, 1]]})
SCALAR_OPERATOR = json.dumps({'domain': 'l2:1', 'codomain': 'l2:1',
                              'rows': [[1]]})
IDENTITY = json.dumps({'domain': 'l2:2', 'codomain': 'l2:2',
                       'entries': [[1, 0], [0, 1]]})


@pytest.fixture(autouse=True)
def no_budget_env(clean_env):
    yield


# Dispatch #############################################################

def test_no_command_prints_help(capsys):
    assert cli.run([]) == script.EXIT_INPUT
    assert 'seqnorms' in capsys.readouterr().out


def test_help(capsys):
    assert cli.run(['--help']) == script.EXIT_OK
    assert cli.run(['norm', '-h']) == script.EXIT_OK
    assert capsys.readouterr().out


def test_unknown_command(capsys):
    assert cli.run(['normalize']) == script.EXIT_INPUT
    assert '*** Error ***' in capsys.readouterr().err


# norm and dual-norm ###################################################

def test_norm(capsys):
    assert cli.run(['norm', '--space', 'lp:2', '--seq', '[3,4]']) == \
        script.EXIT_OK
    assert capsys.readouterr().out.strip() == '5'


def test_norm_of_unit_vector(capsys):
    assert cli.run(['norm', '--space', 'sargent_m:sqrt', '--unit', '4']) == \
        script.EXIT_OK
    assert capsys.readouterr().out.strip() == '1'


def test_norm_from_input_file(tmp_path, capsys):
    path = tmp_path / 'seq.json'
    path.write_text('[1, -2, 3]')
    assert cli.run(['norm', '--space', 'lp:1', '-i', str(path)]) == \
        script.EXIT_OK
    assert capsys.readouterr().out.strip() == '6'


def test_invalid_space_exits_with_spec_code(capsys):
    assert cli.run(['norm', '--space', 'lorentz:bad', '--seq', '[1]']) == \
        script.EXIT_SPEC
    assert '*** Error ***' in capsys.readouterr().err


def test_bad_json_exits_with_input_code():
    assert cli.run(['norm', '--space', 'lp:2', '--seq', '[3,']) == \
        script.EXIT_INPUT


def test_bad_budget_env_exits_with_input_code(monkeypatch):
    monkeypatch.setenv(script.BUDGET_ENV, 'speed=2')
    assert cli.run(['norm', '--space', 'lp:2', '--seq', '[3,4]']) == \
        script.EXIT_INPUT


def test_unknown_config_keys_exit_with_input_code(tmp_path):
    path = tmp_path / 'config.json'
    path.write_text(json.dumps({'colour': 'red'}))
    assert cli.run(['norm', '--space', 'lp:2', '--seq', '[3,4]',
                    '--config', str(path)]) == script.EXIT_INPUT


def test_dual_norm(capsys):
    assert cli.run(['dual-norm', '--space', 'lp:1', '--seq', '[1,-2,3]',
                    '--bidual'] + FAST) == script.EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out == ['dual_norm 3', 'bidual_norm 6']


# Reports ##############################################################

def test_json_report(tmp_path):
    path = tmp_path / 'report.json'
    assert cli.run(['norm', '--space', 'lp:2', '--seq', '[3,4]',
                    '--seed', '11', '-o', str(path)]) == script.EXIT_OK
    parsed = report.parse_report(str(path))
    assert parsed['config']['command'] == 'norm'
    assert parsed['config']['budget']['seed'] == 11
    assert parsed['config']['inputs']['space'] == \
        {'family': 'lp', 'params': {'p': 2.0}}
    assert parsed['results'][0]['value'] == pytest.approx(5)
    assert parsed['results'][0]['bound_direction'] == 'exact'


def test_csv_report(tmp_path):
    path = tmp_path / 'report.csv'
    assert cli.run(['norm', '--space', 'lp:2', '--seq', '[3,4]', '-f', 'csv',
                    '-o', str(path)]) == script.EXIT_OK
    assert path.read_text().splitlines()[0].startswith('name,value')


def test_unwritable_report_exits_with_output_code(tmp_path):
    path = tmp_path / 'missing' / 'report.json'
    assert cli.run(['norm', '--space', 'lp:2', '--seq', '[3,4]',
                    '-o', str(path)]) == script.EXIT_OUTPUT


def test_unknown_format_exits_with_input_code(tmp_path):
    assert cli.run(['norm', '--space', 'lp:2', '--seq', '[3,4]', '-f', 'xml',
                    '-o', str(tmp_path / 'r.xml')]) == script.EXIT_INPUT


# Vector, summing and tensor commands ##################################

def test_vecnorm_strong(capsys):
    assert cli.run(['vecnorm', '--space', 'lp:1', '--vectors', VECTORS]) == \
        script.EXIT_OK
    assert capsys.readouterr().out.strip() == '6'


def test_vecnorm_chain(capsys):
    assert cli.run(['vecnorm', '--space', 'lp:2', '--vectors', VECTORS,
                    '--kind', 'chain', '--m', '2'] + FAST) == script.EXIT_OK
    names = [line.split()[0] for line in capsys.readouterr().out.splitlines()]
    assert names == ['weak', 'mid', 'strong']


def test_vecnorm_needs_duals():
    assert cli.run(['vecnorm', '--space', 'lp:2', '--vectors', VECTORS,
                    '--kind', 'weak-star']) == script.EXIT_INPUT
    assert cli.run(['vecnorm', '--space', 'lp:2', '--vectors', VECTORS,
                    '--kind', 'sideways']) == script.EXIT_INPUT


def test_summing_pi(capsys):
    assert cli.run(['summing', '--space', 'lp:2', '--operator',
                    SCALAR_OPERATOR, '--kind', 'pi', '--n', '2'] + FAST) == \
        script.EXIT_OK
    assert capsys.readouterr().out.strip() == '1'


def test_summing_rejects_bad_lengths():
    assert cli.run(['summing', '--space', 'lp:2', '--operator',
                    SCALAR_OPERATOR, '--n', 'two']) == script.EXIT_INPUT


def test_tensor_gamma(capsys):
    assert cli.run(['tensor', '--space', 'lp:2', '--tensor', IDENTITY,
                    '--kind', 'gamma'] + FAST) == script.EXIT_OK
    assert capsys.readouterr().out.strip() == '2'


def test_tensor_trace_needs_an_operator():
    assert cli.run(['tensor', '--space', 'lp:2', '--tensor', IDENTITY,
                    '--kind', 'trace']) == script.EXIT_INPUT


def test_tensor_needs_a_known_dual():
    assert cli.run(['tensor', '--space', 'lorentz:sqrt', '--tensor', IDENTITY,
                    '--kind', 'gamma'] + FAST) == script.EXIT_SPEC


# verify ###############################################################

def test_verify_suite(tmp_path, capsys):
    path = tmp_path / 'verify.json'
    assert cli.run(['verify', '--suite', 'scalar', '--trials', '3',
                    '-o', str(path)]) == script.EXIT_OK
    assert capsys.readouterr().out.strip() == 'scalar: 6 checks, 0 failed'
    parsed = report.parse_report(str(path))
    assert len(parsed['results']) == 6
    assert all(row['passed'] for row in parsed['results'])


@pytest.mark.parametrize('options', [
    ['--suite', 'nothing'],
    ['--suite', 'scalar', '--trials', '0'],
])
def test_verify_rejects_bad_options(options):
    assert cli.run(['verify'] + options) == script.EXIT_INPUT


def test_verify_reports_repeat_with_the_same_seed(tmp_path):
    reports = []
    for name in ('first.json', 'second.json'):
        path = tmp_path / name
        assert cli.run(['verify', '--suite', 'chain', '--trials', '2',
                        '--seed', '11', '-o', str(path)] + FAST) == \
            script.EXIT_OK
        parsed = report.parse_report(str(path))
        for row in parsed['results']:
            del row['elapsed_ms']
        reports.append(json.dumps(parsed, sort_keys=True))
    assert reports[0] == reports[1]


def test_verify_turns_witness_errors_into_failures(monkeypatch, capsys):
    seen = []

    def broken(trials, budget, rng):
        seen.append(optim.witness_checks())
        yield from ()
        raise optim.WitnessError("witness gives 2 > 1")

    monkeypatch.setitem(suites.SUITES, 'scalar', broken)
    previous = optim.set_witness_checks(False)
    try:
        code = cli.run(['verify', '--suite', 'scalar', '--trials', '1'])
        assert not optim.witness_checks()
    finally:
        optim.set_witness_checks(previous)
    assert code == script.EXIT_VIOLATION
    assert seen == [True]
    assert capsys.readouterr().out.strip() == 'scalar: 1 checks, 1 failed'


def test_errors_are_logged(tmp_path, monkeypatch, capsys, caplog):
    monkeypatch.setattr(common, 'LOG_DIR', str(tmp_path))
    assert cli.run(['verify', '--suite', 'nothing']) == script.EXIT_INPUT
    assert capsys.readouterr().err.startswith(
        '*** Error *** verify: Input Error: unknown suite nothing')
    assert any('unknown suite nothing' in record.getMessage()
               for record in caplog.records)
