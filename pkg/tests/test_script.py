"""Tests for seqnorms.evaluation.script."""
import json

# 3rd party libraries
import pytest

# Local imports
from seqnorms.evaluation import optim
from seqnorms.evaluation import report
from seqnorms.evaluation import script
from seqnorms.evaluation.script import ScriptInputError
from seqnorms.evaluation.spaces import (OrliczFunction, SequenceError,
                                        SpaceSpec, SpecValidationError)


# Make Space ###########################################################

@pytest.mark.parametrize('text, expected', [
    ('lp:2', SpaceSpec.lp(2)),
    ('lp:inf', SpaceSpec.lp('inf')),
    ('c0', SpaceSpec.c0()),
    ('orlicz:power:3', SpaceSpec.orlicz([OrliczFunction('power', p=3)])),
    ('lorentz:geometric:0.5', SpaceSpec.lorentz('geometric:0.5', p=1)),
    ('lorentz:power:0.5:p=2', SpaceSpec.lorentz('power:0.5', p=2)),
    ('garling_mu:sqrt:p=2', SpaceSpec.garling_mu('sqrt', p=2)),
    ('garling_nu:power:0.5:p=3', SpaceSpec.garling_nu('power:0.5', p=3)),
    ('sargent_m:sqrt', SpaceSpec.sargent_m('sqrt')),
    ('sargent_n:power:0.5', SpaceSpec.sargent_n('power:0.5')),
])
def test_make_space(text, expected):
    assert script.make_space(text) == expected


@pytest.mark.parametrize('text', [
    'lp', 'lp:2:3', 'lp:0.5', 'c0:1', 'orlicz:power', 'hardy:sqrt',
    'lorentz', 'lorentz:bad', 'sargent_m:sqrt:p=2',
])
def test_make_space_rejects_bad_spaces(text):
    with pytest.raises(SpecValidationError):
        script.make_space(text)


def test_make_space_needs_a_space():
    with pytest.raises(ScriptInputError):
        script.make_space()


def test_make_space_from_file(tmp_path):
    path = tmp_path / 'space.json'
    path.write_text(json.dumps(SpaceSpec.sargent_n('sqrt').as_dict()))
    assert script.make_space(space_file=str(path)) == \
        SpaceSpec.sargent_n('sqrt')
    with pytest.raises(ScriptInputError):
        script.make_space(space_file=str(tmp_path / 'missing.json'))


# Budgets and config files #############################################

def test_parse_budget_env():
    assert script.parse_budget_env(None) == {}
    assert script.parse_budget_env('restarts=8, step=0.25,seed=3') == \
        {'restarts': 8, 'step': 0.25, 'seed': 3}
    for text in ('speed=2', 'restarts', 'restarts=many'):
        with pytest.raises(ScriptInputError):
            script.parse_budget_env(text)


def test_make_budget_precedence():
    budget = script.make_budget({'restarts': 32, 'seed': 7},
                                env='restarts=8,seed=3',
                                file_budget={'seed': 5, 'iterations': 10},
                                overrides={'seed': 9, 'restarts': None})
    assert budget == optim.OptBudget(restarts=8, iterations=10, seed=9)


def test_make_budget_rejects_bad_fields():
    with pytest.raises(ScriptInputError):
        script.make_budget({'restart': 3})
    with pytest.raises(ScriptInputError):
        script.make_budget({'decay': 2})


def test_settings_attach_the_inner_budget(clean_env):
    run = script.RunConfig('norm')
    shared = optim.INNER_BUDGET
    budget, _ = run.settings({'seed': 5})
    assert optim.INNER_BUDGET is shared
    assert budget.inner == script.make_budget(run.user['inner_budget'])
    assert budget.nested() == budget.inner.replace(seed=5)


def test_load_config_file(tmp_path):
    assert script.load_config_file(None) == {}
    good = tmp_path / 'good.json'
    good.write_text(json.dumps({'budget': {'restarts': 1}}))
    assert script.load_config_file(str(good)) == {'budget': {'restarts': 1}}

    unknown = tmp_path / 'unknown.json'
    unknown.write_text(json.dumps({'budget': {}, 'colour': 'red'}))
    listed = tmp_path / 'list.json'
    listed.write_text('[1, 2]')
    broken = tmp_path / 'broken.json'
    broken.write_text('{"budget": ')
    for path in (unknown, listed, broken):
        with pytest.raises(ScriptInputError):
            script.load_config_file(str(path))


# Inputs ###############################################################

def test_read_input(tmp_path):
    assert script.read_input([1, 2], None, 'sequence') == [1, 2]
    assert script.read_input('[1, 2]', None, 'sequence') == [1, 2]
    path = tmp_path / 'seq.json'
    path.write_text('[3, 4]')
    assert script.read_input(None, str(path), 'sequence') == [3, 4]
    with pytest.raises(ScriptInputError):
        script.read_input('[1,', None, 'sequence')
    with pytest.raises(ScriptInputError):
        script.read_input(None, None, 'sequence')


def test_make_inputs():
    assert script.make_sequence('[3, 4]').as_list() == [3.0, 4.0]
    with pytest.raises(SequenceError):
        script.make_sequence('[[1, 2], [3, 4]]')
    arr = script.make_double_array('[[1, 2], [3, 4]]')
    assert arr.entries.shape == (2, 2)
    xs = script.make_vectors('{"oracle": "l2:2", "vectors": [[1, 0]]}')
    assert len(xs) == 1
    T = script.make_operator({'domain': 'l2:2', 'codomain': 'l2:1',
                              'rows': [[1, 2]]})
    assert T.entries.shape == (1, 2)
    u = script.make_tensor({'domain': 'l2:2', 'codomain': 'l2:1',
                            'entries': [[1], [2]]})
    assert u.rank() == 1


def test_parse_int_and_null_arg():
    assert script.parse_int('3', '--n') == 3
    with pytest.raises(ScriptInputError):
        script.parse_int('three', '--n')
    assert script.null_arg(None, 4) == 4
    assert script.null_arg(0, 4) == 0


# Exit codes ###########################################################

def test_exit_codes():
    assert script.exit_code(SpecValidationError('x')) == script.EXIT_SPEC
    assert script.exit_code(report.ReportError('x')) == script.EXIT_OUTPUT
    assert script.exit_code(ScriptInputError('x')) == script.EXIT_INPUT
    assert script.exit_code(SequenceError('x')) == script.EXIT_INPUT


def test_run_script_maps_outcomes(capsys):
    def passing(**options):
        return [report.make_row('ok', 1, optim.EXACT, passed=True)]

    def failing(**options):
        return [report.make_row('bad', 1, optim.EXACT, passed=False)]

    def broken(**options):
        raise SpecValidationError('no such space')

    assert script.run_script([], [], 'help', passing) == script.EXIT_OK
    assert script.run_script([], [], 'help', failing) == \
        script.EXIT_VIOLATION
    assert script.run_script([], [], 'help', broken) == script.EXIT_SPEC
    assert '*** Error ***' in capsys.readouterr().err
    assert script.run_script(['-h'], [], 'the help', broken) == script.EXIT_OK
    assert 'the help' in capsys.readouterr().out
    assert script.run_script(['--bogus'], [], 'help', passing) == \
        script.EXIT_INPUT
    assert script.run_script(['stray'], [], 'help', passing) == \
        script.EXIT_INPUT


def test_run_script_passes_options():
    seen = {}

    def main(**options):
        seen.update(options)
        return []

    script.run_script(['--space', 'lp:2', '--seed', '3', '-v', '--flag',
                       '--kind', 'weak'], ['flag', 'kind='], 'help', main)
    assert seen == {'space': 'lp:2', 'seed': 3, 'verbose': True,
                    'flag': True, 'kind': 'weak'}
