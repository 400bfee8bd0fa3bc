"""Tests for the word parser, run configuration and the imcrystal command line."""

import json
import os

import pytest
from hypothesis import given, strategies as st

from algebra.errors import ParseError
from algebra.laurent import LaurentQ
from algebra.words import EMPTY_WORD, Element, Generator, format_word, make_word
from cli import RunConfig, parse_generator, parse_nodes, parse_word
from cli import runner
from evaluation.batch import THREADS_ENV
from evaluation.reports import load_report, validate_report
from imcrystal import build_parser, main

A1_ARGS = ['--algebra', 'A', '--rank', '1']
A2_ARGS = ['--algebra', 'A', '--rank', '2']


def error_object(stderr: str) -> dict:
    lines = [line for line in stderr.splitlines() if line.startswith('{')]
    assert lines, stderr
    return json.loads(lines[-1])


# -- parser -----------------------------------------------------------------

def test_parse_word():
    assert parse_word("x[1,0] x[2,-1]") == make_word([(1, 0), (2, -1)])
    assert parse_word("x[ 1 , +3 ]x[1,1]") == make_word([(1, 3), (1, 1)])
    assert parse_word(" 1 ") == EMPTY_WORD


@pytest.mark.parametrize("text,offset", [
    ("x[1;2]", 3),
    ("", 0),
    ("x[1,0] 1", 7),
    ("x[1,", 4),
    ("y[1,0]", 0),
])
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_word(text)
    assert info.value.details['offset'] == offset


@given(st.lists(st.builds(Generator, st.integers(1, 9), st.integers(-20, 20)), max_size=5).map(tuple))
def test_format_then_parse(w):
    assert parse_word(format_word(w)) == w


def test_parse_generator_and_nodes():
    assert parse_generator("x[2,-1]") == Generator(2, -1)
    with pytest.raises(ParseError):
        parse_generator("x[1,0] x[1,1]")
    assert parse_nodes("2, 1,2") == (1, 2)
    assert parse_nodes(None) is None
    with pytest.raises(ParseError) as info:
        parse_nodes("1,a")
    assert info.value.details['offset'] == 2


def test_json_flag_meaning_depends_on_subcommand():
    parser = build_parser()
    verify = RunConfig.from_args(parser.parse_args(['verify', 'gram', '--json', 'r.json']))
    assert verify.output == 'r.json'
    assert verify.json_output is False
    describe = RunConfig.from_args(parser.parse_args(['describe', '--json']))
    assert describe.output is None
    assert describe.json_output is True


# -- subcommands ------------------------------------------------------------

def test_describe_g2(capsys):
    assert main(['describe', '--algebra', 'G2']) == 0
    out = capsys.readouterr().out
    assert "d = (3,1)" in out
    assert "g-table" in out


def test_describe_json(capsys):
    assert main(['describe', *A2_ARGS, '--json']) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['cartan_matrix'] == [[2, -1], [-1, 2]]
    assert payload['g_table']['2'][:2] == ['q^2', 'q^4 - 1']


def test_star_json(capsys):
    assert main(['star', *A2_ARGS, '--left', 'x[1,0]', '--right', 'x[2,1]', '--json']) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['case'] == 'C2'
    assert len(payload['result']) == 3
    assert payload['ordered'] is True
    assert payload['soundness']['fraction_valid'] == 1.0


def test_star_strict_no_case_is_an_engine_error(capsys):
    code = main(['star', *A2_ARGS, '--left', 'x[1,0]', '--right', 'x[2,0]', '--strict'])
    assert code == 1
    assert error_object(capsys.readouterr().err)['error'] == 'NoCaseError'


def test_omega_json(capsys):
    assert main(['omega', *A1_ARGS, '--i', '1', '--m', '0', '--word', 'x[1,1] x[1,0]', '--json']) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['variant'] == 'twisted'
    assert Element.from_json(payload['result']) == Element.from_word(make_word([(1, 1)]), LaurentQ.q(2))


def test_omega_trace(capsys):
    assert main(['omega', *A1_ARGS, '--i', '1', '--m', '-1', '--word', 'x[1,1] x[1,0]', '--trace']) == 0
    tree = json.loads(capsys.readouterr().out)
    assert tree['word'] == 'x[1,1] x[1,0]'
    assert Element.from_json(tree['result']) == Element.from_word(make_word([(1, 0)]))


def test_omega_parse_error(capsys):
    code = main(['omega', *A1_ARGS, '--i', '1', '--m', '0', '--word', 'x[1;2]'])
    assert code == 2
    error = error_object(capsys.readouterr().err)
    assert error['error'] == 'ParseError'
    assert error['offset'] == 3


def test_omega_node_out_of_range(capsys):
    assert main(['omega', *A1_ARGS, '--i', '2', '--m', '0', '--word', 'x[1,0]']) == 2
    assert error_object(capsys.readouterr().err)['error'] == 'ConfigError'


def test_pair_json(capsys):
    assert main(['pair', *A1_ARGS, '--left', 'x[1,0] x[1,0]', '--right', 'x[1,0] x[1,0]', '--json']) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['text'] == 'q^2 + 1'
    assert payload['mod_q2'] == [1, 0]
    assert payload['at_q0'] == 1


def test_pair_rejects_unordered_words(capsys):
    assert main(['pair', *A1_ARGS, '--left', 'x[1,0] x[1,1]', '--right', '1']) == 2
    assert error_object(capsys.readouterr().err)['error'] == 'NotOrderedInput'


def test_gram_json(capsys):
    assert main(['gram', *A1_ARGS, '--max-len', '1', '--json']) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['words'] == [[], [[1, 0]], [[1, 1]]]
    assert payload['matrix'][1][1] == [[0, 1]]
    assert payload['matrix'][1][2] == []


def test_enumerate_json(capsys):
    assert main(['enumerate', *A1_ARGS, '--max-len', '1', '--json']) == 0
    assert json.loads(capsys.readouterr().out) == [[], [[1, 0]], [[1, 1]]]


@pytest.mark.parametrize("argv", [
    ['enumerate', *A1_ARGS, '--k-min', '2', '--k-max', '1'],
    ['enumerate', '--algebra', 'D', '--rank', '3'],
    ['enumerate', *A2_ARGS, '--nodes', '3'],
    ['enumerate', *A1_ARGS, '--max-words', '0'],
    ['verify', 'gram', *A1_ARGS, '--m-min', '1', '--m-max', '0'],
])
def test_configuration_errors_exit_two(capsys, argv):
    assert main(argv) == 2
    assert error_object(capsys.readouterr().err)['error'] == 'ConfigError'


def test_window_too_large_exits_two(capsys):
    assert main(['enumerate', *A1_ARGS, '--max-len', '3', '--k-min', '-2', '--k-max', '2',
                 '--max-words', '10']) == 2
    assert error_object(capsys.readouterr().err)['error'] == 'WindowTooLarge'


# -- verify -----------------------------------------------------------------

def test_verify_gram_writes_report(capsys, tmp_path, single_worker):
    path = str(tmp_path / 'reports' / 'gram.json')
    csv = str(tmp_path / 'reports' / 'gram.csv')
    code = main(['verify', 'gram', *A1_ARGS, '--max-len', '2', '--k-min', '0', '--k-max', '1',
                 '--json', path, '--csv', csv, '--strict', '-q'])
    assert code == 0
    assert "Suite: gram" in capsys.readouterr().out

    report = load_report(path)
    assert validate_report(report) == []
    assert report['summary']['failed'] == 0
    assert report['config']['algebra'] == 'A1'
    assert 'workers' not in report['config']
    assert os.path.exists(path + '.meta.json')
    assert os.path.exists(csv)


def test_verify_reports_are_reproducible(tmp_path, single_worker):
    paths = [str(tmp_path / f'run{n}.json') for n in range(2)]
    for path in paths:
        assert main(['verify', 'predicates', *A1_ARGS, '--json', path, '-q']) == 0
    assert open(paths[0], 'rb').read() == open(paths[1], 'rb').read()


def test_verify_failures_exit_one_without_strict(capsys, tmp_path, single_worker):
    # a one-step budget cannot straighten x[1,-2] * x[1,2]
    path = str(tmp_path / 'basis.json')
    code = main(['verify', 'basis', *A1_ARGS, '--max-len', '1', '--k-min', '-2', '--k-max', '2',
                 '--m-min', '-2', '--m-max', '-1', '--max-steps', '1', '--json', path, '-q'])
    assert code == 1
    report = load_report(path)
    assert validate_report(report) == []
    assert report['summary']['failed'] > 0
    assert report['summary']['engine_errors'] > 0


def test_verify_basis_a2_is_byte_identical_across_runs(tmp_path, monkeypatch):
    args = ['verify', 'basis', *A2_ARGS, '--max-len', '2', '--k-min', '-1', '--k-max', '1',
            '--m-min', '-1', '--m-max', '1', '-q']
    paths = []
    for n, workers in enumerate(('1', '2', '1')):
        monkeypatch.setenv(THREADS_ENV, workers)
        path = str(tmp_path / f'basis{n}.json')
        main([*args, '--json', path])
        paths.append(path)
    contents = [open(p, 'rb').read() for p in paths]
    assert contents[0] == contents[1] == contents[2]
    meta = [json.loads(open(p + '.meta.json').read()) for p in paths]
    assert [m['workers'] for m in meta] == [1, 2, 1]


def test_unexpected_errors_print_an_error_object(capsys, monkeypatch):
    def broken(config, C):
        raise RuntimeError("boom")

    monkeypatch.setitem(runner.COMMANDS, 'describe', broken)
    assert main(['describe', '--algebra', 'G2']) == 1
    assert error_object(capsys.readouterr().err) == {'error': 'RuntimeError', 'message': 'boom'}
