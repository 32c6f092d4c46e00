import io
import json

import pytest
from mpmath import mpf
from pydantic import ValidationError

from main import main
from src.cli import (
    RunConfig,
    correction_exponents,
    error_handler,
    handle_run,
    ladder,
    parse_spec,
    run_compare,
    run_fit,
    run_verify,
    validate_spec,
    weak_epsilon,
    write_rows,
)
from src.cli.output import ExactRow
from src.models import Classical, KPowerPlusSingleton, Polynomial, PowerAP, UnionAP, format_spec
from src.utils.errors import ArgumentError, CapabilityError, FitError, NumericError, ParseError

CLASSICAL_C1 = -0.443288


@pytest.fixture(autouse=True)
def log_directory(tmp_path, monkeypatch):
    monkeypatch.setenv('PARTITIONS_LOG_DIR', str(tmp_path / 'logs'))


# parsing

@pytest.mark.parametrize("text, expected", [
    ('classical', Classical()),
    ('classical()', Classical()),
    ('powers(2)', PowerAP(1, 1, 2)),
    ('ap(3,4,2)', PowerAP(3, 4, 2)),
    ('ap(3,4,1)', PowerAP(3, 4, 1)),
    ('poly(1,0,1)', Polynomial((1, 0, 1))),
    ('unionap(1,2;2,3)', UnionAP(((1, 2), (2, 3)))),
    ('kpow1(3,2)', KPowerPlusSingleton(3, 2)),
    ('  powers(3)  ', PowerAP(1, 1, 3)),
])
def test_parse_spec(text, expected):
    assert parse_spec(text) == expected


@pytest.mark.parametrize("text", ['classical', 'powers(3)', 'ap(3,4,2)', 'poly(1,1,2)', 'unionap(1,2;2,3)', 'kpow1(2,1)'])
def test_format_round_trip(text):
    assert format_spec(parse_spec(text)) == text


def test_invalid_model_is_argument_error():
    with pytest.raises(ArgumentError) as info:
        parse_spec('poly(1,0,0)')
    assert not isinstance(info.value, ParseError)


@pytest.mark.parametrize("text, column, token", [
    ('foo(1)', 0, 'foo'),
    ('ap(3, 4, 1)', 5, ' '),
    ('ap(3;4,1)', 4, ';'),
    ('classical)', 9, ')'),
])
def test_parse_errors_locate_the_token(text, column, token):
    with pytest.raises(ParseError) as info:
        parse_spec(text)
    assert info.value.column == column
    assert info.value.token == token


@pytest.mark.parametrize("text", ['', 'ap(3,4,1', 'ap(3,4)', 'powers(1,2)', 'unionap(1,2,3)', 'ap(,1)'])
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_spec(text)


def test_validate_spec():
    assert validate_spec('ap(3,4,1)') == (True, None)
    ok, message = validate_spec('ap(2,4,1)')
    assert not ok and message


# run configuration

def test_run_config_flags():
    with pytest.raises(ValidationError):
        RunConfig(command='estimate', spec=Classical(), n=10, quad_points=128)
    with pytest.raises(ValidationError):
        RunConfig(command='exact', spec=Classical())
    with pytest.raises(ValidationError):
        RunConfig(command='cauchy', spec=Classical(), n_max=10)
    with pytest.raises(ValidationError):
        RunConfig(command='estimate', spec='classical', n=10)
    cfg = RunConfig(command='cauchy', spec=Classical(), n=10, quad_points=128)
    assert cfg.spec_text == 'classical'


def test_exact_allows_zero_nmax():
    assert RunConfig(command='exact', spec=Classical(), n_max=0).n_max == 0
    with pytest.raises(ValidationError):
        RunConfig(command='compare', spec=Classical(), n_max=0)
    with pytest.raises(ValidationError):
        RunConfig(command='fit', spec=Classical(), n_max=0)


def test_ladder():
    assert ladder(10, 100) == [10, 20, 40, 80, 100]
    assert ladder(10, 10) == [10]
    assert ladder(10, 5) == [5]


def test_correction_exponents():
    assert correction_exponents(1.0, 4) == [0.5, 1.0, 1.5, 2.0]
    expected = [1 / 3, 2 / 3, 1.0, 4 / 3]
    assert correction_exponents(0.5, 4) == pytest.approx(expected)


# output

def test_write_rows_csv_and_json():
    rows = [ExactRow(n=0, exact='1', log_exact=0.0), ExactRow(n=1, exact='0', log_exact=None)]
    stream = io.StringIO()
    write_rows(ExactRow, rows, 'csv', stream)
    assert stream.getvalue().splitlines() == ['n,exact,log_exact', '0,1,0.0', '1,0,']

    stream = io.StringIO()
    write_rows(ExactRow, rows, 'json', stream)
    data = json.loads(stream.getvalue())
    assert data[1] == {'n': 1, 'exact': '0', 'log_exact': None}


def test_exact_command_csv(capsys):
    assert main(['exact', '--spec', 'classical', '--nmax', '10']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'n,exact,log_exact'
    assert lines[-1].startswith('10,42,')
    assert len(lines) == 12


def test_exact_command_at_zero(capsys):
    assert main(['exact', '--spec', 'classical', '--nmax', '0']) == 0
    assert capsys.readouterr().out.splitlines() == ['n,exact,log_exact', '0,1,0.0']


def test_exact_command_union(capsys):
    assert main(['exact', '--spec', 'unionap(1,2;2,3)', '--nmax', '5']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[4].startswith('3,3,')
    assert lines[6].startswith('5,6,')


def test_exact_command_polynomials(capsys):
    assert main(['exact', '--spec', 'poly(1,0,1)', '--nmax', '5']) == 0
    assert capsys.readouterr().out.splitlines()[-1].startswith('5,4,')
    assert main(['exact', '--spec', 'poly(1,0,0)', '--nmax', '5']) == 2
    assert 'f(0)' in capsys.readouterr().err


def test_estimate_command_json(capsys):
    assert main(['estimate', '--spec', 'classical', '--n', '100', '--format', 'json']) == 0
    data = json.loads(capsys.readouterr().out)
    assert data[0]['n'] == 100
    assert abs(data[0]['log_saddle'] - data[0]['log_estimate']) < 1


def test_output_is_deterministic(capsys):
    argv = ['cauchy', '--spec', 'powers(2)', '--n', '50']
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_weak_epsilon_below_extra_pole():
    assert weak_epsilon(Classical(), 0.5) == 0.5
    assert weak_epsilon(PowerAP(3, 4, 1), 0.5) == 0.5
    assert weak_epsilon(Polynomial((1, 0, 1)), 0.5) == pytest.approx(0.25)


def test_handle_run_writes_to_stream(config):
    cfg = RunConfig(command='exact', spec=PowerAP(1, 1, 2), n_max=20)
    stream = io.StringIO()
    assert handle_run(cfg, config, stream) == 0
    assert stream.getvalue().splitlines()[-1].startswith('20,12,')


# exit codes

def test_inadmissible_model_exit_code(capsys):
    assert main(['compare', '--spec', 'poly(1,1,2)', '--nmax', '100']) == 2
    err = capsys.readouterr().err
    assert '(g)' in err
    assert 'error:' in err


def test_flag_errors_exit_code(capsys):
    assert main(['exact', '--spec', 'classical', '--nmax', '10', '--quad-points', '128']) == 2
    assert main(['exact', '--spec', 'nosuch', '--nmax', '10']) == 2
    assert 'unknown model' in capsys.readouterr().err


def test_error_handler_codes(capsys):
    assert error_handler(ArgumentError('bad')) == 2
    assert error_handler(CapabilityError('missing L(-1)')) == 3
    assert error_handler(NumericError('diverged')) == 4
    assert error_handler(RuntimeError('boom')) == 1
    assert 'error: missing L(-1)' in capsys.readouterr().err


# compare and fit

@pytest.mark.slow
def test_compare_classical_converges(config):
    cfg = RunConfig(command='compare', spec=Classical(), n_max=10000, order=1)
    rows = run_compare(cfg, config)
    assert rows[-1].n == 10000
    assert abs(mpf(rows[-1].ratio) - 1) < mpf('0.01')
    assert all(row.log_cauchy is not None for row in rows if row.n <= config['compare']['cauchy_max'])
    cauchy = [row for row in rows if row.log_cauchy is not None]
    assert all(abs(row.log_cauchy - row.log_exact) < 1e-6 for row in cauchy)


@pytest.mark.slow
def test_compare_squares_trends_to_one(config):
    cfg = RunConfig(command='compare', spec=PowerAP(1, 1, 2), n_max=5000, order=1)
    rows = run_compare(cfg, config)
    assert abs(mpf(rows[-1].ratio) - 1) < abs(mpf(rows[0].ratio) - 1)


def test_fit_classical(config):
    cfg = RunConfig(command='fit', spec=Classical(), n_max=2000)
    rows = run_fit(cfg, config)
    first = rows[0]
    assert first.exponent == pytest.approx(0.5)
    assert first.coefficient == pytest.approx(CLASSICAL_C1, rel=0.05)
    assert first.closed_form == pytest.approx(CLASSICAL_C1, rel=1e-4)


@pytest.mark.slow
def test_fit_squares(config):
    cfg = RunConfig(command='fit', spec=PowerAP(1, 1, 2), n_max=5000)
    first = run_fit(cfg, config)[0]
    assert first.exponent == pytest.approx(1 / 3)
    assert first.relative_error < 0.1


def test_fit_needs_enough_data(config):
    cfg = RunConfig(command='fit', spec=Classical(), n_max=500)
    with pytest.raises(FitError):
        run_fit(cfg, config)


def test_fit_ap_one_one_one_matches_classical(config):
    classical = run_fit(RunConfig(command='fit', spec=Classical(), n_max=2000), config)
    ap = run_fit(RunConfig(command='fit', spec=PowerAP(1, 1, 1), n_max=2000), config)
    for a, b in zip(classical, ap):
        assert a.coefficient == pytest.approx(b.coefficient, rel=1e-9)


@pytest.mark.slow
def test_verify_classical(config):
    cfg = RunConfig(command='verify', spec=Classical())
    rows = run_verify(cfg, config)
    checks = {row.check for row in rows}
    assert {'admissible_a', 'condition_g', 'convolution', 'counting', 'phi_expansion_weak',
            'phi_expansion_strong', 'saddle_inversion', 'arc_bound', 'periodicity'} <= checks
    assert all(row.passed for row in rows)
