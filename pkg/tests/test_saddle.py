import math

import pytest
from mpmath import mp, mpf, mpc, exp, fabs, log

from src.asymptotics import rho_expansion
from src.models import Classical, Polynomial, PowerAP, UnionAP, l_data, parts_up_to
from src.oracle import model_counts, pentagonal_counts
from src.saddle import (
    cauchy_count,
    check_periodicity,
    default_quad_points,
    derivative_tuples,
    phi,
    phi_deriv,
    phi_expansion,
    saddle_estimate,
    saddle_series,
    solve_saddle,
    verify_arc_bound,
    verify_phi_expansion,
    verify_saddle_inversion,
)
from src.utils.errors import ArgumentError, CapabilityError

SIGMAS = [mpf(2) ** -e for e in range(3, 11)]


# phi

def test_phi_at_large_sigma(classical):
    value = phi(classical, 20)
    assert isinstance(value, mp.mpf)
    assert fabs(value / exp(-20) - 1) < mpf('1e-8')


def test_phi_conjugate_symmetry(squares):
    upper = phi(squares, mpc('0.3', '1.7'))
    lower = phi(squares, mpc('0.3', '-1.7'))
    assert fabs(upper - mp.conj(lower)) < mpf(10) ** -40


def test_phi_union_against_direct_sum():
    spec = UnionAP(((1, 2), (2, 3)))
    sigma = mpf('0.5')
    direct = -mp.fsum(log(1 - exp(-sigma * m)) for m in parts_up_to(spec, 400))
    assert fabs(phi(spec, sigma) - direct) < mpf(10) ** -40


def test_phi_rejects_left_half_plane(classical):
    with pytest.raises(ArgumentError):
        phi(classical, 0)
    with pytest.raises(ArgumentError):
        phi(classical, mpc(-1, 2))
    with pytest.raises(ArgumentError):
        phi_deriv(classical, mpf('0.5'), 7)


@pytest.mark.parametrize("sigma", [mpf('0.05'), mpf('0.3'), mpf(1)])
@pytest.mark.parametrize("k", [1, 2])
def test_phi_deriv_against_finite_differences(squares, sigma, k):
    h = mpf(10) ** -10
    if k == 1:
        numeric = (phi(squares, sigma + h) - phi(squares, sigma - h)) / (2 * h)
    else:
        numeric = (phi_deriv(squares, sigma + h, 1) - phi_deriv(squares, sigma - h, 1)) / (2 * h)
    exact = phi_deriv(squares, sigma, k)
    assert fabs(numeric / exact - 1) < mpf('1e-6')


@pytest.mark.parametrize("spec", [Classical(), PowerAP(1, 1, 2), PowerAP(3, 4, 1), Polynomial((1, 0, 1))])
def test_phi_derivative_signs(spec):
    sigma = mpf('0.1')
    for k in range(1, 7):
        assert (-1) ** k * phi_deriv(spec, sigma, k) > 0


def test_phi_second_derivative_scaling(classical):
    ratio = phi_deriv(classical, mpf('0.01'), 2) / phi_deriv(classical, mpf('0.02'), 2)
    assert fabs(ratio - 8) < mpf('0.08')


def test_classical_strong_expansion_is_exact(classical):
    ld = l_data(classical)
    sigma = mpf('0.05')
    direct = -phi_deriv(classical, sigma, 1)
    assert fabs(direct - phi_expansion(ld, sigma, k=1, strong=True)) < mpf(10) ** -35
    # the weak form misses zeta(0) L(-1) = 1/24
    assert fabs(direct - phi_expansion(ld, sigma, k=1) - mpf(1) / 24) < mpf('1e-10')


def test_strong_expansion_needs_negative_values():
    ld = l_data(Polynomial((1, 0, 1)))
    with pytest.raises(CapabilityError):
        phi_expansion(ld, mpf('0.1'), strong=True)


# saddle point

def test_solve_saddle_classical(classical):
    ctx = solve_saddle(classical, 100)
    assert mpf('0.12') < ctx.rho < mpf('0.13')
    assert ctx.residual < mpf('1e-7')
    assert ctx.phi2 > 0
    assert fabs(ctx.derivative(1) + 100) < mpf('1e-7')


def test_saddle_decreases_with_n(classical):
    assert solve_saddle(classical, 50).rho > solve_saddle(classical, 51).rho


def test_saddle_near_expansion_for_squares(squares):
    ctx = solve_saddle(squares, 10000)
    expansion = rho_expansion(l_data(squares), 10000)
    assert fabs(ctx.rho / expansion - 1) < mpf('0.01')


def test_solve_saddle_rejects_small_n(classical):
    with pytest.raises(ArgumentError):
        solve_saddle(classical, 0)


def test_derivative_tuples():
    assert derivative_tuples(1) == [(4,), (3, 3)]
    level2 = derivative_tuples(2)
    assert len(level2) == 8
    assert (6,) in level2 and (3, 3, 3, 3) in level2
    assert all(sum(m - 2 for m in t) == 4 for t in level2)


def test_first_level_series_closed_form(classical):
    ctx = solve_saddle(classical, 200)
    p2, p3, p4 = ctx.phi2, ctx.derivative(3), ctx.derivative(4)
    closed = 1 + p4 / (8 * p2 ** 2) - 5 * p3 ** 2 / (24 * p2 ** 3)
    assert fabs(saddle_series(ctx, 1) - closed) < mpf(10) ** -40


def test_saddle_estimate_base(classical):
    ctx = solve_saddle(classical, 100)
    expected = ctx.F_log + ctx.rho * 100 - log(2 * mp.pi * ctx.phi2) / 2
    assert fabs(saddle_estimate(classical, 100, ctx=ctx) - expected) < mpf(10) ** -40
    with pytest.raises(ArgumentError):
        saddle_estimate(classical, 100, K=3, ctx=ctx)


def test_saddle_correction_levels_improve(classical):
    log_exact = log(mpf(pentagonal_counts(1000)[1000]))
    ctx = solve_saddle(classical, 1000)
    errors = [fabs(saddle_estimate(classical, 1000, K=K, ctx=ctx) - log_exact) for K in (0, 1, 2)]
    assert errors[1] < errors[0]
    assert errors[2] < errors[0]


# Cauchy quadrature

def test_cauchy_small_values(classical, squares):
    result = cauchy_count(classical, 10)
    assert result.rounded == 42
    assert result.deviation < mpf('0.25')
    assert cauchy_count(squares, 20).rounded == 12


def test_default_quad_points_alignment(classical):
    ctx = solve_saddle(classical, 300)
    points = default_quad_points(ctx, 1)
    assert points % 64 == 0
    assert points >= 256


def test_cauchy_rejects_bad_arguments(classical):
    with pytest.raises(ArgumentError):
        cauchy_count(classical, 0)
    with pytest.raises(ArgumentError):
        cauchy_count(classical, 10, quad_points=32)


@pytest.mark.slow
@pytest.mark.parametrize("spec", [Classical(), PowerAP(1, 1, 2), PowerAP(3, 4, 1)])
def test_cauchy_matches_exact_counts(spec):
    counts = model_counts(spec, 200)
    for n in range(1, 201):
        result = cauchy_count(spec, n)
        assert result.rounded == counts[n], f"n = {n}"
        assert result.deviation < mpf('0.25')


# verification

def test_weak_expansion_classical(classical):
    report = verify_phi_expansion(classical, SIGMAS)
    assert report.passed
    assert all(row.scaled < 1 for row in report.rows)


def test_strong_expansion_classical(classical):
    report = verify_phi_expansion(classical, SIGMAS, strong=True)
    assert report.passed
    assert report.slope >= 3


def test_strong_expansion_progression(progression):
    report = verify_phi_expansion(progression, SIGMAS, strong=True)
    assert report.passed
    assert math.isfinite(report.slope)
    assert report.slope >= 3


def test_weak_expansion_progression(progression):
    report = verify_phi_expansion(progression, SIGMAS)
    assert report.passed
    assert report.slope >= report.epsilon


def test_weak_expansion_union():
    report = verify_phi_expansion(UnionAP(((1, 2), (2, 3))), SIGMAS)
    assert report.passed


def test_weak_expansion_polynomial_below_its_first_extra_pole():
    report = verify_phi_expansion(Polynomial((1, 0, 1)), SIGMAS, epsilon=0.25)
    assert report.passed


def test_strong_check_needs_negative_values():
    with pytest.raises(CapabilityError):
        verify_phi_expansion(Polynomial((1, 0, 1)), SIGMAS, strong=True)


def test_expansion_check_needs_two_sigmas(classical):
    with pytest.raises(ArgumentError):
        verify_phi_expansion(classical, [mpf('0.1')])


def test_arc_bound_classical(classical):
    report = verify_arc_bound(classical, 500)
    assert report.passed
    assert report.minor_max < report.rho
    assert report.first_ratio < 1
    with pytest.raises(ArgumentError):
        verify_arc_bound(classical, 500, grid=999)


@pytest.mark.slow
def test_arc_constant_does_not_grow(classical):
    small = verify_arc_bound(classical, 500)
    large = verify_arc_bound(classical, 2000)
    assert large.passed
    assert large.constant <= small.constant


@pytest.mark.slow
def test_saddle_inversion_classical(classical):
    rows = verify_saddle_inversion(classical, [1000, 10000, 100000])
    assert all(row.passed for row in rows)


def test_periodicity(classical, progression):
    assert check_periodicity(classical).passed
    assert check_periodicity(progression, sigma=mpf('0.2')).passed
