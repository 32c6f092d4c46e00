import pytest
from mpmath import mp, mpf, exp, log, pi, sqrt

from src.asymptotics import constants, correction, estimate, rho_expansion
from src.models import Classical, KPowerPlusSingleton, LData, PowerAP, l_data
from src.oracle import pentagonal_counts
from src.special import riemann_zeta, zeta_deriv0
from src.utils.errors import ArgumentError, CapabilityError

TIGHT = mpf(10) ** -30


@pytest.fixture
def classical_constants():
    return constants(l_data(Classical()))


def test_classical_constants(classical_constants):
    ac = classical_constants
    assert abs(ac.frak_b - 1 / (4 * sqrt(3))) < TIGHT
    assert abs(ac.frak_c - pi * sqrt(mpf(2) / 3)) < TIGHT
    assert abs(ac.frak_h - 1) < TIGHT
    assert abs(ac.frak_a - pi / sqrt(6)) < TIGHT
    assert ac.frak_c > ac.frak_a


def test_classical_first_correction(classical_constants):
    expected = -sqrt(mpf(2) / 3) * (pi / 48 + 3 / (2 * pi))
    assert abs(classical_constants.c1 - expected) < TIGHT
    assert float(classical_constants.c1) == pytest.approx(-0.443288, rel=1e-4)


def test_gamma01_is_half_a_times_l_minus_one():
    ld = l_data(PowerAP(3, 4, 1))
    ac = constants(ld)
    assert abs(ac.gamma01 - ac.frak_a * ld.Lm1 / 2) < TIGHT


@pytest.mark.parametrize("k", [2, 3])
def test_powers_gamma10(k):
    ac = constants(l_data(PowerAP(1, 1, k)))
    expected = -(11 * k ** 2 + 11 * k + 2) / (24 * k * ac.frak_c)
    assert abs(ac.gamma10 - expected) < TIGHT


@pytest.mark.parametrize("k", [1, 2, 3])
def test_powers_constants_match_direct_zeta_form(k):
    # L(z) = zeta(k z): alpha = A = 1/k, L(0) = zeta(0), L'(0) = k zeta'(0)
    direct = LData(
        alpha=mpf(1) / k,
        residue_A=mpf(1) / k,
        L0=riemann_zeta(0),
        L0_prime=k * zeta_deriv0(),
        Lm1=riemann_zeta(-k),
    )
    via_ap = constants(l_data(PowerAP(1, 1, k)))
    via_zeta = constants(direct)
    for field in ('frak_a', 'frak_b', 'frak_c', 'frak_h', 'gamma10', 'gamma01'):
        assert abs(getattr(via_ap, field) - getattr(via_zeta, field)) < TIGHT


def test_ap_one_one_one_matches_classical(classical_constants):
    ac = constants(l_data(PowerAP(1, 1, 1)))
    for field in ('frak_b', 'frak_c', 'frak_h', 'gamma10', 'gamma01'):
        assert abs(getattr(ac, field) - getattr(classical_constants, field)) < TIGHT


@pytest.mark.parametrize("k, a", [(2, 1), (3, 2)])
def test_singleton_family_display(k, a):
    ac = constants(l_data(KPowerPlusSingleton(k, a)))
    assert abs(ac.frak_b - sqrt(k) / (2 * a * pi * sqrt(2))) < mpf(10) ** -20
    assert abs(ac.frak_c - pi * sqrt(mpf(2) / (3 * k))) < mpf(10) ** -20
    assert abs(ac.frak_h - mpf(1) / 2) < mpf(10) ** -20
    assert not ac.class_d


def test_estimate_at_one(classical_constants):
    result = estimate(classical_constants, 1)
    ac = classical_constants
    assert abs(result.value - ac.frak_b * exp(ac.frak_c)) < TIGHT
    assert float(result.value) == pytest.approx(1.87667, rel=1e-5)
    assert abs(result.log_value - log(result.value)) < TIGHT


def test_estimate_convergence_at_ten_thousand(classical_constants):
    exact = pentagonal_counts(10000)[10000]
    log_exact = log(mpf(exact))
    order0 = estimate(classical_constants, 10000, order=0)
    order1 = estimate(classical_constants, 10000, order=1)
    error0 = abs(exp(log_exact - order0.log_value) - 1)
    error1 = abs(exp(log_exact - order1.log_value) - 1)
    assert mpf('0.0029') < error0 < mpf('0.0059')
    assert error1 < mpf('0.001')
    assert not order1.degraded


def test_estimate_without_gamma01_is_degraded(caplog):
    ld = LData(alpha=mpf(1), residue_A=mpf(1), L0=mpf(-1) / 2, L0_prime=zeta_deriv0())
    ac = constants(ld)
    assert ac.gamma01 is None
    _, missing = correction(ac, 100)
    assert missing
    result = estimate(ac, 100, order=1)
    assert result.degraded
    assert 'gamma01' in caplog.text


def test_estimate_rejects_bad_arguments(classical_constants):
    with pytest.raises(ArgumentError):
        estimate(classical_constants, 0)
    with pytest.raises(ArgumentError):
        estimate(classical_constants, 10, order=2)


def test_ldata_rejects_nonpositive_alpha():
    with pytest.raises(ArgumentError):
        LData(alpha=mpf(0), residue_A=mpf(1), L0=mpf(0), L0_prime=mpf(0))


def test_rho_expansion_classical():
    ld = l_data(Classical())
    expected = (pi / sqrt(6)) / 1000 + (mpf(-1) / 2) / (2 * mpf(10) ** 6)
    assert abs(rho_expansion(ld, 10 ** 6) - expected) < mpf(10) ** -40


def test_rho_expansion_higher_terms():
    ld = l_data(Classical())
    two = rho_expansion(ld, 1000)
    three = rho_expansion(ld, 1000, terms=3)
    four = rho_expansion(ld, 1000, terms=4)
    a = pi / sqrt(6)
    c21 = ld.L0 ** 2 / (8 * a)
    assert abs(three - two - c21 / mpf(1000) ** mpf('1.5')) < TIGHT
    # zeta(0) L(-1) a / 2 at n^(-3/2)
    assert abs(four - three - (mpf(1) / 24) * a / 2 / mpf(1000) ** mpf('1.5')) < TIGHT


def test_rho_expansion_needs_l_minus_one_for_fourth_term():
    ld = LData(alpha=mpf(1), residue_A=mpf(1), L0=mpf(-1) / 2, L0_prime=zeta_deriv0())
    with pytest.raises(CapabilityError):
        rho_expansion(ld, 100, terms=4)
    with pytest.raises(ArgumentError):
        rho_expansion(ld, 100, terms=5)


def test_rho_expansion_scaling():
    ld = l_data(PowerAP(1, 1, 2))
    n = mpf(10) ** 6
    leading = rho_expansion(ld, 10 ** 6) - ld.L0 / ((1 + ld.alpha) * n)
    assert abs(leading * n ** (mpf(2) / 3) - constants(ld).frak_a) < TIGHT
    assert mp.isfinite(leading)
