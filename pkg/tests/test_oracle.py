import pytest
from mpmath import mpf

from src.models import Classical, PowerAP, UnionAP
from src.oracle import (
    convolution_residual,
    exact_counts,
    f_weights,
    model_counts,
    pentagonal_counts,
)
from src.utils.errors import ArgumentError


def test_small_classical_counts():
    table = exact_counts(range(1, 11), 10)
    assert table[10] == 42
    assert table[0] == 1
    assert len(table) == 11


def test_p_100_and_p_200():
    table = pentagonal_counts(200)
    assert table[100] == 190569292
    assert table[200] == 3972999029388


def test_dp_matches_pentagonal_up_to_2000():
    dp = model_counts(Classical(), 2000)
    assert dp.counts == pentagonal_counts(2000).counts


def test_squares_count_at_20():
    assert exact_counts([1, 4, 9, 16], 20)[20] == 12
    assert model_counts(PowerAP(1, 1, 2), 20)[20] == 12


def test_progression_without_small_targets():
    table = model_counts(PowerAP(3, 4, 1), 10)
    # parts 3, 7, 11, ...
    assert table.counts[:8] == (1, 0, 0, 1, 0, 0, 1, 1)
    assert table.parts_used == (3, 7)


def test_parts_above_target_are_ignored():
    table = exact_counts([1, 50], 10)
    assert table.parts_used == (1,)
    assert all(c == 1 for c in table.counts)


@pytest.mark.parametrize("parts, n_max", [
    ([1, 2], -1),
    ([0, 1], 5),
    ([1, 1, 2], 5),
])
def test_exact_counts_rejects_bad_input(parts, n_max):
    with pytest.raises(ArgumentError):
        exact_counts(parts, n_max)


def test_divisor_weights_classical():
    weights = f_weights(Classical(), 12)
    assert weights[0] == 0
    assert weights[1] == 1
    assert weights[6] == 12
    assert weights[12] == 28


def test_divisor_weights_squares():
    weights = f_weights(PowerAP(1, 1, 2), 36)
    # 36 = 1 + 4 + 9 + 36 over square divisors
    assert weights[36] == 50
    assert weights[8] == 5


def test_convolution_identity_classical():
    result = convolution_residual(Classical(), 2, 1000)
    assert result['passed']
    assert result['residual'] < result['bound']
    assert result['bound'] == pytest.approx(float(10 * mpf(1000) ** -1))


def test_convolution_identity_squares():
    result = convolution_residual(PowerAP(1, 1, 2), mpf(3) / 2, 1000)
    assert result['passed']


def test_convolution_needs_z_above_alpha():
    with pytest.raises(ArgumentError):
        convolution_residual(Classical(), 1, 100)


def test_union_counts():
    spec = UnionAP(((1, 2), (2, 3)))
    table = model_counts(spec, 20)
    parts = [m for m in range(1, 21) if m % 2 == 1 or m % 3 == 2]
    assert table.counts == exact_counts(parts, 20).counts
    assert table.counts[:6] == (1, 1, 2, 3, 4, 6)


def test_counts_up_to_zero():
    assert pentagonal_counts(0).counts == (1,)
    assert model_counts(PowerAP(1, 1, 2), 0).counts == (1,)
