"""Recurrence tables: the exact ground truth everything else is checked
against, so these tests only use hand-checkable facts."""

import math

import pytest

from overpartition import recurrence

# counts of overpartitions of 0..10, enumerable by hand
FIRST_VALUES = [1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232]


def test_first_values():
    assert recurrence.recursion_table(10).values == tuple(FIRST_VALUES)


def test_both_routes_agree_to_500():
    rec = recurrence.recursion_table(500)
    prod = recurrence.product_expansion_table(500)
    assert rec.values == prod.values


def test_theta_coefficients_support():
    b = recurrence.theta_coefficients(150)
    assert b[0] == 1
    for m in range(1, 151):
        r = math.isqrt(m)
        expected = 2 * (-1) ** r if r * r == m else 0
        assert b[m] == expected, f"coefficient at {m}"


def test_convolution_with_theta_is_delta():
    values = recurrence.recursion_table(80).values
    b = recurrence.theta_coefficients(80)
    for n in range(81):
        conv = sum(values[n - k] * b[k] for k in range(n + 1))
        assert conv == (1 if n == 0 else 0), f"convolution at {n}"


def test_parity_and_monotonicity():
    values = recurrence.recursion_table(400).values
    for n in range(1, 401):
        assert values[n] % 2 == 0, f"odd count at {n}"
    for n in range(2, 401):
        assert values[n] > values[n - 1], f"not increasing at {n}"


def test_cached_value_matches_table():
    table = recurrence.recursion_table(2000).values
    for n in (0, 1, 17, 100, 999, 2000):
        assert recurrence.cached_value(n) == table[n]


@pytest.mark.parametrize("n_max", [0, 1, 7])
def test_tiny_tables(n_max):
    assert recurrence.recursion_table(n_max).values == tuple(FIRST_VALUES[: n_max + 1])


@pytest.mark.parametrize("bad", [-1, -20])
def test_negative_sizes_rejected(bad):
    with pytest.raises(ValueError):
        recurrence.recursion_table(bad)
    with pytest.raises(ValueError):
        recurrence.product_expansion_table(bad)
    with pytest.raises(ValueError):
        recurrence.theta_coefficients(bad)
