import pytest

from matroid_chow.eulerian import (boolean_hilbert, eulerian_numbers, linear_recurrence_value,
                                   quadratic_recurrence_rhs)
from oracles import eulerian_by_descents


@pytest.mark.parametrize("d", range(0, 7))
def test_eulerian_triangle_matches_descents(d):
    assert eulerian_numbers(d) == eulerian_by_descents(d)


def test_known_rows():
    assert eulerian_numbers(3) == [1, 4, 1]
    assert eulerian_numbers(4) == [1, 11, 11, 1]


@pytest.mark.parametrize("d", range(1, 6))
def test_boolean_hilbert_is_eulerian(d):
    assert boolean_hilbert(d) == eulerian_by_descents(d)


def test_recurrences_up_to_five():
    s = [boolean_hilbert(d) for d in range(6)]
    for d in range(1, 6):
        assert quadratic_recurrence_rhs(s, d) == s[d]
        assert linear_recurrence_value(s, d) == [0]
