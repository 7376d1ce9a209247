from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from matroid_chow.chow import Variant, chow_ring
from matroid_chow.errors import NotCertifiedConvex
from matroid_chow.kahler import (PLFunction, default_function, expected_signature, kahler_report,
                                 lefschetz_class, search_function)
from matroid_chow.matroid import boolean, corpus


def test_default_values():
    f = default_function((1, 2), False)
    assert sorted(f.values.values()) == [1, 1]
    g = default_function((1, 2, 3), False)
    assert set(g.values.values()) == {2}
    for n in range(1, 6):
        labels = tuple(range(1, n + 1))
        assert default_function(labels, False).is_strictly_convex()
        assert default_function(labels, True).is_strictly_convex()


def test_opposite_sign_profile_is_not_convex():
    labels = (1, 2, 3)
    f = default_function(labels, True).scaled(-1)
    assert not f.is_strictly_convex()
    with pytest.raises(NotCertifiedConvex):
        kahler_report(chow_ring(boolean(3), Variant.AUGMENTED), f)


def test_search_finds_certified_profiles():
    assert search_function((1, 2, 3), False).is_strictly_convex()
    assert search_function((1, 2), True).is_strictly_convex()


def test_expected_signature_b3():
    assert expected_signature([1, 4, 1], 1) == 2


@pytest.mark.parametrize("name", ["B2", "B3", "U2,4", "U3,4", "K4"])
@pytest.mark.parametrize("variant", list(Variant))
def test_kahler_reports(name, variant):
    rep = kahler_report(chow_ring(corpus()[name], variant))
    assert rep["ok"], rep


def test_scaling_keeps_signatures():
    ring = chow_ring(boolean(3), Variant.AUGMENTED)
    f = default_function((1, 2, 3), True)
    a = kahler_report(ring, f)
    b = kahler_report(ring, f.scaled(2))
    assert [d["signature"] for d in a["degrees"]] == [d["signature"] for d in b["degrees"]]


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.booleans())
def test_linear_perturbation(coeffs, augmented):
    labels = (1, 2, 3)
    if not augmented:
        coeffs = coeffs[:2] + [-coeffs[0] - coeffs[1]]
    f = default_function(labels, augmented)
    g = f.plus_linear(coeffs)
    assert g.wall_slacks() == f.wall_slacks()
    for name in ["B3", "U2,3"]:
        ring = chow_ring(corpus()[name], Variant.AUGMENTED if augmented else Variant.PLAIN)
        assert lefschetz_class(ring, g) == lefschetz_class(ring, f)
