from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from matroid_chow.chow import Variant, chow_ring, mobius_report, tensor_ring
from matroid_chow.errors import RingMismatch, WrongDegree
from matroid_chow.matroid import boolean, corpus, uniform
from oracles import presentation_dims

# Frozen from the independent presentation oracle in tests/oracles.py.
EXPECTED_DIMS = {
    "B1": ([1], [1, 1]),
    "B2": ([1, 1], [1, 3, 1]),
    "B3": ([1, 4, 1], [1, 7, 7, 1]),
    "B4": ([1, 11, 11, 1], [1, 15, 33, 15, 1]),
    "U2,3": ([1, 1], [1, 4, 1]),
    "U2,4": ([1, 1], [1, 5, 1]),
    "U3,4": ([1, 7, 1], [1, 11, 11, 1]),
    "U2,5": ([1, 1], [1, 6, 1]),
    "U3,5": ([1, 11, 1], [1, 16, 16, 1]),
    "K4": ([1, 8, 1], [1, 14, 14, 1]),
}


@pytest.mark.parametrize("name", list(EXPECTED_DIMS))
def test_dims_frozen(name):
    m = corpus()[name]
    plain, aug = EXPECTED_DIMS[name]
    assert list(chow_ring(m, Variant.PLAIN).dims) == plain
    assert list(chow_ring(m, Variant.AUGMENTED).dims) == aug


@pytest.mark.parametrize("name,augmented", [("B2", True), ("B3", False), ("B3", True),
                                            ("U2,3", True), ("U2,4", True), ("U3,4", False)])
def test_dims_against_presentation_oracle(name, augmented):
    m = corpus()[name]
    ring = chow_ring(m, Variant.AUGMENTED if augmented else Variant.PLAIN)
    oracle = presentation_dims(m.elements, [m.sorted_labels(b) for b in m.bases], augmented)
    assert oracle == list(ring.dims) + [0]


def test_small_examples():
    r = chow_ring(boolean(2), Variant.AUGMENTED)
    assert r.degree(r.monomial({0: 1, r.matroid.mask([1]): 1})) == 1
    u = chow_ring(uniform(3, 2), Variant.PLAIN)
    assert u.basis(1) == [((0, 1),)]
    assert u.alpha() == u.x(u.matroid.mask([1]))
    assert chow_ring(boolean(1), Variant.PLAIN).dims == (1,)


@pytest.mark.parametrize("name", list(corpus()))
def test_degree_identities(name):
    m = corpus()[name]
    for v in Variant:
        r = chow_ring(m, v)
        assert r.degree(r.alpha() ** r.top) == 1
        assert {r.degree(x) for x in r.maximal_cone_monomials()} == {Fraction(1)}
        assert r.vanishes_above_top()
        for k in range(r.top + 1):
            assert r.pairing_matrix(k).det() != 0
    p = chow_ring(m, Variant.PLAIN)
    for e in m.elements:
        assert p.alpha(e) == p.alpha()
        assert p.beta(e) == p.beta()


@pytest.mark.parametrize("name", ["B1", "B2", "B3", "U2,3", "U2,4", "U3,4", "U2,5", "U3,5"])
def test_mobius_algebra(name):
    rep = mobius_report(chow_ring(corpus()[name], Variant.AUGMENTED))
    assert rep["ok"], rep["failures"]
    assert rep["exhaustive"]


def test_errors():
    a = chow_ring(boolean(2), Variant.AUGMENTED)
    b = chow_ring(boolean(3), Variant.AUGMENTED)
    with pytest.raises(RingMismatch):
        a.one() * b.one()
    with pytest.raises(WrongDegree):
        a.degree(a.one())
    with pytest.raises(WrongDegree):
        a.one() + a.alpha()


def test_tensor_ring_degree():
    a = chow_ring(boolean(2), Variant.AUGMENTED)
    b = chow_ring(boolean(3), Variant.PLAIN)
    t = tensor_ring(b, a)
    assert t.dims == (1, 7, 14, 7, 1)
    top = t.tensor(b.alpha() ** b.top, a.alpha() ** a.top)
    assert t.degree(top) == 1


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["B3", "U3,4", "K4", "U2,4"]), st.sampled_from(list(Variant)), st.data())
def test_ring_axioms(name, variant, data):
    r = chow_ring(corpus()[name], variant)

    def pick():
        k = data.draw(st.integers(0, r.top))
        return r.basis_element(k, data.draw(st.integers(0, r.dim(k) - 1)))

    a, b, c = pick(), pick(), pick()
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    if a.degree == b.degree:
        assert (a + b) * c == a * c + b * c
