import itertools

import pytest
from hypothesis import given, settings, strategies as st

from matroid_chow.errors import (EmptyBases, ExchangeAxiomViolated, FlatNotInS, InvalidRank,
                                 LoopDetected, NotAFlat, UnequalBasisSizes)
from matroid_chow.matroid import Matroid, boolean, corpus, from_dict, graphic, uniform
from oracles import brute_flats


def labelled_flats(m):
    return {frozenset(f) for f in m.flats()}


def test_uniform_2_3_flats():
    m = uniform(3, 2)
    flats = m.flats()
    assert [len(f) for f in flats] == [0, 1, 1, 1, 3]
    assert [len(r) for r in m.lattice.by_rank] == [1, 3, 1]


@pytest.mark.parametrize("name", list(corpus()))
def test_flats_match_brute_force(name):
    m = corpus()[name]
    expected, _ = brute_flats(m.elements, [m.sorted_labels(b) for b in m.bases])
    assert labelled_flats(m) == expected


def test_boolean_and_graphic_constructors():
    assert boolean(2).bases == (0b11,)
    triangle = graphic([(0, 1), (1, 2), (0, 2)])
    assert triangle == uniform(3, 2)
    assert len(corpus()["K4"].bases) == 16


def test_validation_errors():
    with pytest.raises(EmptyBases):
        Matroid([1, 2], [])
    with pytest.raises(UnequalBasisSizes):
        Matroid([1, 2], [[1], [1, 2]])
    with pytest.raises(LoopDetected):
        Matroid([1, 2, 3], [[1, 2]])
    with pytest.raises(InvalidRank):
        uniform(2, 3)
    with pytest.raises(ExchangeAxiomViolated):
        Matroid([1, 2, 3, 4], [[1, 2], [3, 4]])


def test_minors_of_boolean():
    m = boolean(3)
    f = m.mask([1])
    assert m.contraction(f) == boolean(3).delete(1)
    assert m.localization(f).elements == (1,)
    assert m.delete(2).rank == 2
    assert m.is_coloop(1)
    assert m.coloops() == [1, 2, 3]
    with pytest.raises(NotAFlat):
        uniform(3, 2).localization(uniform(3, 2).mask([1, 2]))


def test_s_sets():
    m = boolean(3)
    got = {frozenset(m.sorted_labels(f)) for f in m.s_sets(3)}
    # {1, 2} is excluded: it is not a proper subset of E - 3.
    assert got == {frozenset(), frozenset({1}), frozenset({2})}
    assert [m.sorted_labels(f) for f in boolean(2).s_sets(2)] == [[]]
    u = uniform(3, 2)
    assert [u.sorted_labels(f) for f in u.s_sets(1)] == [[]]
    assert [u.sorted_labels(f) for f in u.s_sets(1, nonempty=True)] == []
    with pytest.raises(FlatNotInS):
        u.require_in_s(1, u.mask([2]))


def test_from_dict_shapes():
    assert from_dict({"type": "uniform", "n": 3, "d": 2}) == uniform(3, 2)
    assert from_dict({"elements": [1, 2, 3], "bases": [[1, 2, 3]]}) == boolean(3)
    assert from_dict({"type": "graphic", "edges": [[0, 1], [1, 2], [0, 2]]}) == uniform(3, 2)


small_matroids = st.one_of(
    st.integers(1, 5).flatmap(lambda n: st.integers(1, n).map(lambda d: uniform(n, d))),
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda e: e[0] != e[1]),
             min_size=1, max_size=6).map(graphic),
)


@settings(max_examples=40, deadline=None)
@given(small_matroids)
def test_flat_lattice_properties(m):
    flats = set(m.lattice.flats)
    for a, b in itertools.combinations(flats, 2):
        assert a & b in flats
    for f in flats:
        assert m.closure(f) == f
        for g in m.lattice.covers(f):
            assert m.rank_of(g) == m.rank_of(f) + 1


@settings(max_examples=30, deadline=None)
@given(small_matroids)
def test_minor_flats(m):
    for f in m.lattice.flats:
        loc = m.localization(f)
        assert labelled_flats(loc) == {m.labels(g) for g in m.lattice.flats if g & f == g}
        if f != m.ground:
            con = m.contraction(f)
            assert con.rank == m.rank - m.rank_of(f)
            assert labelled_flats(con) == {m.labels(g & ~f) for g in m.lattice.flats if g & f == f}


@settings(max_examples=30, deadline=None)
@given(small_matroids)
def test_s_sets_downward_closed(m):
    for e in m.elements:
        s = set(m.s_sets(e))
        for f in s:
            for g in m.lattice.flats:
                if g & f == g:
                    assert g in s
