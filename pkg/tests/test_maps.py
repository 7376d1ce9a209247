import pytest

from matroid_chow.chow import Variant, chow_ring
from matroid_chow.errors import GroundSetTooSmall, NotAProperFlat
from matroid_chow.maps import (check_deletion, check_flat_maps, check_lower_maps, phi, phi_lower,
                               psi, psi_lower, theta)
from matroid_chow.matroid import boolean, corpus, uniform

NAMES = ["B2", "B3", "U2,3", "U3,4", "U2,5", "K4"]


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("variant", list(Variant))
def test_flat_map_identities(name, variant):
    m = corpus()[name]
    for f in m.lattice.proper(nonempty=variant is Variant.PLAIN):
        rep = check_flat_maps(m, f, variant)
        assert rep["ok"], (m.sorted_labels(f), rep)


@pytest.mark.parametrize("name", NAMES)
def test_lower_map_identities(name):
    m = corpus()[name]
    for f in m.lattice.flats:
        rep = check_lower_maps(m, f)
        assert rep["ok"], (m.sorted_labels(f), rep)


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("variant", list(Variant))
def test_deletion_degree_compatibility(name, variant):
    m = corpus()[name]
    for e in m.elements:
        rep = check_deletion(m, e, variant)
        assert rep["ok"], (e, rep)
        assert rep["coloop"] == m.is_coloop(e)


def test_theta_on_generators():
    m = boolean(2)
    t = theta(m, 2, Variant.AUGMENTED)
    small = t.source
    ring = t.target
    x_empty = small.x(0)
    assert t(x_empty) == ring.x(0) + ring.x(m.mask([2]))
    u = uniform(3, 2)
    tp = theta(u, 3, Variant.PLAIN)
    # {1} is a flat of M minus 3 and of M, but {1, 3} is the whole ground set
    assert tp(tp.source.x(tp.source.matroid.mask([1]))) == tp.target.x(u.mask([1]))


def test_lower_maps_at_empty_flat():
    m = boolean(3)
    assert phi_lower(m, 0).source is phi_lower(m, 0).target
    assert psi_lower(m, 0)(chow_ring(m, Variant.AUGMENTED).one()) == chow_ring(m, Variant.AUGMENTED).one()


def test_argument_errors():
    m = boolean(2)
    with pytest.raises(NotAProperFlat):
        phi(m, m.ground)
    with pytest.raises(NotAProperFlat):
        psi(m, 0, Variant.PLAIN)
    with pytest.raises(GroundSetTooSmall):
        check_deletion(boolean(1), 1)
