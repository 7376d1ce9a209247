"""Acceptance criteria, one test each, printing a PASS/FAIL line per criterion.

Run directly (``python tests/test_acceptance.py``) for just the summary lines.
"""
import sys
import time

import pytest

from matroid_chow.chow import Variant, chow_ring, mobius_report
from matroid_chow.decomp import alpha_decomposition, deletion_decomposition
from matroid_chow.eulerian import (boolean_hilbert, eulerian_numbers, linear_recurrence_value,
                                   quadratic_recurrence_rhs)
from matroid_chow.fan import fan_report, figure_one
from matroid_chow.kahler import kahler_report
from matroid_chow.maps import check_deletion, check_flat_maps, check_lower_maps
from matroid_chow.matroid import corpus

CORPUS = corpus()
VARIANTS = [Variant.PLAIN, Variant.AUGMENTED]


def eulerian_dimensions():
    start = time.perf_counter()
    ok = all(boolean_hilbert(d) == eulerian_numbers(d) for d in range(1, 6))
    elapsed = time.perf_counter() - start
    return ok and elapsed < 60, f"d=1..5 exact, {elapsed:.1f}s (limit 60s)"


def eulerian_recurrences():
    start = time.perf_counter()
    s = [boolean_hilbert(d) for d in range(7)]
    quad = all(quadratic_recurrence_rhs(s, d) == s[d] for d in range(1, 7))
    lin = all(linear_recurrence_value(s, d) == [0] for d in range(1, 7))
    elapsed = time.perf_counter() - start
    return quad and lin and elapsed < 300, \
        f"quadratic={quad} linear={lin} d<=6, {elapsed:.1f}s (limit 300s)"


def alpha_degrees():
    bad = []
    for name, m in CORPUS.items():
        for v in VARIANTS:
            r = chow_ring(m, v)
            if r.degree(r.alpha() ** r.top) != 1:
                bad.append((name, v.value))
    return not bad, f"failures: {bad}" if bad else "all corpus degrees equal 1"


def poincare_duality():
    bad = []
    for name, m in CORPUS.items():
        for v in VARIANTS:
            r = chow_ring(m, v)
            for k in range(r.top + 1):
                if r.pairing_matrix(k).det() == 0:
                    bad.append((name, v.value, k))
    return not bad, f"singular: {bad}" if bad else "all pairing determinants nonzero"


def semismall_decompositions():
    bad = []
    count = 0
    for name, m in CORPUS.items():
        if m.n < 2:
            continue
        for v in VARIANTS:
            for e in m.elements:
                rep = deletion_decomposition(m, e, v)
                count += 1
                if not rep.ok:
                    bad.append((name, v.value, e, [k for k, x in rep.checks.items() if not x]))
    return not bad, f"{count} decompositions; failures: {bad}"


def map_identities():
    bad = []
    count = 0
    for name, m in CORPUS.items():
        for v in VARIANTS:
            for f in m.lattice.proper(nonempty=v is Variant.PLAIN):
                count += 1
                if not check_flat_maps(m, f, v)["ok"]:
                    bad.append((name, v.value, "flat", m.sorted_labels(f)))
            if m.n >= 2:
                for e in m.elements:
                    count += 1
                    if not check_deletion(m, e, v)["ok"]:
                        bad.append((name, v.value, "theta", e))
        for f in m.lattice.flats:
            count += 1
            if not check_lower_maps(m, f)["ok"]:
                bad.append((name, "lower", m.sorted_labels(f)))
    return not bad, f"{count} map checks; failures: {bad}"


def alpha_decompositions():
    bad = []
    for name, m in CORPUS.items():
        for v in VARIANTS:
            rep = alpha_decomposition(m, v)
            if not rep.ok:
                bad.append((name, v.value, [k for k, x in rep.checks.items() if not x]))
    return not bad, f"failures: {bad}" if bad else "direct, spanning, orthogonal, dims match"


def kahler_package():
    start = time.perf_counter()
    bad = []
    for name, m in CORPUS.items():
        for v in VARIANTS:
            if not kahler_report(chow_ring(m, v))["ok"]:
                bad.append((name, v.value))
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 600, f"failures: {bad}, {elapsed:.1f}s (limit 600s)"


def fan_properties():
    bad = []
    for name, m in CORPUS.items():
        for aug in (False, True):
            if not fan_report(m, aug)["ok"]:
                bad.append((name, aug))
    fig = figure_one()
    fan = fig["fan"]
    tops = {frozenset(fan.names[r] for r in c) for c in fan.by_dim[fan.dim]}
    expected = {
        frozenset({("e", 1), ("e", 2)}),
        frozenset({("e", 2), ("F", 2)}),
        frozenset({("e", 1), ("F", 1)}),
        frozenset({("F",), ("F", 1)}),
        frozenset({("F",), ("F", 2)}),
    }
    rays = {("e", 1): (1, 0), ("e", 2): (0, 1), ("F",): (-1, -1), ("F", 1): (0, -1),
            ("F", 2): (-1, 0)}
    fig_ok = tops == expected and fig["rays"] == rays
    return not bad and fig_ok, f"fan failures: {bad}; figure reproduced: {fig_ok}"


def mobius_algebra():
    bad = []
    for name, m in CORPUS.items():
        rep = mobius_report(chow_ring(m, Variant.AUGMENTED), exhaustive_bound=5)
        if not rep["ok"] or (m.n <= 5 and not rep["exhaustive"]):
            bad.append((name, rep["failures"][:3]))
    return not bad, f"failures: {bad}" if bad else "exhaustive for n<=5, circuits for K4"


CRITERIA = [
    ("eulerian_dimensions", eulerian_dimensions),
    ("eulerian_recurrences", eulerian_recurrences),
    ("alpha_degrees", alpha_degrees),
    ("poincare_duality", poincare_duality),
    ("semismall_decompositions", semismall_decompositions),
    ("map_identities", map_identities),
    ("alpha_decompositions", alpha_decompositions),
    ("kahler_package", kahler_package),
    ("fan_properties", fan_properties),
    ("mobius_algebra", mobius_algebra),
]


def _line(name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} {name}: {detail}"


@pytest.mark.parametrize("name,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(n, *c()) for n, c in CRITERIA]
    for n, ok, detail in results:
        print(_line(n, ok, detail))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
