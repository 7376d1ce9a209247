"""Independent reference computations used by the tests.

These deliberately avoid the package's ring construction: graded
dimensions come from a dense rank computation over every monomial of the
full presentation (y variables kept, no chain reduction), and flats come
from closing every subset by brute force.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def brute_flats(elements, bases):
    elements = list(elements)
    bases = [frozenset(b) for b in bases]

    def rank(s):
        return max(len(s & b) for b in bases)

    flats = set()
    for r in range(len(elements) + 1):
        for s in itertools.combinations(elements, r):
            s = frozenset(s)
            cl = frozenset(e for e in elements if rank(s | {e}) == rank(s))
            flats.add(cl)
    return flats, rank


def presentation_dims(elements, bases, augmented):
    """Graded dimensions of the quotient of the full polynomial ring."""
    flats, rank = brute_flats(elements, bases)
    ground = frozenset(elements)
    d = rank(ground)
    xs = [f for f in flats if f != ground and (augmented or f)]
    xs.sort(key=lambda f: (len(f), sorted(f)))
    variables = [("x", f) for f in xs] + ([("y", e) for e in elements] if augmented else [])
    nv = len(variables)
    idx = {v: k for k, v in enumerate(variables)}

    def comparable(a, b):
        return a <= b or b <= a

    quad = set()
    for a, b in itertools.combinations(xs, 2):
        if not comparable(a, b):
            quad.add(frozenset([idx[("x", a)], idx[("x", b)]]))
    if augmented:
        for e in elements:
            for f in xs:
                if e not in f:
                    quad.add(frozenset([idx[("y", e)], idx[("x", f)]]))
    linear = []
    if augmented:
        for e in elements:
            row = {idx[("y", e)]: 1}
            for f in xs:
                if e not in f:
                    row[idx[("x", f)]] = -1
            linear.append(row)
    else:
        e0 = elements[0]
        for e in elements[1:]:
            row = {}
            for f in xs:
                c = (e0 in f) - (e in f)
                if c:
                    row[idx[("x", f)]] = c
            linear.append(row)
    top = d if augmented else d - 1
    dims = []
    for k in range(top + 2):
        monos = list(itertools.combinations_with_replacement(range(nv), k))
        col = {m: j for j, m in enumerate(monos)}
        rows = []
        for m in monos:
            if any(frozenset(p) in quad for p in itertools.combinations(m, 2) if p[0] != p[1]):
                rows.append({col[m]: 1})
        if k >= 1:
            for m in itertools.combinations_with_replacement(range(nv), k - 1):
                for rel in linear:
                    row = {}
                    for v, c in rel.items():
                        t = tuple(sorted(m + (v,)))
                        row[col[t]] = row.get(col[t], 0) + c
                    rows.append(row)
        if rows:
            dense = [[QQ(0)] * len(monos) for _ in rows]
            for i, row in enumerate(rows):
                for j, c in row.items():
                    dense[i][j] = QQ(c)
            r = DomainMatrix(dense, (len(rows), len(monos)), QQ).rank()
        else:
            r = 0
        dims.append(len(monos) - r)
    return dims


def eulerian_by_descents(d):
    counts = [0] * max(d, 1)
    for p in itertools.permutations(range(d)):
        des = sum(1 for a, b in zip(p, p[1:]) if a > b)
        counts[des] += 1
    return counts if d else [1]


def exact(x):
    return Fraction(x)
