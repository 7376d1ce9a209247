"""Bergman fans and augmented Bergman fans as simplicial fans.

Vectors are integer tuples indexed by element labels ("raw" coordinates).
An ``Ambient`` quotients raw space by a saturated sublattice and reduces
vectors to canonical integer coordinates by eliminating one unit pivot per
quotient vector.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Sequence

from .errors import FanNotComplete, RayNotInFan
from .linalg import Matrix
from .matroid import Matroid, bits, popcount


class Ambient:
    """Z^labels modulo the span of some raw vectors."""

    def __init__(self, labels: Sequence[Hashable], quotient: Iterable[Sequence[int]] = ()):
        self.labels = tuple(labels)
        self.quotient = [tuple(q) for q in quotient]
        self._pivots: list[tuple[int, list[int]]] = []
        for q in self.quotient:
            v = self._reduce_raw(list(q))
            c = next((k for k in range(len(v) - 1, -1, -1) if abs(v[k]) == 1), None)
            if c is None:
                if any(v):
                    raise ValueError("quotient lattice is not saturated")
                raise ValueError("quotient vectors are dependent")
            if v[c] == -1:
                v = [-a for a in v]
            new = []
            for pc, pv in self._pivots:
                if pv[c]:
                    f = pv[c]
                    pv = [a - f * b for a, b in zip(pv, v)]
                new.append((pc, pv))
            self._pivots = new + [(c, v)]
        self._pivot_cols = {c for c, _ in self._pivots}
        self._free = [k for k in range(len(self.labels)) if k not in self._pivot_cols]
        self.dim = len(self._free)

    def _reduce_raw(self, v: list[int]) -> list[int]:
        for c, pv in self._pivots:
            if v[c]:
                f = v[c]
                v = [a - f * b for a, b in zip(v, pv)]
        return v

    def reduce(self, raw: Sequence[int]) -> tuple[int, ...]:
        v = self._reduce_raw(list(raw))
        return tuple(v[k] for k in self._free)

    def extend(self, raw: Sequence[int]) -> "Ambient":
        return Ambient(self.labels, self.quotient + [tuple(raw)])

    def embed(self, other_labels: Sequence[Hashable], raw: Sequence[int]) -> tuple[int, ...]:
        """Place a vector given on other_labels into these coordinates."""
        pos = {e: k for k, e in enumerate(self.labels)}
        out = [0] * len(self.labels)
        for e, a in zip(other_labels, raw):
            out[pos[e]] += a
        return tuple(out)


def indicator(labels: Sequence[Hashable], members: Iterable[Hashable], sign: int = 1) -> tuple[int, ...]:
    s = set(members)
    return tuple(sign if e in s else 0 for e in labels)


class Fan:
    """A simplicial fan: rays with raw generators and cones as ray-index sets."""

    def __init__(self, ambient: Ambient, rays: Sequence[Sequence[int]], names: Sequence,
                 cones: Iterable[Iterable[int]]):
        self.ambient = ambient
        self.raw = [tuple(r) for r in rays]
        self.names = list(names)
        self.gens = [ambient.reduce(r) for r in self.raw]
        self._by_name = {n: k for k, n in enumerate(self.names)}
        closed = set()
        for c in cones:
            c = frozenset(c)
            if c in closed:
                continue
            for r in range(len(c) + 1):
                for sub in itertools.combinations(sorted(c), r):
                    closed.add(frozenset(sub))
        closed.add(frozenset())
        self.cones = closed
        self.dim = max(len(c) for c in closed)
        self.by_dim = [sorted((c for c in closed if len(c) == k), key=sorted)
                       for k in range(self.dim + 1)]

    def __repr__(self) -> str:
        return f"Fan(rays={len(self.raw)}, dim={self.dim}, ambient_dim={self.ambient.dim})"

    def ray(self, name) -> int:
        if name not in self._by_name:
            raise RayNotInFan(f"{name!r} is not a ray of this fan")
        return self._by_name[name]

    @property
    def maximal(self) -> list[frozenset]:
        return [c for c in self.cones
                if len(c) == self.dim or not any(c < d for d in self.by_dim[len(c) + 1])]

    def is_pure(self) -> bool:
        return all(len(c) == self.dim or any(c < t for t in self.by_dim[len(c) + 1])
                   for c in self.cones)

    def cone_matrix(self, cone: Iterable[int]) -> Matrix:
        rows = [self.gens[r] for r in sorted(cone)]
        return Matrix(rows, self.ambient.dim)

    def is_simplicial(self) -> bool:
        return all(self.cone_matrix(c).rank() == len(c) for c in self.by_dim[self.dim]) \
            if self.dim else True

    def is_unimodular(self) -> bool:
        """Each cone's generators extend to a lattice basis (gcd of maximal minors is 1)."""
        for c in self.cones:
            if not c:
                continue
            m = self.cone_matrix(c)
            g = 0
            for cols in itertools.combinations(range(m.ncols), m.nrows):
                d = Matrix([[row[j] for j in cols] for row in m.rows], m.nrows).det()
                g = gcd(g, int(d))
                if g == 1:
                    break
            if g != 1:
                return False
        return True

    def is_connected_in_codim_one(self) -> bool:
        tops = self.by_dim[self.dim]
        if len(tops) <= 1:
            return True
        faces: dict[frozenset, list[int]] = {}
        for k, c in enumerate(tops):
            for r in c:
                faces.setdefault(c - {r}, []).append(k)
        adj = {k: set() for k in range(len(tops))}
        for ks in faces.values():
            for a, b in itertools.combinations(ks, 2):
                adj[a].add(b)
                adj[b].add(a)
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for b in adj[a] - seen:
                seen.add(b)
                queue.append(b)
        return len(seen) == len(tops)

    def balanced_weights(self, k: int | None = None) -> list[list[Fraction]]:
        """Basis of the space of balanced weights on the k-dimensional cones."""
        k = self.dim if k is None else k
        cones = self.by_dim[k]
        index = {c: n for n, c in enumerate(cones)}
        rows = []
        for tau in self.by_dim[k - 1] if k >= 1 else []:
            if tau:
                ann = self.cone_matrix(tau).nullspace()
            else:
                ann = Matrix.identity(self.ambient.dim).rows
            above = [c for c in cones if tau < c]
            for a in ann:
                row = [Fraction(0)] * len(cones)
                for c in above:
                    (r,) = c - tau
                    row[index[c]] = sum((x * y for x, y in zip(a, self.gens[r])), Fraction(0))
                if any(row):
                    rows.append(row)
        if not rows:
            return Matrix.identity(len(cones)).rows
        return Matrix(rows, len(cones)).nullspace()

    def star(self, ray: int) -> "Fan":
        """The star of a ray, in the ambient space modulo that ray."""
        cones = [c - {ray} for c in self.cones if ray in c]
        keep = sorted({r for c in cones for r in c})
        pos = {r: k for k, r in enumerate(keep)}
        return Fan(self.ambient.extend(self.raw[ray]), [self.raw[r] for r in keep],
                   [self.names[r] for r in keep], [[pos[r] for r in c] for c in cones])

    def walls(self) -> list["Wall"]:
        """Codimension-one cones with their two facets and the linear relation."""
        if self.dim == 0:
            return []
        tops = self.by_dim[self.dim]
        faces: dict[frozenset, list[frozenset]] = {}
        for c in tops:
            for r in c:
                faces.setdefault(c - {r}, []).append(c)
        out = []
        for tau in self.by_dim[self.dim - 1]:
            sides = faces.get(tau, [])
            if len(sides) != 2:
                raise FanNotComplete(f"a wall lies in {len(sides)} maximal cones")
            (u1,) = sides[0] - tau
            (u2,) = sides[1] - tau
            vs = sorted(tau)
            cols = [self.gens[u1], self.gens[u2]] + [self.gens[v] for v in vs]
            ker = Matrix.from_columns(cols, self.ambient.dim).nullspace()
            if len(ker) != 1 or not ker[0][0] or not ker[0][1]:
                raise FanNotComplete("wall relation is degenerate")
            rel = [x / ker[0][0] for x in ker[0]]
            if rel[1] <= 0:
                raise FanNotComplete("the two sides of a wall are not opposite")
            out.append(Wall(tau, u1, u2, rel[1], {v: -a for v, a in zip(vs, rel[2:]) if a}))
        return out

    def is_complete(self) -> bool:
        if self.dim != self.ambient.dim:
            return False
        try:
            self.walls()
        except FanNotComplete:
            return False
        return True

    def cone_names(self) -> set[frozenset]:
        return {frozenset(self.names[r] for r in c) for c in self.cones}


@dataclass
class Wall:
    """u1 + c2 * u2 = sum_v coeffs[v] * v, with u1, u2 on opposite sides of tau."""

    tau: frozenset
    u1: int
    u2: int
    c2: Fraction
    coeffs: dict[int, Fraction]


def _chains(flats: Sequence[int]) -> list[tuple[int, ...]]:
    """All chains (including the empty one) of the given flats."""
    flats = sorted(flats, key=lambda f: (popcount(f), f))
    out = [()]

    def grow(chain, start):
        for k in range(start, len(flats)):
            g = flats[k]
            if not chain or (g & chain[-1] == chain[-1] and g != chain[-1]):
                c = chain + (g,)
                out.append(c)
                grow(c, k + 1)

    grow((), 0)
    return out


def flat_name(m: Matroid, f: int) -> tuple:
    return ("F",) + tuple(m.sorted_labels(f))


def bergman_fan(m: Matroid) -> Fan:
    """Rays e_F for nonempty proper flats in R^E / <e_E>; cones are flags."""
    labels = m.elements
    amb = Ambient(labels, [indicator(labels, labels)] if labels else [])
    flats = m.lattice.proper(nonempty=True)
    pos = {f: k for k, f in enumerate(flats)}
    rays = [indicator(labels, m.labels(f)) for f in flats]
    names = [flat_name(m, f) for f in flats]
    cones = [[pos[f] for f in c] for c in _chains(flats)]
    return Fan(amb, rays, names, cones)


def augmented_bergman_fan(m: Matroid) -> Fan:
    """Rays e_i and -e_{E-F} in R^E; cones pair independent sets with flags above them."""
    labels = m.elements
    amb = Ambient(labels)
    flats = m.lattice.proper()
    rays = [indicator(labels, [e]) for e in labels]
    names = [("e", e) for e in labels]
    rays += [indicator(labels, m.labels(m.ground & ~f), -1) for f in flats]
    names += [flat_name(m, f) for f in flats]
    fpos = {f: m.n + k for k, f in enumerate(flats)}
    cones = []
    for ind in m.independent_sets():
        above = [f for f in flats if f & ind == ind]
        for c in _chains(above):
            cones.append([k for k in bits(ind)] + [fpos[f] for f in c])
    return Fan(amb, rays, names, cones)


def product(a: Fan, b: Fan) -> Fan:
    """Product fan in the direct sum of the two ambient spaces."""
    if set(a.ambient.labels) & set(b.ambient.labels):
        raise ValueError("product factors must use disjoint coordinates")
    la, lb = len(a.ambient.labels), len(b.ambient.labels)
    amb = Ambient(a.ambient.labels + b.ambient.labels,
                  [q + (0,) * lb for q in a.ambient.quotient]
                  + [(0,) * la + q for q in b.ambient.quotient])
    rays = [r + (0,) * lb for r in a.raw] + [(0,) * la + r for r in b.raw]
    names = [("L",) + (n,) for n in a.names] + [("R",) + (n,) for n in b.names]
    n = len(a.raw)
    cones = [list(c) + [n + r for r in d] for c in a.cones for d in b.cones]
    return Fan(amb, rays, names, cones)


def isomorphic_by_inclusion(model: Fan, target: Fan) -> bool:
    """Map model rays into target coordinates by label and compare fans."""
    images = []
    lookup = {}
    for k, g in enumerate(target.gens):
        lookup.setdefault(g, []).append(k)
    for raw in model.raw:
        v = target.ambient.reduce(target.ambient.embed(model.ambient.labels, raw))
        hit = lookup.get(v)
        if not hit or len(hit) != 1:
            return False
        images.append(hit[0])
    if sorted(images) != list(range(len(target.raw))):
        return False
    mapped = {frozenset(images[r] for r in c) for c in model.cones}
    return mapped == target.cones


def star_model(m: Matroid, name: tuple, augmented: bool) -> Fan:
    """The product of smaller fans expected for the star of a ray."""
    if name[0] == "e":
        return augmented_bergman_fan(m.contraction(m.closure(m.bit(name[1]))))
    f = m.mask(name[1:])
    if augmented:
        return product(bergman_fan(m.contraction(f)), augmented_bergman_fan(m.localization(f)))
    return product(bergman_fan(m.contraction(f)), bergman_fan(m.localization(f)))


def check_stars(m: Matroid, augmented: bool) -> dict:
    fan = augmented_bergman_fan(m) if augmented else bergman_fan(m)
    out = {}
    for k, name in enumerate(fan.names):
        out[name] = isomorphic_by_inclusion(star_model(m, name, augmented), fan.star(k))
    if augmented and m.n:
        out["empty_flat_star_is_bergman_fan"] = isomorphic_by_inclusion(
            bergman_fan(m), fan.star(fan.ray(flat_name(m, 0))))
    return out


def fan_report(m: Matroid, augmented: bool) -> dict:
    fan = augmented_bergman_fan(m) if augmented else bergman_fan(m)
    stars = check_stars(m, augmented)
    mw = fan.balanced_weights()
    report = {
        "rays": len(fan.raw),
        "dim": fan.dim,
        "maximal_cones": len(fan.by_dim[fan.dim]),
        "pure": fan.is_pure(),
        "simplicial": fan.is_simplicial(),
        "unimodular": fan.is_unimodular(),
        "connected_codim_one": fan.is_connected_in_codim_one(),
        "top_balanced_weights_dim": len(mw),
        "constant_weights_balanced": len(mw) == 1 and len(set(mw[0])) == 1,
        "stars_isomorphic": all(stars.values()),
    }
    report["ok"] = all(v for k, v in report.items()
                       if isinstance(v, bool)) and report["top_balanced_weights_dim"] == 1
    return report


def quotient_cones_included(m: Matroid, n: Matroid) -> bool:
    """If M is a quotient of N, every cone of the augmented fan of M is one of N."""
    if tuple(m.elements) != tuple(n.elements):
        raise ValueError("matroids must share the ordered ground set")
    fm, fn = augmented_bergman_fan(m), augmented_bergman_fan(n)
    cones_n = {frozenset(fn.raw[r] for r in c) for c in fn.cones}
    return all(frozenset(fm.raw[r] for r in c) in cones_n for c in fm.cones)


def figure_one() -> dict:
    """Rays and maximal cones of the augmented Bergman fan of B_2."""
    from .matroid import boolean
    m = boolean(2)
    fan = augmented_bergman_fan(m)
    rays = {fan.names[k]: fan.raw[k] for k in range(len(fan.raw))}
    tops = sorted(sorted(map(str, (fan.names[r] for r in c))) for c in fan.by_dim[fan.dim])
    return {"rays": rays, "maximal_cones": tops, "fan": fan}
