"""Loopless matroids given by bases, their lattices of flats and minors.

Subsets of the ground set are stored as bitmasks over the position of each
element in ``Matroid.elements``. Element labels are kept through minors so
that flats of a minor can be matched with flats of the original matroid.
"""
from __future__ import annotations

import itertools
import random
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .errors import (
    ElementNotInGroundSet,
    EmptyBases,
    ExchangeAxiomViolated,
    FlatNotInS,
    InvalidRank,
    LoopDetected,
    NotAFlat,
    NotAProperFlat,
    UnequalBasisSizes,
)

DEFAULT_VALIDATE_BOUND = 12


def bits(mask: int) -> list[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Matroid:
    """A loopless matroid on an ordered ground set, described by its bases."""

    def __init__(self, elements: Sequence[Hashable], bases: Iterable[Iterable[Hashable]],
                 validate_bound: int = DEFAULT_VALIDATE_BOUND):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate element labels")
        self._pos = {e: k for k, e in enumerate(self.elements)}
        masks = set()
        for b in bases:
            m = 0
            for e in b:
                if e not in self._pos:
                    raise ElementNotInGroundSet(f"basis element {e!r} not in ground set")
                m |= 1 << self._pos[e]
            masks.add(m)
        if not masks:
            raise EmptyBases("a matroid needs at least one basis")
        sizes = {popcount(m) for m in masks}
        if len(sizes) != 1:
            raise UnequalBasisSizes(f"bases have sizes {sorted(sizes)}")
        self.bases: tuple[int, ...] = tuple(sorted(masks))
        self.rank = sizes.pop()
        self.ground = (1 << len(self.elements)) - 1
        covered = 0
        for m in self.bases:
            covered |= m
        if covered != self.ground:
            loop = next(e for k, e in enumerate(self.elements) if not covered >> k & 1)
            raise LoopDetected(f"element {loop!r} is a loop")
        self._check_exchange(validate_bound)
        self._rank_cache: dict[int, int] = {}
        self._closure_cache: dict[int, int] = {}

    def _check_exchange(self, bound: int) -> None:
        bases = self.bases
        base_set = set(bases)
        if len(self.elements) <= bound:
            pairs: Iterable = itertools.product(bases, bases)
        else:
            rng = random.Random(0)
            pairs = [(rng.choice(bases), rng.choice(bases)) for _ in range(500)]
        for b1, b2 in pairs:
            for x in bits(b1 & ~b2):
                if not any((b1 & ~(1 << x)) | (1 << y) in base_set for y in bits(b2 & ~b1)):
                    raise ExchangeAxiomViolated(
                        f"no exchange for {self.labels(b1)} and {self.labels(b2)} "
                        f"at {self.elements[x]!r}")

    # identity -------------------------------------------------------------
    def _key(self):
        return (self.elements, self.bases)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matroid) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank}, bases={len(self.bases)})"

    @property
    def n(self) -> int:
        return len(self.elements)

    # subsets --------------------------------------------------------------
    def mask(self, labels: Iterable[Hashable]) -> int:
        m = 0
        for e in labels:
            if e not in self._pos:
                raise ElementNotInGroundSet(f"{e!r} is not in the ground set")
            m |= 1 << self._pos[e]
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.elements[k] for k in bits(mask))

    def sorted_labels(self, mask: int) -> list:
        return [self.elements[k] for k in bits(mask)]

    def bit(self, element: Hashable) -> int:
        if element not in self._pos:
            raise ElementNotInGroundSet(f"{element!r} is not in the ground set")
        return 1 << self._pos[element]

    # rank and closure -----------------------------------------------------
    def rank_of(self, mask: int) -> int:
        r = self._rank_cache.get(mask)
        if r is None:
            r = max(popcount(mask & b) for b in self.bases)
            self._rank_cache[mask] = r
        return r

    def closure(self, mask: int) -> int:
        c = self._closure_cache.get(mask)
        if c is None:
            r = self.rank_of(mask)
            c = mask
            for k in range(self.n):
                b = 1 << k
                if not mask & b and self.rank_of(mask | b) == r:
                    c |= b
            self._closure_cache[mask] = c
        return c

    def is_flat(self, mask: int) -> bool:
        return self.closure(mask) == mask

    def is_independent(self, mask: int) -> bool:
        return self.rank_of(mask) == popcount(mask)

    def is_coloop(self, element: Hashable) -> bool:
        b = self.bit(element)
        return all(m & b for m in self.bases)

    def coloops(self) -> list:
        return [e for e in self.elements if self.is_coloop(e)]

    def independent_sets(self) -> list[int]:
        found = set()
        for b in self.bases:
            sub = b
            while True:
                found.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & b
        return sorted(found, key=lambda m: (popcount(m), m))

    def bases_of(self, mask: int) -> list[int]:
        """Maximal independent subsets of ``mask``."""
        r = self.rank_of(mask)
        return sorted({b & mask for b in self.bases if popcount(b & mask) == r})

    # flats ----------------------------------------------------------------
    @cached_property
    def lattice(self) -> "FlatLattice":
        return FlatLattice(self)

    def flats(self) -> list[frozenset]:
        return [self.labels(f) for f in self.lattice.flats]

    def require_flat(self, mask: int) -> None:
        if not self.is_flat(mask):
            raise NotAFlat(f"{sorted(self.labels(mask), key=repr)} is not a flat")

    def require_proper_flat(self, mask: int, nonempty: bool = False) -> None:
        self.require_flat(mask)
        if mask == self.ground or (nonempty and mask == 0):
            raise NotAProperFlat(f"{sorted(self.labels(mask), key=repr)} is not a proper flat")

    def s_sets(self, element: Hashable, nonempty: bool = False) -> list[int]:
        """Proper subsets F of E minus i with F and F + i both flats."""
        b = self.bit(element)
        rest = self.ground & ~b
        out = []
        for f in self.lattice.flats:
            if f & b or f == rest or (nonempty and f == 0):
                continue
            if self.is_flat(f | b):
                out.append(f)
        return out

    def require_in_s(self, element: Hashable, flat: int, nonempty: bool = False) -> None:
        if flat not in self.s_sets(element, nonempty):
            raise FlatNotInS(f"{sorted(self.labels(flat), key=repr)} is not in S for {element!r}")

    # minors ---------------------------------------------------------------
    def _sub(self, keep: int, bases: Iterable[int]) -> "Matroid":
        elems = [self.elements[k] for k in bits(keep)]
        return Matroid(elems, [self.sorted_labels(b) for b in bases], validate_bound=0)

    def delete(self, element: Hashable) -> "Matroid":
        b = self.bit(element)
        keep = self.ground & ~b
        cands = {m & keep for m in self.bases}
        top = max(popcount(m) for m in cands)
        return self._sub(keep, [m for m in cands if popcount(m) == top])

    def localization(self, flat: int) -> "Matroid":
        """The restriction to a flat F; its flats are the flats inside F."""
        self.require_flat(flat)
        return self._sub(flat, self.bases_of(flat))

    def contraction(self, flat: int) -> "Matroid":
        """The contraction by a flat F, on the ground set E minus F."""
        self.require_flat(flat)
        r = self.rank_of(flat)
        keep = self.ground & ~flat
        return self._sub(keep, {m & keep for m in self.bases if popcount(m & flat) == r})

    def is_quotient_of(self, other: "Matroid") -> bool:
        """True if every flat of self is a flat of ``other`` (same labels)."""
        if set(self.elements) != set(other.elements):
            return False
        return all(other.is_flat(other.mask(self.labels(f))) for f in self.lattice.flats)


class FlatLattice:
    """The lattice of flats, sorted by (rank, bitmask)."""

    def __init__(self, m: Matroid):
        self.matroid = m
        seen = {m.closure(0)}
        frontier = [m.closure(0)]
        while frontier:
            nxt = []
            for f in frontier:
                for k in range(m.n):
                    if not f >> k & 1:
                        g = m.closure(f | 1 << k)
                        if g not in seen:
                            seen.add(g)
                            nxt.append(g)
            frontier = nxt
        self.flats: tuple[int, ...] = tuple(sorted(seen, key=lambda f: (m.rank_of(f), f)))
        self.rank = {f: m.rank_of(f) for f in self.flats}
        self.index = {f: k for k, f in enumerate(self.flats)}
        self.by_rank = tuple(tuple(f for f in self.flats if self.rank[f] == r)
                             for r in range(m.rank + 1))

    def __len__(self) -> int:
        return len(self.flats)

    def join(self, a: int, b: int) -> int:
        return self.matroid.closure(a | b)

    def meet(self, a: int, b: int) -> int:
        return a & b

    def covers(self, f: int) -> list[int]:
        r = self.rank[f]
        return [g for g in self.flats if self.rank[g] == r + 1 and g & f == f]

    def proper(self, nonempty: bool = False) -> list[int]:
        top = self.matroid.ground
        return [f for f in self.flats if f != top and not (nonempty and f == 0)]

    def maximal_chains(self, nonempty: bool = False) -> list[tuple[int, ...]]:
        """All complete flags of proper flats (starting at rank 1 if nonempty)."""
        start = 1 if nonempty else 0
        d = self.matroid.rank
        if start > d - 1:
            return [()]
        chains = [(f,) for f in self.by_rank[start]]
        for r in range(start + 1, d):
            chains = [c + (g,) for c in chains for g in self.by_rank[r] if g & c[-1] == c[-1]]
        return chains

    def is_chain(self, flats: Sequence[int]) -> bool:
        return all(a & b in (a, b) for a, b in itertools.combinations(flats, 2))


# constructors ------------------------------------------------------------

def uniform(n: int, d: int) -> Matroid:
    """U_{d,n} on elements 1..n."""
    if n < 0 or d < 0 or d > n:
        raise InvalidRank(f"uniform matroid needs 0 <= d <= n, got d={d}, n={n}")
    if d == 0 and n > 0:
        raise LoopDetected("rank 0 on a nonempty ground set has loops")
    elems = list(range(1, n + 1))
    return Matroid(elems, itertools.combinations(elems, d), validate_bound=0)


def boolean(n: int) -> Matroid:
    """The Boolean matroid B_n on elements 1..n."""
    return uniform(n, n)


def graphic(edges: Sequence[Sequence[Hashable]]) -> Matroid:
    """Cycle matroid of a multigraph; edges are labelled 1..m in input order."""
    edges = [tuple(e) for e in edges]
    for k, e in enumerate(edges):
        if len(e) != 2:
            raise ValueError(f"edge {e!r} must have two endpoints")
        if e[0] == e[1]:
            raise LoopDetected(f"edge {k + 1} is a self-loop")
    verts = sorted({v for e in edges for v in e}, key=repr)
    labels = list(range(1, len(edges) + 1))

    def forest_size(subset) -> int:
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        size = 0
        for k in subset:
            a, b = find(edges[k][0]), find(edges[k][1])
            if a != b:
                parent[a] = b
                size += 1
        return size

    r = forest_size(range(len(edges)))
    bases = [[labels[k] for k in c] for c in itertools.combinations(range(len(edges)), r)
             if forest_size(c) == r]
    return Matroid(labels, bases, validate_bound=0)


def from_dict(data: dict, validate_bound: int = DEFAULT_VALIDATE_BOUND) -> Matroid:
    """Build a matroid from one of the accepted JSON shapes."""
    kind = data.get("type")
    if kind is None:
        if "bases" not in data:
            raise ValueError("matroid JSON needs 'bases' or 'type'")
        elems = data.get("elements")
        bases = data["bases"]
        if elems is None:
            elems = sorted({e for b in bases for e in b}, key=repr)
        return Matroid(elems, bases, validate_bound=validate_bound)
    if kind == "uniform":
        return uniform(int(data["n"]), int(data["d"]))
    if kind == "boolean":
        return boolean(int(data["n"]))
    if kind == "graphic":
        return graphic(data["edges"])
    raise ValueError(f"unknown matroid type {kind!r}")


def to_dict(m: Matroid) -> dict:
    return {"elements": list(m.elements),
            "bases": [m.sorted_labels(b) for b in m.bases]}


def corpus() -> dict[str, Matroid]:
    """The reference matroids used throughout the checks."""
    k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    out = {f"B{n}": boolean(n) for n in range(1, 5)}
    for d, n in [(2, 3), (2, 4), (3, 4), (2, 5), (3, 5)]:
        out[f"U{d},{n}"] = uniform(n, d)
    out["K4"] = graphic(k4)
    return out
