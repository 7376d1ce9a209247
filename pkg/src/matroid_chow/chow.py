"""Chow rings and augmented Chow rings of matroids, computed exactly.

Both rings are quotients of a polynomial ring in flat variables ``x_F`` by a
monomial ideal (products of incomparable flats) and further relations:

* plain: ``x_F`` for nonempty proper flats, linear relations
  ``sum_{F containing a} x_F = sum_{F containing b} x_F``;
* augmented: ``x_F`` for all proper flats, with ``y_i`` replaced up front by
  ``beta_i = sum_{F not containing i} x_F`` so that the relations
  ``y_i x_F = 0`` (i not in F) become ``beta_i x_F = 0``.

Modulo the monomial ideal a degree-k graded piece is spanned by chain
monomials. Relations in degree k are chain monomials of degree k-1 times
the generating relations, and a sparse echelon form over them yields a
monomial basis and normal forms.
"""
from __future__ import annotations

import itertools
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from .errors import EmptyGroundSet, NotAFlat, RingMismatch, WrongDegree
from .linalg import ONE, ZERO, Matrix, SparseEchelon
from .matroid import Matroid, bits, popcount

Monomial = tuple  # tuple of (variable position, exponent), sorted by position


class Variant(str, Enum):
    PLAIN = "plain"
    AUGMENTED = "augmented"


class GradedRing:
    """Interface shared by Chow rings and their tensor products."""

    top: int

    def dim(self, k: int) -> int:
        raise NotImplementedError

    def mul_basis(self, p: int, a: int, q: int, b: int) -> dict[int, Fraction]:
        raise NotImplementedError

    def top_degrees(self) -> list[Fraction]:
        """Degree of each basis element of the top graded piece."""
        raise NotImplementedError

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.dim(k) for k in range(self.top + 1))

    def element(self, k: int, coords: Sequence) -> "Element":
        return Element(self, k, coords)

    def zero(self, k: int) -> "Element":
        return Element(self, k, [ZERO] * self.dim(k))

    def one(self) -> "Element":
        return self.basis_element(0, 0)

    def basis_element(self, k: int, a: int) -> "Element":
        c = [ZERO] * self.dim(k)
        c[a] = ONE
        return Element(self, k, c)

    def basis_elements(self, k: int) -> list["Element"]:
        return [self.basis_element(k, a) for a in range(self.dim(k))]

    def multiply(self, u: "Element", v: "Element") -> "Element":
        if u.ring is not self or v.ring is not self:
            raise RingMismatch("elements belong to different rings")
        k = u.degree + v.degree
        out = [ZERO] * self.dim(k)
        if not out:
            return Element(self, k, out)
        for a, ca in enumerate(u.coords):
            if not ca:
                continue
            for b, cb in enumerate(v.coords):
                if not cb:
                    continue
                c = ca * cb
                for t, w in self.mul_basis(u.degree, a, v.degree, b).items():
                    out[t] += c * w
        return Element(self, k, out)

    def degree(self, u: "Element") -> Fraction:
        """The degree map on the top graded piece."""
        if u.ring is not self:
            raise RingMismatch("element belongs to a different ring")
        if u.degree != self.top:
            raise WrongDegree(f"degree map needs degree {self.top}, got {u.degree}")
        return sum((c * w for c, w in zip(u.coords, self.top_degrees())), ZERO)

    def pairing_matrix(self, k: int) -> Matrix:
        """Poincare pairing CH^k x CH^{top-k} -> Q in the monomial bases."""
        left = self.basis_elements(k)
        right = self.basis_elements(self.top - k)
        return Matrix([[self.degree(a * b) for b in right] for a in left], len(right))


class Element:
    """A homogeneous element: a ring, a degree and coordinates in its basis."""

    __slots__ = ("ring", "degree", "coords")

    def __init__(self, ring: GradedRing, degree: int, coords: Sequence):
        if len(coords) != ring.dim(degree):
            raise WrongDegree(f"expected {ring.dim(degree)} coordinates in degree {degree}")
        self.ring = ring
        self.degree = degree
        self.coords = tuple(Fraction(c) for c in coords)

    def _check(self, other: "Element") -> None:
        if other.ring is not self.ring:
            raise RingMismatch("elements belong to different rings")
        if other.degree != self.degree:
            raise WrongDegree(f"cannot add degrees {self.degree} and {other.degree}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.ring, self.degree, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.ring, self.degree, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Element":
        return Element(self.ring, self.degree, [-a for a in self.coords])

    def __mul__(self, other) -> "Element":
        if isinstance(other, Element):
            return self.ring.multiply(self, other)
        c = Fraction(other)
        return Element(self.ring, self.degree, [c * a for a in self.coords])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Element":
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (self.ring is other.ring and self.degree == other.degree
                and self.coords == other.coords)

    def __hash__(self):
        return hash((id(self.ring), self.degree, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self) -> str:
        return f"Element(deg={self.degree}, {[str(c) for c in self.coords]})"


def element_sum(items: Iterable[Element], ring: GradedRing, k: int) -> Element:
    out = ring.zero(k)
    for e in items:
        out = out + e
    return out


class ChowRing(GradedRing):
    """The (augmented) Chow ring of a loopless matroid."""

    def __init__(self, matroid: Matroid, variant: Variant | str = Variant.PLAIN):
        self.matroid = matroid
        self.variant = Variant(variant)
        self.augmented = self.variant is Variant.AUGMENTED
        lat = matroid.lattice
        self.variables: tuple[int, ...] = tuple(lat.proper(nonempty=not self.augmented))
        self.var_pos = {f: k for k, f in enumerate(self.variables)}
        self._var_rank = [lat.rank[f] for f in self.variables]
        nv = len(self.variables)
        self._comparable = [
            frozenset(j for j in range(nv)
                      if self.variables[i] & self.variables[j] in (self.variables[i], self.variables[j]))
            for i in range(nv)]
        if self.augmented:
            self.top = matroid.rank
        else:
            self.top = max(matroid.rank - 1, 0)
        self._basis: list[list[Monomial]] = []
        self._basis_index: list[dict[Monomial, int]] = []
        self._columns: list[dict[Monomial, int]] = []
        self._echelons: list[SparseEchelon] = []
        self._mul_cache: dict = {}
        self._build()
        self._top_degrees: list[Fraction] | None = None
        self._build_degree_map()

    def __repr__(self) -> str:
        return f"ChowRing({self.variant.value}, {self.matroid!r}, dims={self.dims})"

    # construction -----------------------------------------------------------
    def _order_key(self, m: Monomial):
        return (self._var_rank[m[0][0]] if m else -1,
                tuple(self.variables[v] for v, _ in m),
                tuple(e for _, e in m))

    def _times(self, m: Monomial, v: int) -> Monomial | None:
        """m * x_v, or None if the support is not a chain."""
        comp = self._comparable[v]
        out = []
        placed = False
        for u, e in m:
            if u not in comp:
                return None
            if u == v:
                out.append((u, e + 1))
                placed = True
            else:
                if not placed and u > v:
                    out.append((v, 1))
                    placed = True
                out.append((u, e))
        if not placed:
            out.append((v, 1))
        return tuple(out)

    def _linear_relations(self) -> list[dict[int, int]]:
        if self.augmented or self.matroid.n < 2:
            return []
        first = 1
        rels = []
        for k in range(1, self.matroid.n):
            other = 1 << k
            row = {}
            for pos, f in enumerate(self.variables):
                c = bool(f & first) - bool(f & other)
                if c:
                    row[pos] = c
            rels.append(row)
        return rels

    def _beta_support(self) -> list[list[int]]:
        return [[pos for pos, f in enumerate(self.variables) if not f >> k & 1]
                for k in range(self.matroid.n)]

    def _relations(self, k: int, prev: list[Monomial], col: dict[Monomial, int]):
        if not self.augmented:
            for m in prev:
                for rel in self._lin:
                    row = {}
                    for v, c in rel.items():
                        t = self._times(m, v)
                        if t is not None:
                            row[col[t]] = row.get(col[t], 0) + c
                    if row:
                        yield row
        elif k >= 2:
            for m in prev:
                least = self.variables[m[0][0]]
                for i in bits(self.matroid.ground & ~least):
                    row = {}
                    for v in self._beta[i]:
                        t = self._times(m, v)
                        if t is not None:
                            row[col[t]] = row.get(col[t], 0) + 1
                    if row:
                        yield row

    def _chain_monomials(self, prev: list[Monomial]) -> list[Monomial]:
        out = set()
        for m in prev:
            for v in range(len(self.variables)):
                t = self._times(m, v)
                if t is not None:
                    out.add(t)
        return sorted(out, key=self._order_key)

    def _build(self) -> None:
        self._lin = self._linear_relations()
        self._beta = self._beta_support() if self.augmented else None
        prev: list[Monomial] = [()]
        self._columns.append({(): 0})
        ech = SparseEchelon(1)
        self._echelons.append(ech)
        self._basis.append([()])
        self._basis_index.append({(): 0})
        for k in range(1, self.top + 1):
            monos = self._chain_monomials(prev)
            col = {m: j for j, m in enumerate(monos)}
            ech = SparseEchelon(len(monos))
            for row in self._relations(k, prev, col):
                ech.add(row)
            basis = [monos[j] for j in ech.free_columns()]
            self._columns.append(col)
            self._echelons.append(ech)
            self._basis.append(basis)
            self._basis_index.append({m: a for a, m in enumerate(basis)})
            prev = monos

    def vanishes_above_top(self) -> bool:
        """Check directly that the graded piece of degree top+1 is zero."""
        k = self.top + 1
        prev = list(self._columns[self.top])
        monos = self._chain_monomials(prev)
        if not monos:
            return True
        col = {m: j for j, m in enumerate(monos)}
        ech = SparseEchelon(len(monos))
        for row in self._relations(k, prev, col):
            ech.add(row)
        return ech.rank == len(monos)

    def reference_flag(self) -> Monomial:
        """A complete flag monomial of top degree (lexicographically first)."""
        chain = self.matroid.lattice.maximal_chains(nonempty=not self.augmented)[0]
        return tuple((self.var_pos[f], 1) for f in chain)

    def _build_degree_map(self) -> None:
        if not self.augmented and self.matroid.n == 0:
            return
        if self.dim(self.top) != 1:
            raise ArithmeticError(f"top degree has dimension {self.dim(self.top)}")
        nf = self.normal_form(self.reference_flag())
        self._top_degrees = [ONE / nf[0]]

    # basis and normal forms ---------------------------------------------------
    def dim(self, k: int) -> int:
        if 0 <= k <= self.top:
            return len(self._basis[k])
        return 0

    def basis(self, k: int) -> list[Monomial]:
        return list(self._basis[k]) if 0 <= k <= self.top else []

    def basis_labels(self, k: int) -> list[list[tuple[list, int]]]:
        """Basis monomials with flats written as sorted label lists."""
        return [[(self.matroid.sorted_labels(self.variables[v]), e) for v, e in m]
                for m in self.basis(k)]

    def normal_form(self, m: Monomial) -> dict[int, Fraction]:
        """Coordinates of a chain monomial over the basis of its degree."""
        k = sum(e for _, e in m)
        if k > self.top:
            return {}
        j = self._columns[k].get(m)
        if j is None:
            raise ValueError(f"{m!r} is not a chain monomial")
        return self._echelons[k].normal_form(j)

    def monomial(self, factors: dict[int, int] | Iterable[tuple[int, int]]) -> Element:
        """The element prod x_F^e for a mapping flat mask -> exponent."""
        items = factors.items() if isinstance(factors, dict) else factors
        m: Monomial = ()
        k = 0
        for f, e in items:
            if f not in self.var_pos:
                raise NotAFlat(f"{sorted(self.matroid.labels(f), key=repr)} is not a variable")
            for _ in range(e):
                k += 1
                if m is None:
                    continue
                m = self._times(m, self.var_pos[f])
        if m is None:
            return self.zero(k)
        coords = [ZERO] * self.dim(k)
        for a, c in self.normal_form(m).items():
            coords[a] = c
        return Element(self, k, coords)

    def mul_basis(self, p: int, a: int, q: int, b: int) -> dict[int, Fraction]:
        key = (p, a, q, b) if (p, a) <= (q, b) else (q, b, p, a)
        out = self._mul_cache.get(key)
        if out is None:
            if p + q > self.top:
                out = {}
            else:
                m = self._basis[p][a]
                for v, e in self._basis[q][b]:
                    for _ in range(e):
                        if m is not None:
                            m = self._times(m, v)
                out = {} if m is None else self.normal_form(m)
            self._mul_cache[key] = out
        return out

    def top_degrees(self) -> list[Fraction]:
        if self._top_degrees is None:
            raise EmptyGroundSet("the Chow ring of the empty matroid has no degree map")
        return self._top_degrees

    # distinguished elements ----------------------------------------------------
    def x(self, flat: int) -> Element:
        return self.monomial({flat: 1})

    def x_or_zero(self, flat: int) -> Element:
        """x_F, or zero when F is not one of the ring's variables."""
        if flat in self.var_pos:
            return self.x(flat)
        return self.zero(1)

    def _sum_x(self, flats: Iterable[int]) -> Element:
        coords = [ZERO] * self.dim(1)
        for f in flats:
            for a, c in self.normal_form(((self.var_pos[f], 1),)).items():
                coords[a] += c
        return Element(self, 1, coords)

    def alpha(self, element: Hashable | None = None) -> Element:
        """alpha: the sum of all x_F (augmented) or of x_F with F containing i."""
        if self.augmented:
            return self._sum_x(self.variables)
        if self.matroid.n == 0:
            raise EmptyGroundSet("alpha needs a nonempty ground set")
        b = self.matroid.bit(self.matroid.elements[0] if element is None else element)
        return self._sum_x(f for f in self.variables if f & b)

    def beta(self, element: Hashable | None = None) -> Element:
        """Sum of x_F over variables F not containing i."""
        if self.matroid.n == 0:
            raise EmptyGroundSet("beta needs a nonempty ground set")
        b = self.matroid.bit(self.matroid.elements[0] if element is None else element)
        return self._sum_x(f for f in self.variables if not f & b)

    def y(self, element: Hashable) -> Element:
        if not self.augmented:
            raise RingMismatch("y variables live in the augmented ring")
        return self.beta(element)

    def y_set(self, labels: Iterable[Hashable]) -> Element:
        out = self.one()
        for e in labels:
            out = out * self.y(e)
        return out

    def y_flat(self, flat: int) -> Element:
        """y_F: the product of y_i over the lexicographically first basis of F."""
        self.matroid.require_flat(flat)
        basis = self.matroid.bases_of(flat)[0]
        return self.y_set(self.matroid.sorted_labels(basis))

    def maximal_cone_monomials(self) -> list[Element]:
        """Monomials prod_{i in I} y_i prod_{F in flag} x_F over maximal cones."""
        m = self.matroid
        lat = m.lattice
        out = []
        if not self.augmented:
            for chain in lat.maximal_chains(nonempty=True):
                out.append(self.monomial({f: 1 for f in chain}))
            return out
        for ind in m.independent_sets():
            r = popcount(ind)
            cl = m.closure(ind)
            if cl == m.ground:
                if r == m.rank:
                    out.append(self.y_set(m.sorted_labels(ind)))
                continue
            # flags starting at cl(I) going up through every rank
            chains = [(cl,)] if lat.rank[cl] == r else []
            for rank in range(r + 1, m.rank):
                chains = [c + (g,) for c in chains for g in lat.by_rank[rank] if g & c[-1] == c[-1]]
            for chain in chains:
                out.append(self.y_set(m.sorted_labels(ind)) * self.monomial({f: 1 for f in chain}))
        return out


@lru_cache(maxsize=None)
def chow_ring(matroid: Matroid, variant: Variant | str = Variant.PLAIN) -> ChowRing:
    """Cached constructor: equal matroids share one ring object."""
    return ChowRing(matroid, Variant(variant))


class TensorRing(GradedRing):
    """Tensor product of two graded rings with the factor-major basis."""

    def __init__(self, left: GradedRing, right: GradedRing):
        self.left = left
        self.right = right
        self.top = left.top + right.top
        self._basis: list[list[tuple[int, int, int, int]]] = []
        for k in range(self.top + 1):
            basis = []
            for p in range(k + 1):
                q = k - p
                for a in range(left.dim(p)):
                    for b in range(right.dim(q)):
                        basis.append((p, a, q, b))
            self._basis.append(basis)
        self._index = [{t: n for n, t in enumerate(bs)} for bs in self._basis]
        self._mul_cache: dict = {}

    def __repr__(self) -> str:
        return f"TensorRing({self.left!r}, {self.right!r})"

    def dim(self, k: int) -> int:
        return len(self._basis[k]) if 0 <= k <= self.top else 0

    def basis(self, k: int) -> list[tuple[int, int, int, int]]:
        return list(self._basis[k]) if 0 <= k <= self.top else []

    def mul_basis(self, p: int, a: int, q: int, b: int) -> dict[int, Fraction]:
        key = (p, a, q, b)
        out = self._mul_cache.get(key)
        if out is None:
            out = {}
            if p + q <= self.top:
                p1, a1, p2, a2 = self._basis[p][a]
                q1, b1, q2, b2 = self._basis[q][b]
                left = self.left.mul_basis(p1, a1, q1, b1) if p1 + q1 <= self.left.top else {}
                right = self.right.mul_basis(p2, a2, q2, b2) if p2 + q2 <= self.right.top else {}
                idx = self._index[p + q]
                for s, u in left.items():
                    for t, w in right.items():
                        out[idx[(p1 + q1, s, p2 + q2, t)]] = u * w
            self._mul_cache[key] = out
        return out

    def top_degrees(self) -> list[Fraction]:
        dl = self.left.top_degrees()
        dr = self.right.top_degrees()
        out = []
        for p, a, q, b in self._basis[self.top]:
            out.append(dl[a] * dr[b] if (p == self.left.top and q == self.right.top) else ZERO)
        return out

    def tensor(self, u: Element, v: Element) -> Element:
        """The pure tensor u (x) v."""
        if u.ring is not self.left or v.ring is not self.right:
            raise RingMismatch("factors do not match the tensor ring")
        k = u.degree + v.degree
        coords = [ZERO] * self.dim(k)
        idx = self._index[k] if 0 <= k <= self.top else {}
        for a, ca in enumerate(u.coords):
            if ca:
                for b, cb in enumerate(v.coords):
                    if cb:
                        coords[idx[(u.degree, a, v.degree, b)]] = ca * cb
        return Element(self, k, coords)


@lru_cache(maxsize=None)
def tensor_ring(left: GradedRing, right: GradedRing) -> TensorRing:
    return TensorRing(left, right)


def graded_dims(matroid: Matroid, variant: Variant | str) -> tuple[int, ...]:
    return chow_ring(matroid, variant).dims


# Mobius algebra -------------------------------------------------------------

def mobius_report(ring: ChowRing, exhaustive_bound: int = 5) -> dict:
    """Check the graded Mobius algebra inside the augmented Chow ring.

    Verifies that the y_F of each rank are independent, the multiplication
    rule, y_i^2 = 0, independence of y_F from the chosen basis of F and the
    vanishing of y_J on dependent sets (exhaustively when n is small,
    on circuits otherwise).
    """
    if not ring.augmented:
        raise RingMismatch("the Mobius algebra lives in the augmented ring")
    m = ring.matroid
    lat = m.lattice
    report = {"injective": True, "multiplication": True, "y_squared_zero": True,
              "basis_independent": True, "dependent_vanish": True, "failures": []}
    y_flat = {f: ring.y_flat(f) for f in lat.flats}
    for r in range(m.rank + 1):
        vecs = [list(y_flat[f].coords) for f in lat.by_rank[r]]
        if vecs and Matrix(vecs, ring.dim(r)).rank() != len(vecs):
            report["injective"] = False
            report["failures"].append(f"y_F of rank {r} are dependent")
    for f1, f2 in itertools.product(lat.flats, repeat=2):
        j = lat.join(f1, f2)
        prod = y_flat[f1] * y_flat[f2]
        expect = y_flat[j] if lat.rank[f1] + lat.rank[f2] == lat.rank[j] else ring.zero(prod.degree)
        if prod != expect:
            report["multiplication"] = False
            report["failures"].append(f"y_F y_G rule fails for {m.sorted_labels(f1)}, {m.sorted_labels(f2)}")
    for e in m.elements:
        if not (ring.y(e) * ring.y(e)).is_zero():
            report["y_squared_zero"] = False
            report["failures"].append(f"y_{e}^2 != 0")
    exhaustive = m.n <= exhaustive_bound
    for f in lat.flats:
        bases = m.bases_of(f) if exhaustive else m.bases_of(f)[:2]
        for b in bases:
            if ring.y_set(m.sorted_labels(b)) != y_flat[f]:
                report["basis_independent"] = False
                report["failures"].append(f"y_F depends on the basis of {m.sorted_labels(f)}")
    if exhaustive:
        dependent = [s for s in range(1 << m.n) if not m.is_independent(s)]
    else:
        dependent = [s for s in range(1 << m.n) if not m.is_independent(s)
                     and all(m.is_independent(s & ~(1 << k)) for k in bits(s))]
    for s in dependent:
        if not ring.y_set(m.sorted_labels(s)).is_zero():
            report["dependent_vanish"] = False
            report["failures"].append(f"y_J != 0 for dependent {m.sorted_labels(s)}")
    report["checked_dependent_sets"] = len(dependent)
    report["exhaustive"] = exhaustive
    report["ok"] = not report["failures"]
    return report
