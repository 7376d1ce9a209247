"""Graded maps between Chow rings: pullbacks, pushforwards and their checks.

A ``RingMap`` stores one exact matrix per source degree. Algebra maps are
defined by images of the generators ``x_F`` and are checked to kill every
defining relation of the source; pushforwards are defined on basis
monomials and are only linear.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Hashable

from .chow import ChowRing, Element, GradedRing, TensorRing, Variant, chow_ring, tensor_ring
from .errors import GroundSetTooSmall, NotAProperFlat, RingMismatch
from .linalg import ZERO, Matrix, same_span
from .matroid import Matroid, bits


class RingMap:
    """A degree-shifting linear map between graded rings."""

    def __init__(self, source: GradedRing, target: GradedRing, shift: int,
                 matrices: list[Matrix], kind: str = "linear", name: str = ""):
        self.source = source
        self.target = target
        self.shift = shift
        self.kind = kind
        self.name = name
        self._matrices = matrices

    def __repr__(self) -> str:
        return f"RingMap({self.name or self.kind}, shift={self.shift})"

    def matrix(self, k: int) -> Matrix:
        if 0 <= k < len(self._matrices):
            return self._matrices[k]
        return Matrix.zeros(self.target.dim(k + self.shift), self.source.dim(k))

    def __call__(self, u: Element) -> Element:
        if u.ring is not self.source:
            raise RingMismatch(f"{self!r} applied to an element of another ring")
        k = u.degree + self.shift
        return Element(self.target, k, self.matrix(u.degree).apply(u.coords))

    def compose(self, inner: "RingMap") -> "RingMap":
        """self after inner."""
        if inner.target is not self.source:
            raise RingMismatch("maps do not compose")
        mats = [self.matrix(k + inner.shift) @ inner.matrix(k)
                for k in range(inner.source.top + 1)]
        return RingMap(inner.source, self.target, self.shift + inner.shift, mats,
                       name=f"{self.name}.{inner.name}")

    def equals(self, other: "RingMap") -> bool:
        return (self.source is other.source and self.target is other.target
                and self.shift == other.shift
                and all(self.matrix(k) == other.matrix(k) for k in range(self.source.top + 1)))

    def is_zero(self) -> bool:
        return all(self.matrix(k).is_zero() for k in range(self.source.top + 1))

    def rank(self, k: int) -> int:
        return self.matrix(k).rank()

    def is_injective(self) -> bool:
        return all(self.rank(k) == self.source.dim(k) for k in range(self.source.top + 1))

    def image(self, k: int) -> list[list[Fraction]]:
        """Columns spanning the image of the degree-k piece."""
        return [c for c in self.matrix(k).columns() if any(c)]


def linear_map(source: GradedRing, target: GradedRing, shift: int,
               on_basis: Callable[[int, int], Element], kind: str = "linear",
               name: str = "") -> RingMap:
    mats = []
    for k in range(source.top + 1):
        cols = []
        for a in range(source.dim(k)):
            v = on_basis(k, a)
            if v.ring is not target or v.degree != k + shift:
                raise RingMismatch(f"basis image of {name} has the wrong ring or degree")
            cols.append(list(v.coords))
        mats.append(Matrix.from_columns(cols, target.dim(k + shift)))
    return RingMap(source, target, shift, mats, kind, name)


def multiplication_map(ring: GradedRing, u: Element, name: str = "mult") -> RingMap:
    return linear_map(ring, ring, u.degree,
                      lambda k, a: u * ring.basis_element(k, a), "module", name)


def identity_map(ring: GradedRing) -> RingMap:
    return linear_map(ring, ring, 0, lambda k, a: ring.basis_element(k, a), "algebra", "id")


def relation_generators(ring: ChowRing) -> list[list[tuple[int, tuple[int, ...]]]]:
    """Defining relations as lists of (coefficient, flats in the monomial)."""
    m = ring.matroid
    vs = ring.variables
    rels = []
    for f, g in itertools.combinations(vs, 2):
        if f & g not in (f, g):
            rels.append([(1, (f, g))])
    if ring.augmented:
        for f in vs:
            for i in bits(m.ground & ~f):
                rels.append([(1, (g, f)) for g in vs if not g >> i & 1])
    else:
        for k in range(1, m.n):
            a, b = 1, 1 << k
            rels.append([(1, (g,)) for g in vs if g & a and not g & b]
                        + [(-1, (g,)) for g in vs if g & b and not g & a])
    return rels


def algebra_map(source: ChowRing, target: GradedRing, images: dict[int, Element],
                name: str = "") -> RingMap:
    """The algebra map sending x_F to images[F]; raises if ill-defined."""
    one = target.one()

    def value(flats) -> Element:
        out = one
        for f in flats:
            out = out * images[f]
        return out

    for rel in relation_generators(source):
        deg = len(rel[0][1])
        total = target.zero(deg)
        for c, flats in rel:
            total = total + value(flats) * c
        if not total.is_zero():
            raise ArithmeticError(f"{name}: images violate a defining relation")

    def on_basis(k, a):
        mono = source.basis(k)[a]
        return value([source.variables[v] for v, e in mono for _ in range(e)])

    return linear_map(source, target, 0, on_basis, "algebra", name)


def _variant(v) -> Variant:
    return Variant(v)


def _translate(src: Matroid, dst: Matroid, mask: int) -> int:
    return dst.mask(src.labels(mask))


# deletion ------------------------------------------------------------------

def theta(m: Matroid, element: Hashable, variant=Variant.AUGMENTED) -> RingMap:
    """Pullback CH(M minus i) -> CH(M), x_F -> x_F + x_{F+i}."""
    variant = _variant(variant)
    target = chow_ring(m, variant)
    dm = m.delete(element)
    source = chow_ring(dm, variant)
    bi = m.bit(element)
    images = {}
    for g in source.variables:
        f = _translate(dm, m, g)
        images[g] = target.x_or_zero(f) + target.x_or_zero(f | bi)
    return algebra_map(source, target, images, f"theta_{element}")


# the two maps attached to a flat -----------------------------------------

def _split_target(m: Matroid, flat: int, variant: Variant) -> tuple[TensorRing, Matroid, Matroid]:
    mc = m.contraction(flat)
    ml = m.localization(flat)
    return tensor_ring(chow_ring(mc, Variant.PLAIN), chow_ring(ml, variant)), mc, ml


def phi(m: Matroid, flat: int, variant=Variant.AUGMENTED) -> RingMap:
    """Pullback CH(M) -> CH(M_F) (x) CH(M^F), with a plain first factor."""
    variant = _variant(variant)
    m.require_proper_flat(flat, nonempty=variant is Variant.PLAIN)
    source = chow_ring(m, variant)
    t, mc, ml = _split_target(m, flat, variant)
    left, right = t.left, t.right
    images: dict[int, Element] = {}
    for g in source.variables:
        if g == flat:
            continue
        if g & flat == g:
            images[g] = t.tensor(left.one(), right.x(_translate(m, ml, g)))
        elif g & flat == flat:
            images[g] = t.tensor(left.x(_translate(m, mc, g & ~flat)), right.one())
        else:
            images[g] = t.zero(1)
    # The image of x_F itself follows from a linear relation of the source.
    if variant is Variant.AUGMENTED:
        i = bits(m.ground & ~flat)[0]
        acc = t.zero(1)
        for g in source.variables:
            if g != flat and not g >> i & 1:
                acc = acc - images[g]
    else:
        a, b = bits(flat)[0], bits(m.ground & ~flat)[0]
        acc = t.zero(1)
        for g in source.variables:
            if g == flat or (g >> a & 1) == (g >> b & 1):
                continue
            acc = acc + images[g] if g >> b & 1 else acc - images[g]
    images[flat] = acc
    return algebra_map(source, t, images, f"phi^{sorted(m.labels(flat), key=repr)}")


def psi(m: Matroid, flat: int, variant=Variant.AUGMENTED) -> RingMap:
    """Pushforward CH(M_F) (x) CH(M^F) -> CH(M) of degree one."""
    variant = _variant(variant)
    m.require_proper_flat(flat, nonempty=variant is Variant.PLAIN)
    target = chow_ring(m, variant)
    t, mc, ml = _split_target(m, flat, variant)
    left, right = t.left, t.right

    def on_basis(k, n):
        p, a, q, b = t.basis(k)[n]
        factors = [(flat, 1)]
        factors += [(_translate(mc, m, left.variables[v]) | flat, e) for v, e in left.basis(p)[a]]
        factors += [(_translate(ml, m, right.variables[v]), e) for v, e in right.basis(q)[b]]
        return target.monomial(factors)

    return linear_map(t, target, 1, on_basis, "module", f"psi^{sorted(m.labels(flat), key=repr)}")


def phi_lower(m: Matroid, flat: int) -> RingMap:
    """Pullback CH(M) -> CH(M_F) of augmented rings, for any flat F."""
    m.require_flat(flat)
    source = chow_ring(m, Variant.AUGMENTED)
    mc = m.contraction(flat)
    target = chow_ring(mc, Variant.AUGMENTED)
    images = {}
    for g in source.variables:
        images[g] = target.x(_translate(m, mc, g & ~flat)) if g & flat == flat else target.zero(1)
    return algebra_map(source, target, images, f"phi_{sorted(m.labels(flat), key=repr)}")


def psi_lower(m: Matroid, flat: int) -> RingMap:
    """Pushforward CH(M_F) -> CH(M) of degree rk F: monomials times y_F."""
    m.require_flat(flat)
    target = chow_ring(m, Variant.AUGMENTED)
    mc = m.contraction(flat)
    source = chow_ring(mc, Variant.AUGMENTED)
    yf = target.y_flat(flat)

    def on_basis(k, a):
        factors = [(_translate(mc, m, source.variables[v]) | flat, e) for v, e in source.basis(k)[a]]
        return yf * target.monomial(factors)

    return linear_map(source, target, m.rank_of(flat), on_basis, "module",
                      f"psi_{sorted(m.labels(flat), key=repr)}")


def tensor_map(f: RingMap, g: RingMap) -> RingMap:
    """f (x) g between the tensor products of sources and targets."""
    src = tensor_ring(f.source, g.source)
    tgt = tensor_ring(f.target, g.target)

    def on_basis(k, n):
        p, a, q, b = src.basis(k)[n]
        return tgt.tensor(f(f.source.basis_element(p, a)), g(g.source.basis_element(q, b)))

    return linear_map(src, tgt, f.shift + g.shift, on_basis, "linear", f"{f.name}(x){g.name}")


# verification ----------------------------------------------------------------

def _all_basis(ring: GradedRing):
    for k in range(ring.top + 1):
        for a in range(ring.dim(k)):
            yield ring.basis_element(k, a)


def check_flat_maps(m: Matroid, flat: int, variant=Variant.AUGMENTED) -> dict:
    """Identities relating phi^F, psi^F and multiplication by x_F."""
    variant = _variant(variant)
    ring = chow_ring(m, variant)
    f_phi = phi(m, flat, variant)
    f_psi = psi(m, flat, variant)
    t = f_phi.target
    left, right = t.left, t.right
    xf = ring.x(flat)
    out = {}
    out["psi_phi_is_mult_x"] = f_psi.compose(f_phi).equals(multiplication_map(ring, xf))
    phixf = f_phi(xf)
    out["phi_psi_is_mult_phi_x"] = f_phi.compose(f_psi).equals(multiplication_map(t, phixf))
    right_alpha = right.alpha() if right.matroid.n else right.zero(1)
    expect = -(t.tensor(left.one(), right_alpha) + t.tensor(left.beta(), right.one()))
    out["phi_x_formula"] = phixf == expect
    out["phi_alpha_formula"] = f_phi(ring.alpha()) == t.tensor(left.alpha(), right.one())
    if variant is Variant.PLAIN:
        out["phi_beta_formula"] = f_phi(ring.beta()) == t.tensor(left.one(), right.beta())
    else:
        ok = True
        for e in m.elements:
            img = f_phi(ring.y(e))
            if m.bit(e) & flat:
                ok &= img == t.tensor(left.one(), right.y(e))
            else:
                ok &= img.is_zero()
        out["phi_y_rules"] = ok
    top = [u for u in _all_basis(t) if u.degree == t.top]
    out["degree_compatible"] = all(t.degree(u) == ring.degree(f_psi(u)) for u in top)
    out["psi_injective"] = f_psi.is_injective()
    out["psi_image_is_x_ideal"] = all(
        same_span(f_psi.image(k - 1), multiplication_map(ring, xf).image(k - 1), ring.dim(k))
        for k in range(1, ring.top + 1))
    gens = [ring.x(g) for g in ring.variables]
    ok = True
    for u in gens:
        for mu in _all_basis(t):
            if mu.degree + 2 > ring.top + 1:
                continue
            ok &= f_psi(f_phi(u) * mu) == u * f_psi(mu)
    out["psi_module_map"] = ok
    out["ok"] = all(out.values())
    return out


def check_lower_maps(m: Matroid, flat: int) -> dict:
    """Identities for phi_F and psi_F on augmented rings."""
    ring = chow_ring(m, Variant.AUGMENTED)
    f_phi = phi_lower(m, flat)
    f_psi = psi_lower(m, flat)
    target = f_phi.target
    yf = ring.y_flat(flat)
    out = {}
    out["psi_phi_is_mult_y"] = f_psi.compose(f_phi).equals(multiplication_map(ring, yf))
    out["phi_psi_zero"] = f_phi.compose(f_psi).is_zero() if flat else True
    if not flat:
        out["phi_psi_identity"] = f_phi.compose(f_psi).equals(identity_map(target))
    top = [u for u in _all_basis(target) if u.degree == target.top]
    out["degree_compatible"] = all(target.degree(u) == ring.degree(f_psi(u)) for u in top)
    ok = True
    mc = target.matroid
    for e in m.elements:
        img = f_phi(ring.y(e))
        ok &= img.is_zero() if m.bit(e) & flat else img == target.y(e)
    out["phi_y_rules"] = ok
    out["phi_alpha"] = f_phi(ring.alpha()) == (target.alpha() if mc.rank else target.zero(1))
    out["psi_injective"] = f_psi.is_injective()
    out["ok"] = all(out.values())
    return out


def check_deletion(m: Matroid, element: Hashable, variant=Variant.AUGMENTED) -> dict:
    """Degree compatibility of theta_i, split by whether i is a coloop."""
    variant = _variant(variant)
    if m.n < 2:
        raise GroundSetTooSmall("deletion checks need at least two elements")
    f = theta(m, element, variant)
    ring, small = f.target, f.source
    coloop = m.is_coloop(element)
    out = {"coloop": coloop}
    top = small.basis_elements(small.top)
    if not coloop:
        out["degree_compatible"] = all(small.degree(u) == ring.degree(f(u)) for u in top)
    else:
        rest = m.ground & ~m.bit(element)
        x = ring.x(rest)
        a = ring.alpha()
        out["degree_compatible"] = all(small.degree(u) == ring.degree(x * f(u)) for u in top)
        out["degree_compatible_alpha"] = all(small.degree(u) == ring.degree(a * f(u)) for u in top)
        g = phi(m, rest, variant)
        comp = g.compose(f)
        out["phi_theta_identity"] = all(
            comp.matrix(k) == Matrix.identity(small.dim(k)) for k in range(small.top + 1))
    out["theta_injective"] = f.is_injective()
    out["ok"] = all(v for k, v in out.items() if k != "coloop")
    return out
