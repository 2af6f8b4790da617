"""Cohomology rings, Poincaré series, triple Massey products, and mechanical
verification of claimed ring presentations.

The Massey convention: for classes a, b, c with ab and bc exact, pick x, y
with dx = rep_a·rep_b and dy = rep_b·rep_c; the product is the class of
rep_a·y - (-1)^{|a|} x·rep_c, a coset of the indeterminacy
[a]·H^{|b|+|c|-1} + H^{|a|+|b|-1}·[c].  Nontriviality is exact linear
algebra: does the coset contain 0?
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import (
    CDGA,
    Cohomology,
    _d_matrix,
    as_module,
    cohomology,
    koszul,
)
from .errors import AxiomError
from .graded import Element, GradedSpace, el_accumulate, el_is_zero, el_str
from .presentations import FreeCGA
from .scalars import ZERO, ONE


@dataclass
class CohomologyRing:
    """H(A) with its induced product on a deterministic basis."""

    algebra: CDGA
    cohomology: Cohomology
    structure_constants: dict   # (h_name, h_name) -> Element over h-names

    @property
    def space(self) -> GradedSpace:
        return self.cohomology.space

    def product(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for a, ca in x.items():
            for b, cb in y.items():
                el_accumulate(out, self.structure_constants.get((a, b), {}), ca * cb)
        return out

    def betti(self, max_degree=None):
        return self.cohomology.betti(max_degree)


def cohomology_ring(algebra: CDGA) -> CohomologyRing:
    h = cohomology(algebra)
    table = {}
    for a in h.space.names():
        rep_a = h.representative(a)
        for b in h.space.names():
            prod = algebra.mul(rep_a, h.representative(b))
            if not el_is_zero(prod):
                cls = h.class_of(prod)
                if cls:
                    table[(a, b)] = cls
    return CohomologyRing(algebra=algebra, cohomology=h, structure_constants=table)


def poincare_series(obj, max_degree: int):
    """dim H^p for p = 0..max_degree, as a dense list."""
    if isinstance(obj, CohomologyRing):
        h = obj.cohomology
    elif isinstance(obj, Cohomology):
        h = obj
    else:
        h = cohomology(obj)
    return [h.space.dim(p) for p in range(0, max_degree + 1)]


@dataclass
class MasseyResult:
    triple: tuple                  # the three input classes (Elements over H)
    defined: bool
    reason: str = ""
    representative: Element = field(default_factory=dict)   # class over H-names
    indeterminacy: list = field(default_factory=list)       # spanning classes
    nontrivial: bool = False

    def summary(self) -> dict:
        return {
            "triple": [el_str(t) for t in self.triple],
            "defined": self.defined,
            "reason": self.reason,
            "representative": {k: str(v) for k, v in sorted(self.representative.items())},
            "indeterminacy_dim": _span_dim(self.indeterminacy),
            "nontrivial": self.nontrivial,
        }


def _span_dim(classes) -> int:
    if not classes:
        return 0
    names = sorted({nm for c in classes for nm in c})
    cols = [tuple(c.get(nm, ZERO) for nm in names) for c in classes]
    return linalg.rank(linalg.Matrix.from_columns(cols, len(names)))


def _primitive(module, degree: int, target: Element):
    """Solve d(x) = target with x in degree-1 ... i.e. x of degree ``degree``."""
    m = _d_matrix(module, degree)
    space = module.space
    vec = space.to_vector(target, degree + 1) if target else tuple(
        [ZERO] * space.dim(degree + 1))
    sol = linalg.solve(m, vec)
    if sol is None:
        raise AxiomError("no primitive exists for an exact class (inconsistent input)")
    return space.from_vector(sol, degree)


def triple_massey(algebra: CDGA, a: Element, b: Element, c: Element,
                  ring: "CohomologyRing | None" = None,
                  x_shift: "Element | None" = None,
                  y_shift: "Element | None" = None) -> MasseyResult:
    """⟨a, b, c⟩ for H-classes given as coordinates over the ring's basis.

    ``x_shift`` / ``y_shift`` are optional cocycles added to the chosen
    primitives; the representative then moves by exactly the indeterminacy
    (property-tested), never in or out of it.
    """
    if ring is None:
        ring = cohomology_ring(algebra)
    h = ring.cohomology
    module = as_module(algebra)

    def rep(cls: Element) -> Element:
        out: Element = {}
        for nm, coeff in cls.items():
            el_accumulate(out, h.representative(nm), coeff)
        return out

    def degree_of(cls: Element):
        return h.space.element_degree(cls)

    deg_a, deg_b, deg_c = (degree_of(x) for x in (a, b, c))
    if None in (deg_a, deg_b, deg_c):
        return MasseyResult(triple=(a, b, c), defined=False, reason="zero input class")
    ab = ring.product(a, b)
    bc = ring.product(b, c)
    if not el_is_zero(ab) or not el_is_zero(bc):
        return MasseyResult(triple=(a, b, c), defined=False,
                            reason="products do not vanish in cohomology")

    rep_a, rep_b, rep_c = rep(a), rep(b), rep(c)
    x = _primitive(module, deg_a + deg_b - 1, algebra.mul(rep_a, rep_b))
    y = _primitive(module, deg_b + deg_c - 1, algebra.mul(rep_b, rep_c))
    for shift, target in ((x_shift, x), (y_shift, y)):
        if shift:
            if not el_is_zero(module.d(shift)):
                raise AxiomError("primitive shifts must be cocycles")
            el_accumulate(target, shift, ONE)
    value = algebra.mul(rep_a, y)
    el_accumulate(value, algebra.mul(x, rep_c), -koszul(deg_a, 1))
    rep_class = h.class_of(value)

    target_degree = deg_a + deg_b + deg_c - 1
    indet = []
    for nm in h.space.basis(deg_b + deg_c - 1):
        cls = ring.product(a, {nm: ONE})
        if cls:
            indet.append(cls)
    for nm in h.space.basis(deg_a + deg_b - 1):
        cls = ring.product({nm: ONE}, c)
        if cls:
            indet.append(cls)

    # nontrivial iff the representative class is outside the indeterminacy span
    names = h.space.basis(target_degree)
    vec = tuple(rep_class.get(nm, ZERO) for nm in names)
    cols = [tuple(cls.get(nm, ZERO) for nm in names) for cls in indet]
    if not names:
        inside = True
    elif cols:
        inside = linalg.solve(linalg.Matrix.from_columns(cols, len(names)), vec) is not None
    else:
        inside = all(v == 0 for v in vec)
    return MasseyResult(triple=(a, b, c), defined=True, representative=rep_class,
                        indeterminacy=indet, nontrivial=not inside)


def massey_search(algebra: CDGA, ring: "CohomologyRing | None" = None,
                  max_degree: "int | None" = None):
    """Exhaustively try all triples of positive-degree H-basis classes (the
    --massey auto mode); returns every defined product, nontrivial first."""
    if ring is None:
        ring = cohomology_ring(algebra)
    h = ring.cohomology
    top = h.space.max_degree()
    if top is None:
        return []
    if max_degree is None:
        max_degree = top
    names = [nm for nm in h.space.names() if h.space.degree_of[nm] > 0]
    results = []
    for a in names:
        for b in names:
            for c in names:
                degree = sum(h.space.degree_of[nm] for nm in (a, b, c)) - 1
                if degree > max_degree:
                    continue
                r = triple_massey(algebra, {a: ONE}, {b: ONE}, {c: ONE}, ring=ring)
                if r.defined:
                    results.append(r)
    results.sort(key=lambda r: (not r.nontrivial,))
    return results


@dataclass
class PresentationCheck:
    passed: bool
    failures: list
    presented_dims: list
    ring_dims: list


def verify_presentation(ring: CohomologyRing, generators, images, relations,
                        max_degree: "int | None" = None) -> PresentationCheck:
    """Check a claimed presentation ⟨generators | relations⟩ ≅ ring.

    ``generators`` is [(name, degree)], ``images`` maps generator names to
    H-classes (Elements over the ring's basis), ``relations`` are polynomial
    strings.  Checks: every relation dies in the ring, the images generate,
    and the degree-bounded dimensions of the presented algebra match.
    """
    h = ring.cohomology
    top = h.space.max_degree() or 0
    if max_degree is None:
        max_degree = top
    failures = []

    for g, d in generators:
        if g not in images:
            failures.append(f"no image given for generator {g!r}")
            continue
        got = h.space.element_degree(images[g])
        if got != d:
            failures.append(f"image of {g!r} has degree {got}, claimed {d}")
    if failures:
        return PresentationCheck(False, failures, [], ring.betti(max_degree))

    free = FreeCGA(list(generators), max_degree)

    def eval_in_ring(expts) -> Element:
        out = {h.space.basis(0)[0]: ONE} if h.space.dim(0) else {}
        for (g, _), e in zip(generators, expts):
            for _ in range(e):
                out = ring.product(out, images[g])
        return out

    # relations must die in the ring
    for poly in relations:
        rel = free.eval_poly(poly)
        value: Element = {}
        for nm, coeff in rel.items():
            el_accumulate(value, eval_in_ring(free.by_name[nm]), coeff)
        if not el_is_zero(value):
            degree = free.space.element_degree(rel)
            failures.append(
                f"relation {poly!r} does not vanish (degree {degree}): {el_str(value)}")

    # the images must generate: monomial images span H degree-wise
    for degree in range(0, max_degree + 1):
        targets = h.space.basis(degree)
        if not targets:
            continue
        cols = []
        for nm in free.space.basis(degree):
            value = eval_in_ring(free.by_name[nm])
            cols.append(tuple(value.get(t, ZERO) for t in targets))
        got = linalg.rank(linalg.Matrix.from_columns(cols, len(targets))) if cols else 0
        if got != len(targets):
            failures.append(f"images do not generate H^{degree} "
                            f"(rank {got} of {len(targets)})")

    # dimensions of the presented algebra, by degree-bounded linear algebra
    presented = _presented_dimensions(free, relations, max_degree)
    ring_dims = ring.betti(max_degree)
    for degree in range(0, max_degree + 1):
        if presented[degree] != ring_dims[degree]:
            failures.append(
                f"presented algebra has dim {presented[degree]} in degree {degree}, "
                f"ring has {ring_dims[degree]}")

    return PresentationCheck(not failures, failures, presented, ring_dims)


def _presented_dimensions(free: FreeCGA, relations, max_degree: int):
    spans = {d: [] for d in range(0, max_degree + 1)}
    for poly in relations:
        rel = free.eval_poly(poly)
        if el_is_zero(rel):
            continue
        rel_degree = free.space.element_degree(rel)
        for d in free.space.support():
            if rel_degree + d > max_degree:
                continue
            for nm in free.space.basis(d):
                prod = free.mul({nm: ONE}, rel)
                if prod:
                    spans[rel_degree + d].append(
                        free.space.to_vector(prod, rel_degree + d))
    dims = []
    for degree in range(0, max_degree + 1):
        total = free.space.dim(degree)
        cols = spans.get(degree, [])
        cut = linalg.rank(linalg.Matrix.from_columns(cols, total)) if cols else 0
        dims.append(total - cut)
    return dims
