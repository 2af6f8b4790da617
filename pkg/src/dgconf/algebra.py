"""CDGAs, dgmodules, their morphisms, axiom verification, and cohomology.

Sign conventions used throughout the package (chosen once, validated by the
randomized invariant suite; see README for the full list):

* suspension      (s^k M)^p = M^{k+p},  d(s^k m) = (-1)^k s^k(dm),
                  a.(s^k m) = (-1)^{k|a|} s^k(a.m)
* linear dual     (#M)^p = Hom(M^{-p}, Q),  (df)(m) = -(-1)^{|f|} f(dm),
                  (a.f)(m) = (-1)^{|a||f|} f(a.m)
* tensor          d(x@y) = dx@y + (-1)^{|x|} x@dy,
                  (x@y)(x'@y') = (-1)^{|y||x'|} (xx')@(yy')

A violated axiom is data, not an exception: verify_* return lists of
Violation records with witnesses; assert_valid turns them into AxiomError
when a construction promises validity.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import AxiomError
from .graded import (
    Element,
    GradedSpace,
    el_accumulate,
    el_add,
    el_eq,
    el_is_zero,
    el_scale,
    el_str,
)
from .scalars import Q, ZERO, ONE


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        msg = f"{self.axiom} fails at {self.witness}"
        return f"{msg}: {self.detail}" if self.detail else msg


def assert_valid(violations, context: str):
    if violations:
        head = "; ".join(str(v) for v in violations[:3])
        more = f" (+{len(violations) - 3} more)" if len(violations) > 3 else ""
        raise AxiomError(f"{context}: {head}{more}")


def koszul(deg_a: int, deg_b: int):
    return ONE if (deg_a * deg_b) % 2 == 0 else -ONE


class CDGA:
    """A commutative differential graded algebra given by structure constants.

    ``products[(a, b)]`` is the element a.b (zero products may be omitted),
    ``diff[a]`` is d(a).  The constructor can fill unit products and the
    Koszul-symmetric half of the table.
    """

    def __init__(self, space: GradedSpace, unit: str, products, diff, name: str = "",
                 fill: bool = True):
        if unit not in space or space.degree_of[unit] != 0:
            raise AxiomError(f"unit {unit!r} must be a degree-0 basis name")
        self.space = space
        self.unit = unit
        self.name = name
        self.products = {k: dict(v) for k, v in products.items() if not el_is_zero(v)}
        self.diff = {k: dict(v) for k, v in diff.items() if not el_is_zero(v)}
        if fill:
            self._fill_table()
        self._module = None

    def _fill_table(self):
        deg = self.space.degree_of
        for a in list(self.space.names()):
            self.products.setdefault((self.unit, a), {a: ONE})
            self.products.setdefault((a, self.unit), {a: ONE})
        for (a, b), prod in list(self.products.items()):
            if (b, a) not in self.products:
                flipped = el_scale(prod, koszul(deg[a], deg[b]))
                if flipped:
                    self.products[(b, a)] = flipped

    # -- evaluation ---------------------------------------------------------

    def d_basis(self, name: str) -> Element:
        return self.diff.get(name, {})

    def d(self, e: Element) -> Element:
        out: Element = {}
        for name, c in e.items():
            el_accumulate(out, self.d_basis(name), c)
        return out

    def mul_basis(self, a: str, b: str) -> Element:
        return self.products.get((a, b), {})

    def mul(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for a, ca in x.items():
            for b, cb in y.items():
                el_accumulate(out, self.mul_basis(a, b), ca * cb)
        return out

    def unit_element(self) -> Element:
        return {self.unit: ONE}

    def element(self, coeffs) -> Element:
        e = {k: Q(v) for k, v in coeffs.items() if Q(v) != 0}
        self.space.check_element(e)
        return e

    # -- structure ----------------------------------------------------------

    def is_connected(self) -> bool:
        sup = self.space.support()
        return (not sup or sup[0] >= 0) and self.space.basis(0) == (self.unit,)

    def as_module(self) -> "DGModule":
        if self._module is None:
            action = {k: v for k, v in self.products.items()}
            self._module = DGModule(self, self.space, self.diff, action,
                                    name=self.name or "self", fill=False)
        return self._module

    def __repr__(self):
        label = self.name or "CDGA"
        return f"<{label}: dims {dict((d, self.space.dim(d)) for d in self.space.support())}>"


class DGModule:
    """A dgmodule over a CDGA: graded space, differential, action table.

    ``action[(a, m)]`` is a.m for a base-algebra basis name a and a module
    basis name m; unit action and zero entries may be omitted.
    """

    def __init__(self, base: CDGA, space: GradedSpace, diff, action, name: str = "",
                 fill: bool = True):
        self.base = base
        self.space = space
        self.name = name
        self.diff = {k: dict(v) for k, v in diff.items() if not el_is_zero(v)}
        self.action = {k: dict(v) for k, v in action.items() if not el_is_zero(v)}
        if fill:
            for m in space.names():
                self.action.setdefault((base.unit, m), {m: ONE})

    def d_basis(self, name: str) -> Element:
        return self.diff.get(name, {})

    def d(self, e: Element) -> Element:
        out: Element = {}
        for name, c in e.items():
            el_accumulate(out, self.d_basis(name), c)
        return out

    def act_basis(self, a: str, m: str) -> Element:
        return self.action.get((a, m), {})

    def act(self, x: Element, e: Element) -> Element:
        out: Element = {}
        for a, ca in x.items():
            for m, cm in e.items():
                el_accumulate(out, self.act_basis(a, m), ca * cm)
        return out

    def __repr__(self):
        label = self.name or "DGModule"
        return f"<{label}: dims {dict((d, self.space.dim(d)) for d in self.space.support())}>"


def as_module(obj) -> DGModule:
    return obj.as_module() if isinstance(obj, CDGA) else obj


def same_cdga(a: CDGA, b: CDGA) -> bool:
    if a is b:
        return True
    return (a.space == b.space and a.unit == b.unit
            and a.products == b.products and a.diff == b.diff)


class DGMorphism:
    """A degree-0 linear map given by images of source basis names.

    Chain-map, base-linearity and (optionally) multiplicativity are checked
    by verify_morphism, not by the constructor.
    """

    def __init__(self, source, target, images, multiplicative: bool = False, name: str = ""):
        self.source = source
        self.target = target
        self.images = {k: dict(v) for k, v in images.items() if not el_is_zero(v)}
        self.multiplicative = multiplicative
        self.name = name

    @property
    def source_space(self) -> GradedSpace:
        return self.source.space

    @property
    def target_space(self) -> GradedSpace:
        return self.target.space

    def image_basis(self, name: str) -> Element:
        return self.images.get(name, {})

    def __call__(self, e: Element) -> Element:
        out: Element = {}
        for name, c in e.items():
            if name not in self.source_space.degree_of:
                raise AxiomError(f"{name!r} not in source of morphism {self.name!r}")
            el_accumulate(out, self.image_basis(name), c)
        return out

    def matrix(self, degree: int) -> linalg.Matrix:
        src = self.source_space.basis(degree)
        tgt_dim = self.target_space.dim(degree)
        cols = [self.target_space.to_vector(self.image_basis(m), degree) if self.image_basis(m)
                else tuple([ZERO] * tgt_dim) for m in src]
        return linalg.Matrix.from_columns(cols, tgt_dim)

    def is_surjective(self) -> bool:
        for deg in self.target_space.support():
            if linalg.rank(self.matrix(deg)) < self.target_space.dim(deg):
                return False
        return True

    def __repr__(self):
        return f"<DGMorphism {self.name or ''}: {self.source!r} -> {self.target!r}>"


def compose(g: DGMorphism, f: DGMorphism, name: str = "") -> DGMorphism:
    """g after f."""
    images = {m: g(f.image_basis(m)) for m in f.source_space.names()}
    return DGMorphism(f.source, g.target, images,
                      multiplicative=f.multiplicative and g.multiplicative, name=name)


def identity_morphism(obj, name: str = "id") -> DGMorphism:
    space = obj.space
    return DGMorphism(obj, obj, {m: {m: ONE} for m in space.names()},
                      multiplicative=isinstance(obj, CDGA), name=name)


def zero_morphism(source, target, name: str = "0") -> DGMorphism:
    return DGMorphism(source, target, {}, name=name)


# -- axiom verification -----------------------------------------------------

def _check_homogeneous(space: GradedSpace, e: Element, degree: int, axiom, witness, out):
    try:
        d = space.element_degree(e)
    except AxiomError as exc:
        out.append(Violation(axiom, witness, str(exc)))
        return
    if d is not None and d != degree:
        out.append(Violation(axiom, witness, f"lands in degree {d}, expected {degree}"))


def verify_cdga(algebra: CDGA, full: bool = True):
    """Check the CDGA axioms; returns the (possibly empty) violation list.

    ``full=False`` skips the cubic associativity sweep; constructors use it
    for large intermediate tensor squares and the full check runs on every
    object surfaced to callers.
    """
    out = []
    space = algebra.space
    deg = space.degree_of
    names = list(space.names())

    if space.degree_of.get(algebra.unit) != 0:
        out.append(Violation("unit degree", (algebra.unit,)))
    for a in names:
        got = algebra.mul_basis(algebra.unit, a)
        if not el_eq(got, {a: ONE}):
            out.append(Violation("unit", (algebra.unit, a), f"1·{a} = {el_str(got)}"))
        got = algebra.mul_basis(a, algebra.unit)
        if not el_eq(got, {a: ONE}):
            out.append(Violation("unit", (a, algebra.unit), f"{a}·1 = {el_str(got)}"))

    for (a, b), prod in algebra.products.items():
        _check_homogeneous(space, prod, deg[a] + deg[b], "product degree", (a, b), out)
    for a in names:
        _check_homogeneous(space, algebra.d_basis(a), deg[a] + 1, "differential degree", (a,), out)

    for a in names:
        dd = algebra.d(algebra.d_basis(a))
        if not el_is_zero(dd):
            out.append(Violation("d^2 = 0", (a,), f"d(d {a}) = {el_str(dd)}"))

    for a in names:
        for b in names:
            ab = algebra.mul_basis(a, b)
            ba = algebra.mul_basis(b, a)
            if not el_eq(ab, el_scale(ba, koszul(deg[a], deg[b]))):
                out.append(Violation("graded commutativity", (a, b),
                                     f"{a}·{b} = {el_str(ab)} vs {b}·{a} = {el_str(ba)}"))

    for a in names:
        for b in names:
            lhs = algebra.d(algebra.mul_basis(a, b))
            rhs = el_add(algebra.mul(algebra.d_basis(a), {b: ONE}),
                         el_scale(algebra.mul({a: ONE}, algebra.d_basis(b)),
                                  koszul(deg[a], 1)))
            if not el_eq(lhs, rhs):
                out.append(Violation("Leibniz", (a, b),
                                     f"d({a}·{b}) = {el_str(lhs)} != {el_str(rhs)}"))

    if full:
        top = space.max_degree()
        for a in names:
            for b in names:
                if top is not None and deg[a] + deg[b] > top:
                    continue
                ab = algebra.mul_basis(a, b)
                for c in names:
                    lhs = algebra.mul(ab, {c: ONE})
                    rhs = algebra.mul({a: ONE}, algebra.mul_basis(b, c))
                    if not el_eq(lhs, rhs):
                        out.append(Violation("associativity", (a, b, c),
                                             f"({a}·{b})·{c} != {a}·({b}·{c})"))
    return out


def verify_module(module: DGModule, full: bool = True):
    """Check the dgmodule axioms over module.base."""
    out = []
    base = module.base
    space = module.space
    adeg = base.space.degree_of
    mdeg = space.degree_of
    mnames = list(space.names())
    anames = list(base.space.names())

    for m in mnames:
        got = module.act_basis(base.unit, m)
        if not el_eq(got, {m: ONE}):
            out.append(Violation("unit action", (m,), f"1·{m} = {el_str(got)}"))
        _check_homogeneous(space, module.d_basis(m), mdeg[m] + 1, "differential degree", (m,), out)
        dd = module.d(module.d_basis(m))
        if not el_is_zero(dd):
            out.append(Violation("d^2 = 0", (m,), f"d(d {m}) = {el_str(dd)}"))

    for (a, m), val in module.action.items():
        _check_homogeneous(space, val, adeg[a] + mdeg[m], "action degree", (a, m), out)

    for a in anames:
        for m in mnames:
            lhs = module.d(module.act_basis(a, m))
            rhs = el_add(module.act(base.d_basis(a), {m: ONE}),
                         el_scale(module.act({a: ONE}, module.d_basis(m)),
                                  koszul(adeg[a], 1)))
            if not el_eq(lhs, rhs):
                out.append(Violation("module Leibniz", (a, m),
                                     f"d({a}·{m}) = {el_str(lhs)} != {el_str(rhs)}"))

    if full:
        for a in anames:
            for b in anames:
                ab = base.mul_basis(a, b)
                for m in mnames:
                    lhs = module.act(ab, {m: ONE})
                    rhs = module.act({a: ONE}, module.act_basis(b, m))
                    if not el_eq(lhs, rhs):
                        out.append(Violation("action associativity", (a, b, m),
                                             f"({a}·{b})·{m} != {a}·({b}·{m})"))
    return out


def verify_morphism(f: DGMorphism):
    """Check degree 0, chain map, base-linearity, multiplicativity (if flagged)."""
    out = []
    src = as_module(f.source)
    tgt = as_module(f.target)

    for m in src.space.names():
        _check_homogeneous(tgt.space, f.image_basis(m), src.space.degree_of[m],
                           "degree 0", (m,), out)

    for m in src.space.names():
        lhs = f(src.d_basis(m))
        rhs = tgt.d(f.image_basis(m))
        if not el_eq(lhs, rhs):
            out.append(Violation("chain map", (m,),
                                 f"f(d {m}) = {el_str(lhs)} != d(f {m}) = {el_str(rhs)}"))

    if same_cdga(src.base, tgt.base):
        for a in src.base.space.names():
            for m in src.space.names():
                lhs = f(src.act_basis(a, m))
                rhs = tgt.act({a: ONE}, f.image_basis(m))
                if not el_eq(lhs, rhs):
                    out.append(Violation("base linearity", (a, m),
                                         f"f({a}·{m}) = {el_str(lhs)} != {a}·f({m}) = {el_str(rhs)}"))

    if f.multiplicative:
        if not (isinstance(f.source, CDGA) and isinstance(f.target, CDGA)):
            out.append(Violation("multiplicative flag", (), "endpoints are not CDGAs"))
        else:
            A, B = f.source, f.target
            if not el_eq(f(A.unit_element()), B.unit_element()):
                out.append(Violation("multiplicativity", (A.unit,), "f(1) != 1"))
            for a in A.space.names():
                fa = f.image_basis(a)
                for b in A.space.names():
                    lhs = f(A.mul_basis(a, b))
                    rhs = B.mul(fa, f.image_basis(b))
                    if not el_eq(lhs, rhs):
                        out.append(Violation("multiplicativity", (a, b),
                                             f"f({a}·{b}) != f({a})f({b})"))
    return out


# -- cohomology -------------------------------------------------------------

class Cohomology:
    """Cohomology of a dgmodule: graded space of classes h{deg}_{i}, chosen
    cocycle representatives, and exact class_of coordinates."""

    def __init__(self, module, space: GradedSpace, representatives, boundaries):
        self.module = module
        self.space = space
        self.representatives = representatives
        self._boundaries = boundaries  # degree -> list of image columns

    def dim(self, degree: int) -> int:
        return self.space.dim(degree)

    def betti(self, max_degree=None):
        top = self.space.max_degree()
        if max_degree is None:
            max_degree = top if top is not None else 0
        return [self.dim(i) for i in range(0, max_degree + 1)]

    def representative(self, h_name: str) -> Element:
        return dict(self.representatives[h_name])

    def class_of(self, e: Element) -> Element:
        """Coordinates of a cocycle's class; raises for non-cocycles."""
        if el_is_zero(e):
            return {}
        mspace = as_module(self.module).space
        degree = mspace.element_degree(e)
        if not el_is_zero(as_module(self.module).d(e)):
            raise AxiomError(f"not a cocycle: {el_str(e)}")
        h_names = self.space.basis(degree)
        bounds = self._boundaries.get(degree, [])
        reps = [mspace.to_vector(self.representatives[h], degree) for h in h_names]
        vec = mspace.to_vector(e, degree)
        if not h_names and not bounds:
            if any(x != 0 for x in vec):
                raise AxiomError("cocycle outside computed span (inconsistent module)")
            return {}
        m = linalg.Matrix.from_columns(list(bounds) + reps, len(vec))
        sol = linalg.solve(m, vec)
        if sol is None:
            raise AxiomError("cocycle not in span of boundaries and representatives")
        coords = sol[len(bounds):]
        return {h_names[i]: coords[i] for i in range(len(h_names)) if coords[i] != 0}


def _d_matrix(module: DGModule, degree: int) -> linalg.Matrix:
    src = module.space.basis(degree)
    tgt_dim = module.space.dim(degree + 1)
    cols = [module.space.to_vector(module.d_basis(m), degree + 1) if module.d_basis(m)
            else tuple([ZERO] * tgt_dim) for m in src]
    return linalg.Matrix.from_columns(cols, tgt_dim)


def cohomology(obj) -> Cohomology:
    """Cohomology of a CDGA or dgmodule, degree by degree.

    Representatives are picked deterministically: boundaries first, then the
    earliest kernel vectors (in rref order) completing them.
    """
    module = as_module(obj)
    space = module.space
    degrees = {}
    representatives = {}
    boundaries = {}
    for degree in space.support():
        dim = space.dim(degree)
        d_here = _d_matrix(module, degree)
        kernel, _ = linalg.kernel_and_image(d_here)
        below = space.dim(degree - 1)
        if below:
            d_below = _d_matrix(module, degree - 1)
            _, image = linalg.kernel_and_image(d_below)
        else:
            image = []
        boundaries[degree] = image
        stacked = linalg.Matrix.from_columns(list(image) + list(kernel), dim)
        _, _, pivots = linalg.reduce(stacked)
        chosen = [p - len(image) for p in pivots if p >= len(image)]
        h_names = []
        for i, idx in enumerate(chosen):
            name = f"h{degree}_{i}"
            h_names.append(name)
            representatives[name] = space.from_vector(kernel[idx], degree)
        if h_names:
            degrees[degree] = h_names
    return Cohomology(module, GradedSpace(degrees), representatives, boundaries)


def euler_characteristic(space: GradedSpace):
    return sum((-1) ** d * space.dim(d) for d in space.support())
