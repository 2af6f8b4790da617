"""Constructions on CDGAs and dgmodules: tensor products, suspensions,
linear duals, quotients, kernels, restriction of scalars.

Naming is deterministic so golden outputs are stable:

* tensor basis        x⊗y
* k-th suspension     s{k}·x          (applied literally, so s1·s-8·x)
* linear dual         x∨
* quotient            coset representatives keep their source name
* kernel modules      k{degree}_{i}

Every constructor runs the quadratic axiom subset (d^2=0, degrees, unit,
Leibniz, commutativity) on its output; the cubic associativity sweep is in
verify_cdga/verify_module and runs on everything surfaced to callers.
"""

from __future__ import annotations

from . import linalg
from .algebra import (
    CDGA,
    DGModule,
    DGMorphism,
    as_module,
    assert_valid,
    koszul,
    verify_cdga,
    verify_module,
    verify_morphism,
)
from .errors import AxiomError, InternalCheckError
from .graded import Element, GradedSpace, el_accumulate, el_is_zero, el_scale, el_str
from .scalars import Q, ZERO, ONE


def sus_name(k: int, name: str) -> str:
    return f"s{k}·{name}"


def dual_name(name: str) -> str:
    return f"{name}∨"


def tensor_name(a: str, b: str) -> str:
    return f"{a}⊗{b}"


def homogeneous_components(space: GradedSpace, e: Element):
    parts = {}
    for name, c in e.items():
        if c == 0:
            continue
        parts.setdefault(space.degree_of[name], {})[name] = c
    return parts


# -- tensor products --------------------------------------------------------

def _tensor_space(xs: GradedSpace, ys: GradedSpace) -> GradedSpace:
    degrees = {}
    for dx in xs.support():
        for dy in ys.support():
            bucket = degrees.setdefault(dx + dy, [])
            for x in xs.basis(dx):
                for y in ys.basis(dy):
                    bucket.append(tensor_name(x, y))
    return GradedSpace(degrees)


def tensor_elem(ex: Element, ey: Element) -> Element:
    out: Element = {}
    for x, cx in ex.items():
        for y, cy in ey.items():
            el_accumulate(out, {tensor_name(x, y): ONE}, cx * cy)
    return out


def split_tensor_name(name: str):
    left, _, right = name.partition("⊗")
    return left, right


def tensor_cdga(X: CDGA, Y: CDGA, name: str = "", check: bool = True) -> CDGA:
    """X⊗Y with the Koszul product (x⊗y)(x'⊗y') = (-1)^{|y||x'|} xx'⊗yy'
    and differential d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy."""
    space = _tensor_space(X.space, Y.space)
    xdeg, ydeg = X.space.degree_of, Y.space.degree_of
    pairs = [(x, y) for nm in space.names() for (x, y) in [split_tensor_name(nm)]]
    products = {}
    for x, y in pairs:
        for x2, y2 in pairs:
            sign = koszul(ydeg[y], xdeg[x2])
            prod = tensor_elem(X.mul_basis(x, x2), Y.mul_basis(y, y2))
            if prod:
                products[(tensor_name(x, y), tensor_name(x2, y2))] = el_scale(prod, sign)
    diff = {}
    for x, y in pairs:
        dxy = tensor_elem(X.d_basis(x), {y: ONE})
        el_accumulate(dxy, tensor_elem({x: ONE}, Y.d_basis(y)), koszul(xdeg[x], 1))
        if dxy:
            diff[tensor_name(x, y)] = dxy
    out = CDGA(space, tensor_name(X.unit, Y.unit), products, diff,
               name=name or f"{X.name}⊗{Y.name}", fill=False)
    if check:
        assert_valid(verify_cdga(out, full=False), f"tensor {out.name}")
    return out


def tensor_modules(M: DGModule, N: DGModule, base: CDGA | None = None,
                   name: str = "", check: bool = True) -> DGModule:
    """M⊗N as a dgmodule over base (defaults to M.base ⊗ N.base)."""
    if base is None:
        base = tensor_cdga(M.base, N.base)
    space = _tensor_space(M.space, N.space)
    mdeg, ndeg = M.space.degree_of, N.space.degree_of
    pairs = [split_tensor_name(nm) for nm in space.names()]
    diff = {}
    for m, n in pairs:
        dmn = tensor_elem(M.d_basis(m), {n: ONE})
        el_accumulate(dmn, tensor_elem({m: ONE}, N.d_basis(n)), koszul(mdeg[m], 1))
        if dmn:
            diff[tensor_name(m, n)] = dmn
    action = {}
    adeg = base.space.degree_of
    for aname in base.space.names():
        a, b = split_tensor_name(aname)
        bdeg = adeg[aname] - M.base.space.degree_of[a]
        for m, n in pairs:
            sign = koszul(bdeg, mdeg[m])
            val = tensor_elem(M.act_basis(a, m), N.act_basis(b, n))
            if val:
                action[(aname, tensor_name(m, n))] = el_scale(val, sign)
    out = DGModule(base, space, diff, action, name=name or f"{M.name}⊗{N.name}", fill=False)
    if check:
        assert_valid(verify_module(out, full=False), f"tensor module {out.name}")
    return out


def tensor_morphisms(f: DGMorphism, g: DGMorphism, source=None, target=None,
                     name: str = "") -> DGMorphism:
    """f⊗g on degree-0 morphisms (no Koszul sign in that case)."""
    if source is None:
        source = tensor_modules(as_module(f.source), as_module(g.source))
    if target is None:
        target = tensor_modules(as_module(f.target), as_module(g.target))
    images = {}
    for nm in source.space.names():
        m, n = split_tensor_name(nm)
        val = tensor_elem(f.image_basis(m), g.image_basis(n))
        if val:
            images[nm] = val
    return DGMorphism(source, target, images, name=name or f"{f.name}⊗{g.name}")


def tensor_cdga_morphisms(f: DGMorphism, g: DGMorphism, source: CDGA, target: CDGA,
                          name: str = "") -> DGMorphism:
    """f⊗g between already-built tensor CDGAs, as a multiplicative morphism."""
    images = {}
    for nm in source.space.names():
        a, b = split_tensor_name(nm)
        val = tensor_elem(f.image_basis(a), g.image_basis(b))
        if val:
            images[nm] = val
    return DGMorphism(source, target, images, multiplicative=True,
                      name=name or f"{f.name}⊗{g.name}")


# -- suspension -------------------------------------------------------------

def suspend_module(M: DGModule, k: int, name: str = "", check: bool = True) -> DGModule:
    """(s^k M)^p = M^{k+p}; d(s^k m) = (-1)^k s^k(dm); a·s^k m = (-1)^{k|a|} s^k(am)."""
    space = GradedSpace({d - k: [sus_name(k, m) for m in M.space.basis(d)]
                         for d in M.space.support()})
    sgn_d = koszul(k, 1)
    rename = {m: sus_name(k, m) for m in M.space.names()}

    def push(e: Element, sign) -> Element:
        return {rename[m]: sign * c for m, c in e.items()}

    diff = {}
    action = {}
    for m in M.space.names():
        dm = M.d_basis(m)
        if dm:
            diff[sus_name(k, m)] = push(dm, sgn_d)
    adeg = M.base.space.degree_of
    for (a, m), val in M.action.items():
        action[(a, sus_name(k, m))] = push(val, koszul(k, adeg[a]))
    out = DGModule(M.base, space, diff, action, name=name or f"s{k}{M.name}", fill=False)
    if check:
        assert_valid(verify_module(out, full=False), f"suspension {out.name}")
    return out


def suspend_elem(e: Element, k: int) -> Element:
    return {sus_name(k, m): c for m, c in e.items()}


def suspend_morphism(f: DGMorphism, k: int, source=None, target=None,
                     name: str = "") -> DGMorphism:
    if source is None:
        source = suspend_module(as_module(f.source), k)
    if target is None:
        target = suspend_module(as_module(f.target), k)
    images = {sus_name(k, m): suspend_elem(f.image_basis(m), k)
              for m in as_module(f.source).space.names() if f.image_basis(m)}
    return DGMorphism(source, target, images, name=name or f"s{k}{f.name}")


# -- linear dual ------------------------------------------------------------

def dual_module(M: DGModule, name: str = "", check: bool = True) -> DGModule:
    """#M with (df)(m) = -(-1)^{|f|} f(dm) and (a·f)(m) = (-1)^{|a||f|} f(am)."""
    space = GradedSpace({-d: [dual_name(m) for m in M.space.basis(d)]
                         for d in M.space.support()})
    mdeg = M.space.degree_of
    diff = {}
    for m in M.space.names():
        # d(m∨) pairs against x with m appearing in dx
        img: Element = {}
        for x in M.space.basis(mdeg[m] - 1):
            c = M.d_basis(x).get(m, ZERO)
            if c != 0:
                # |m∨| = -|m|; -(-1)^{-|m|} = -(-1)^{|m|}
                img[dual_name(x)] = -koszul(mdeg[m], 1) * c
        if img:
            diff[dual_name(m)] = img
    action = {}
    adeg = M.base.space.degree_of
    for a in M.base.space.names():
        if a == M.base.unit:
            continue
        da = adeg[a]
        for m in M.space.names():
            img = {}
            for x in M.space.basis(mdeg[m] - da):
                c = M.act_basis(a, x).get(m, ZERO)
                if c != 0:
                    img[dual_name(x)] = koszul(da, mdeg[m]) * c
            if img:
                action[(a, dual_name(m))] = img
    out = DGModule(M.base, space, diff, action, name=name or f"#{M.name}")
    if check:
        assert_valid(verify_module(out, full=False), f"dual {out.name}")
    return out


def dual_elem_pairing(e_dual: Element, e: Element):
    """Evaluate a #M element on an M element."""
    total = ZERO
    for m, c in e.items():
        total += e_dual.get(dual_name(m), ZERO) * c
    return total


def dual_morphism(f: DGMorphism, source=None, target=None, name: str = "") -> DGMorphism:
    """#f: #N -> #M, g |-> g∘f (f has degree 0, so no sign)."""
    src_mod = as_module(f.source)
    tgt_mod = as_module(f.target)
    if source is None:
        source = dual_module(tgt_mod)
    if target is None:
        target = dual_module(src_mod)
    images = {}
    for n in tgt_mod.space.names():
        img: Element = {}
        for m in src_mod.space.basis(tgt_mod.space.degree_of[n]):
            c = f.image_basis(m).get(n, ZERO)
            if c != 0:
                img[dual_name(m)] = c
        if img:
            images[dual_name(n)] = img
    return DGMorphism(source, target, images, name=name or f"#{f.name}")


def dual_shift(M: DGModule, k: int, name: str = "") -> DGModule:
    """s^k #M — the composite the wrong-way maps are built from."""
    return suspend_module(dual_module(M), k, name=name or f"s{k}#{M.name}")


def dual_shift_morphism(f: DGMorphism, k: int, source=None, target=None,
                        name: str = "") -> DGMorphism:
    """s^k #f: s^k #N -> s^k #M."""
    df = dual_morphism(f)
    if source is None:
        source = suspend_module(as_module(df.source), k)
    if target is None:
        target = suspend_module(as_module(df.target), k)
    return suspend_morphism(df, k, source=source, target=target,
                            name=name or f"s{k}#{f.name}")


# -- restriction of scalars -------------------------------------------------

def restrict_module(M: DGModule, phi: DGMorphism, name: str = "",
                    check: bool = True) -> DGModule:
    """M viewed over C along a CDGA morphism phi: C -> A = M.base."""
    C = phi.source
    if not isinstance(C, CDGA):
        raise AxiomError("restriction needs a CDGA morphism")
    action = {}
    for c in C.space.names():
        if c == C.unit:
            continue
        img = phi.image_basis(c)
        for m in M.space.names():
            val = M.act(img, {m: ONE})
            if val:
                action[(c, m)] = val
    out = DGModule(C, M.space, M.diff, action, name=name or f"{M.name}|{C.name}")
    if check:
        assert_valid(verify_module(out, full=False), f"restriction {out.name}")
    return out


def cdga_as_module_over(Q: CDGA, phi: DGMorphism, name: str = "") -> DGModule:
    """A CDGA Q as a dgmodule over P along phi: P -> Q."""
    return restrict_module(Q.as_module(), phi, name=name or f"{Q.name} over {phi.source.name}")


def as_base_morphism(f: DGMorphism, name: str = "") -> DGMorphism:
    """Re-read a CDGA morphism f: B -> C as a morphism of B-dgmodules
    (restriction of scalars on the target)."""
    if not isinstance(f.source, CDGA) or not isinstance(f.target, CDGA):
        raise AxiomError("as_base_morphism expects a CDGA morphism")
    target = restrict_module(f.target.as_module(), f)
    return DGMorphism(f.source.as_module(), target, f.images, name=name or f.name)


# -- kernels ----------------------------------------------------------------

def kernel_module(f: DGMorphism, name: str = "", check: bool = True):
    """The kernel of a base-linear chain map as a dgmodule, with inclusion.

    Returns (K, incl).  Basis names are k{degree}_{i} over the deterministic
    kernel vectors of f's degree-wise matrices.
    """
    src = as_module(f.source)
    space_names = {}
    vectors = {}  # degree -> list of kernel columns
    for degree in src.space.support():
        kernel, _ = linalg.kernel_and_image(f.matrix(degree))
        if kernel:
            space_names[degree] = [f"k{degree}_{i}" for i in range(len(kernel))]
            vectors[degree] = kernel
    space = GradedSpace(space_names)

    def coords(elem: Element, degree: int) -> Element:
        if el_is_zero(elem):
            return {}
        cols = vectors.get(degree)
        if not cols:
            raise InternalCheckError(f"kernel not closed: {el_str(elem)} in degree {degree}")
        sol = linalg.solve(linalg.Matrix.from_columns(cols, src.space.dim(degree)),
                           src.space.to_vector(elem, degree))
        if sol is None:
            raise InternalCheckError(f"kernel not closed under d/action: {el_str(elem)}")
        names = space.basis(degree)
        return {names[i]: sol[i] for i in range(len(names)) if sol[i] != 0}

    incl_images = {}
    for degree, names in space_names.items():
        for i, nm in enumerate(names):
            incl_images[nm] = src.space.from_vector(vectors[degree][i], degree)

    diff = {}
    action = {}
    for degree, names in space_names.items():
        for nm in names:
            d_in_src = src.d(incl_images[nm])
            if not el_is_zero(d_in_src):
                diff[nm] = coords(d_in_src, degree + 1)
        for a in src.base.space.names():
            if a == src.base.unit:
                continue
            adeg = src.base.space.degree_of[a]
            for nm in names:
                moved = src.act({a: ONE}, incl_images[nm])
                if not el_is_zero(moved):
                    action[(a, nm)] = coords(moved, degree + adeg)
    K = DGModule(src.base, space, diff, action, name=name or f"ker {f.name}")
    incl = DGMorphism(K, src, incl_images, name=f"ker {f.name} ↪")
    if check:
        assert_valid(verify_module(K, full=False), f"kernel {K.name}")
        assert_valid(verify_morphism(incl), f"kernel inclusion {incl.name}")
    return K, incl


def kernel_elements(f: DGMorphism):
    """Kernel of f as homogeneous elements of the source, degree by degree."""
    src_space = as_module(f.source).space
    out = {}
    for degree in src_space.support():
        kernel, _ = linalg.kernel_and_image(f.matrix(degree))
        if kernel:
            out[degree] = [src_space.from_vector(v, degree) for v in kernel]
    return out


# -- quotients --------------------------------------------------------------

def _ideal_spans(space: GradedSpace, elements):
    """Split generators into homogeneous pieces and return independent
    spanning columns per degree."""
    spans = {}
    for e in elements:
        for degree, part in homogeneous_components(space, e).items():
            spans.setdefault(degree, []).append(space.to_vector(part, degree))
    reduced = {}
    for degree, cols in spans.items():
        m = linalg.Matrix.from_columns(cols, space.dim(degree))
        _, _, pivots = linalg.reduce(m)
        reduced[degree] = [m.column(j) for j in pivots]
    return reduced


def _in_span(spans, space: GradedSpace, e: Element) -> bool:
    for degree, part in homogeneous_components(space, e).items():
        cols = spans.get(degree, [])
        if not linalg.in_span(cols, space.to_vector(part, degree)):
            return False
    return True


class _QuotientData:
    """Shared machinery for module and algebra quotients."""

    def __init__(self, space: GradedSpace, spans):
        self.space = space
        self.spans = spans
        self.rep_names = {}
        self.proj = {}  # source basis name -> Element over representative names
        names_by_degree = {}
        for degree in space.support():
            dim = space.dim(degree)
            cols = spans.get(degree, [])
            comp = linalg.complement_in(cols, dim)
            reps = []
            for v in comp:
                idx = next(i for i, x in enumerate(v) if x != 0)
                reps.append(space.basis(degree)[idx])
            names_by_degree[degree] = reps
            self.rep_names[degree] = reps
            if not reps and not cols:
                continue
            basis_matrix = linalg.Matrix.from_columns(list(cols) + list(comp), dim)
            coords = linalg.solve_matrix(basis_matrix, linalg.Matrix.identity(dim))
            if coords is None:
                raise InternalCheckError("quotient basis is not a basis")
            k = len(cols)
            for j, nm in enumerate(space.basis(degree)):
                img = {reps[i]: coords.entries[k + i][j]
                       for i in range(len(reps)) if coords.entries[k + i][j] != 0}
                if img:
                    self.proj[nm] = img
        self.quotient_space = GradedSpace({d: n for d, n in names_by_degree.items() if n})

    def project(self, e: Element) -> Element:
        out: Element = {}
        for nm, c in e.items():
            el_accumulate(out, self.proj.get(nm, {}), c)
        return out


def quotient_module(M: DGModule, ideal_elements, name: str = "", check: bool = True):
    """M / span(ideal): requires the span to be a sub-dgmodule.

    Coset representatives are the deterministic standard-basis completion,
    so quotient basis names are a subset of M's names.  Returns (M/I, π).
    """
    spans = _ideal_spans(M.space, ideal_elements)
    if check:
        for degree, cols in spans.items():
            for v in cols:
                e = M.space.from_vector(v, degree)
                if not _in_span(spans, M.space, M.d(e)):
                    raise AxiomError(f"ideal not closed under d at degree {degree}")
                for a in M.base.space.names():
                    if a == M.base.unit:
                        continue
                    if not _in_span(spans, M.space, M.act({a: ONE}, e)):
                        raise AxiomError(f"ideal not closed under action of {a}")
    data = _QuotientData(M.space, spans)
    qspace = data.quotient_space
    diff = {}
    action = {}
    for degree, reps in data.rep_names.items():
        for r in reps:
            dq = data.project(M.d_basis(r))
            if dq:
                diff[r] = dq
    for a in M.base.space.names():
        if a == M.base.unit:
            continue
        for r in qspace.names():
            val = data.project(M.act_basis(a, r))
            if val:
                action[(a, r)] = val
    out = DGModule(M.base, qspace, diff, action, name=name or f"{M.name}/I")
    pi = DGMorphism(M, out, {nm: img for nm, img in data.proj.items()}, name=f"π:{out.name}")
    if check:
        assert_valid(verify_module(out, full=False), f"quotient {out.name}")
        assert_valid(verify_morphism(pi), f"projection {pi.name}")
    return out, pi


def quotient_cdga(A: CDGA, ideal_elements, name: str = "", check: bool = True):
    """A / I for a differential ideal I given by spanning elements.

    Returns (A/I, π) with π multiplicative; raises AxiomError when the span
    is not an ideal or not d-closed, or when it contains the unit.
    """
    spans = _ideal_spans(A.space, ideal_elements)
    if check:
        for degree, cols in spans.items():
            for v in cols:
                e = A.space.from_vector(v, degree)
                if not _in_span(spans, A.space, A.d(e)):
                    raise AxiomError(f"ideal not closed under d at degree {degree}")
                for a in A.space.names():
                    if a == A.unit:
                        continue
                    if not _in_span(spans, A.space, A.mul({a: ONE}, e)):
                        raise AxiomError(f"ideal not multiplicatively closed (at {a})")
    data = _QuotientData(A.space, spans)
    if A.unit not in data.proj or not el_is_zero(
            {k: v for k, v in data.proj[A.unit].items() if k != A.unit}):
        raise AxiomError("ideal contains the unit")
    qspace = data.quotient_space
    products = {}
    for r in qspace.names():
        for r2 in qspace.names():
            val = data.project(A.mul_basis(r, r2))
            if val:
                products[(r, r2)] = val
    diff = {}
    for r in qspace.names():
        dq = data.project(A.d_basis(r))
        if dq:
            diff[r] = dq
    out = CDGA(qspace, A.unit, products, diff, name=name or f"{A.name}/I", fill=False)
    pi = DGMorphism(A, out, {nm: img for nm, img in data.proj.items()},
                    multiplicative=True, name=f"π:{out.name}")
    if check:
        assert_valid(verify_cdga(out, full=False), f"quotient {out.name}")
        assert_valid(verify_morphism(pi), f"projection {pi.name}")
    return out, pi


# -- semifree modules -------------------------------------------------------

def free_module_name(a: str, v: str, unit: str) -> str:
    return v if a == unit else f"{a}·{v}"


def free_module(A: CDGA, generators, gen_diffs=None, name: str = "",
                check: bool = True) -> DGModule:
    """The semifree A-dgmodule A⊗V on graded generators.

    ``generators`` is a list of (name, degree); ``gen_diffs`` maps a
    generator to an element of the module itself (expressed over the basis
    names a·v).  d extends by d(a·v) = (da)·v + (-1)^{|a|} a·d(v); validity
    of d² is checked, not assumed.
    """
    gen_diffs = gen_diffs or {}
    adeg = A.space.degree_of
    degrees = {}
    factors = {}
    for v, vdeg in generators:
        for a in A.space.names():
            nm = free_module_name(a, v, A.unit)
            degrees.setdefault(adeg[a] + vdeg, []).append(nm)
            factors[nm] = (a, v)
    # deterministic order inside each degree: generator declaration order,
    # then base-algebra order
    order = {v: i for i, (v, _) in enumerate(generators)}
    aorder = {a: i for i, a in enumerate(A.space.names())}
    for d in degrees:
        degrees[d].sort(key=lambda nm: (order[factors[nm][1]], aorder[factors[nm][0]]))
    space = GradedSpace(degrees)

    action = {}
    for nm, (a, v) in factors.items():
        for b in A.space.names():
            if b == A.unit:
                continue
            prod = A.mul_basis(b, a)
            val = {free_module_name(c, v, A.unit): coeff for c, coeff in prod.items()}
            if val:
                action[(b, nm)] = val

    proto = DGModule(A, space, {}, action, fill=True)
    diff = {}
    for nm, (a, v) in factors.items():
        img: Element = {}
        for c, coeff in A.d_basis(a).items():
            el_accumulate(img, {free_module_name(c, v, A.unit): ONE}, coeff)
        dv = gen_diffs.get(v, {})
        if dv:
            el_accumulate(img, proto.act({a: ONE}, dv), koszul(adeg[a], 1))
        if img:
            diff[nm] = img
    out = DGModule(A, space, diff, action, name=name or f"{A.name}⊗V")
    if check:
        assert_valid(verify_module(out, full=False), f"semifree module {out.name}")
    return out


# -- misc -------------------------------------------------------------------

def reorder_basis(M: DGModule, rng) -> DGModule:
    """Same module with basis shuffled inside each degree (for testing that
    downstream choices do not depend on pivot order)."""
    degrees = {}
    for d in M.space.support():
        names = list(M.space.basis(d))
        rng.shuffle(names)
        degrees[d] = names
    space = GradedSpace(degrees)
    return DGModule(M.base, space, M.diff, M.action, name=f"{M.name} (shuffled)")


def morphism_from_images(source, target, images, multiplicative=False,
                         name: str = "", check: bool = True) -> DGMorphism:
    f = DGMorphism(source, target, images, multiplicative=multiplicative, name=name)
    if check:
        assert_valid(verify_morphism(f), f"morphism {name or '?'}")
    return f
