"""Mapping cones and the structures living on them.

C(f: Q -> N) = N ⊕ sQ with δ(n, sq) = (dn + f(q), -s dq).  When N is the
base algebra itself the cone carries the semi-trivial CGA structure
((sq)(sq') = 0); it satisfies Leibniz exactly when f is balanced
(f(x)y = xf(y)), and a truncation τ^{≤N} inherits a genuine CDGA structure
whenever Q^{<p} = 0 and N ≤ 2p-3, balanced or not.

Truncations below a degree quotient by a deterministic ideal: everything
above the bound plus a complement of the degree-N cocycles chosen by
standard-basis pivoting, so repeated runs give identical models.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import (
    CDGA,
    Cohomology,
    DGModule,
    DGMorphism,
    _d_matrix,
    as_module,
    assert_valid,
    cohomology,
    compose,
    koszul,
    same_cdga,
    verify_cdga,
    verify_module,
    verify_morphism,
)
from .errors import AxiomError, HypothesisError, InternalCheckError
from .graded import Element, GradedSpace, el_accumulate, el_is_zero, el_scale, el_str
from .operations import (
    as_base_morphism,
    kernel_module,
    morphism_from_images,
    quotient_cdga,
    quotient_module,
    restrict_module,
    suspend_module,
    suspend_morphism,
    sus_name,
    tensor_cdga,
    tensor_elem,
    tensor_modules,
    split_tensor_name,
)
from .scalars import ZERO, ONE


@dataclass
class ConeModel:
    """A mapping cone N ⊕_f sQ, optionally with semi-trivial CDGA structure
    and optionally truncated."""

    base: CDGA
    fiber: DGModule
    attaching: DGMorphism
    module: DGModule                      # the model (truncated if truncation_degree set)
    cdga: "CDGA | None" = None            # set when the semi-trivial structure applies
    inclusion: "DGMorphism | None" = None  # N (or A) -> model
    fiber_projection: "DGMorphism | None" = None  # full cone -> sQ
    full_module: "DGModule | None" = None  # untruncated cone when truncated
    projection: "DGMorphism | None" = None  # full cone -> truncation
    truncation_degree: "int | None" = None
    partial_up_to: "int | None" = None    # set when only a partial model (no unknotting)
    notes: list = field(default_factory=list)

    @property
    def is_semitrivial_cdga(self) -> bool:
        return self.cdga is not None

    def model_object(self):
        return self.cdga if self.cdga is not None else self.module

    def cohomology(self) -> Cohomology:
        return cohomology(self.model_object())


@dataclass
class Truncation:
    """τ^{≤N} R = R/I with its defining data."""

    source: object           # DGModule or CDGA
    bound: int
    ideal_basis: list        # homogeneous elements spanning I
    quotient: object         # DGModule or CDGA
    projection: DGMorphism


def _cone_space(nspace: GradedSpace, sqspace: GradedSpace) -> GradedSpace:
    degrees = {}
    for d in sorted(set(nspace.support()) | set(sqspace.support())):
        degrees[d] = list(nspace.basis(d)) + list(sqspace.basis(d))
    return GradedSpace(degrees)


def mapping_cone(f: DGMorphism, name: str = "", check_les: bool = True) -> ConeModel:
    """The A-dgmodule mapping cone of an A-dgmodule morphism f: Q -> N."""
    violations = verify_morphism(f)
    if violations:
        raise AxiomError("not a dgmodule morphism: " + "; ".join(str(v) for v in violations[:3]))
    Qmod = as_module(f.source)
    Nmod = as_module(f.target)
    if not same_cdga(Qmod.base, Nmod.base):
        raise AxiomError("cone endpoints live over different base algebras")
    A = Nmod.base
    sQ = suspend_module(Qmod, 1)
    space = _cone_space(Nmod.space, sQ.space)

    diff = dict(Nmod.diff)
    for q in Qmod.space.names():
        img: Element = {}
        el_accumulate(img, sQ.d_basis(sus_name(1, q)), ONE)   # already -s dq
        el_accumulate(img, f.image_basis(q), ONE)             # lands in N
        if img:
            diff[sus_name(1, q)] = img
    action = dict(Nmod.action)
    action.update(sQ.action)

    cone = DGModule(A, space, diff, action, name=name or f"C({f.name})")
    assert_valid(verify_module(cone, full=False), f"mapping cone {cone.name}")

    incl = DGMorphism(Nmod, cone, {n: {n: ONE} for n in Nmod.space.names()},
                      name=f"{Nmod.name} ↪ {cone.name}")
    proj = DGMorphism(cone, sQ,
                      {m: {m: ONE} for m in sQ.space.names()},
                      name=f"{cone.name} ↠ s{Qmod.name}")
    assert_valid(verify_morphism(incl), "cone inclusion")
    assert_valid(verify_morphism(proj), "cone fiber projection")

    out = ConeModel(base=A, fiber=Qmod, attaching=f, module=cone,
                    inclusion=incl, fiber_projection=proj)
    if check_les:
        problems = check_cone_les(out)
        if problems:
            raise InternalCheckError("cone long exact sequence fails: " + "; ".join(problems))
    return out


def _h_map_matrix(f, h_src: Cohomology, h_tgt: Cohomology, degree: int) -> linalg.Matrix:
    """Matrix of the induced map on cohomology in one degree."""
    src_names = h_src.space.basis(degree)
    tgt_dim = h_tgt.space.dim(degree)
    cols = []
    for nm in src_names:
        image_class = h_tgt.class_of(f(h_src.representative(nm)))
        cols.append(h_tgt.space.to_vector(image_class, degree))
    return linalg.Matrix.from_columns(cols, tgt_dim)


def check_cone_les(cm: ConeModel):
    """Exactness of ... -> H^i(Q) -> H^i(N) -> H^i(C) -> H^{i+1}(Q) -> ...

    Uses the explicit maps H(f), H(incl) and the connecting map read off the
    fiber projection; returns a list of human-readable failures.
    """
    f = cm.attaching
    Qmod = cm.fiber
    Nmod = as_module(f.target)
    hq = cohomology(Qmod)
    hn = cohomology(Nmod)
    hc = cohomology(cm.module)

    def connecting(degree):
        # H^degree(C) -> H^{degree+1}(Q): project to sQ, strip the suspension
        src_names = hc.space.basis(degree)
        tgt_dim = hq.space.dim(degree + 1)
        cols = []
        for nm in src_names:
            rep = hc.representative(nm)
            in_sq = cm.fiber_projection(rep)
            stripped = {q_name[len(sus_name(1, "")):]: c for q_name, c in in_sq.items()}
            cols.append(hq.space.to_vector(hq.class_of(stripped), degree + 1))
        return linalg.Matrix.from_columns(cols, tgt_dim)

    problems = []
    degrees = sorted(set(hq.space.support()) | set(hn.space.support()) | set(hc.space.support()))
    if not degrees:
        return problems
    lo, hi = degrees[0] - 1, degrees[-1] + 1
    for i in range(lo, hi + 1):
        mf = _h_map_matrix(f, hq, hn, i)
        mi = _h_map_matrix(cm.inclusion, hn, hc, i)
        md = connecting(i)
        mf_next = _h_map_matrix(f, hq, hn, i + 1)
        md_prev = connecting(i - 1)
        # exactness at H^i(Q): im(∂_{i-1}) = ker(H(f)_i)
        if linalg.rank(md_prev) != hq.space.dim(i) - linalg.rank(mf) or \
                any(any(x != 0 for x in col) for col in linalg.matmul(mf, md_prev).columns()):
            problems.append(f"exactness fails at H^{i}(Q)")
        # exactness at H^i(N): im(H(f)) = ker(H(incl))
        if linalg.rank(mf) != hn.space.dim(i) - linalg.rank(mi) or \
                any(any(x != 0 for x in col) for col in linalg.matmul(mi, mf).columns()):
            problems.append(f"exactness fails at H^{i}(N)")
        # exactness at H^i(C): im(H(incl)) = ker(∂_i)
        if linalg.rank(mi) != hc.space.dim(i) - linalg.rank(md) or \
                any(any(x != 0 for x in col) for col in linalg.matmul(md, mi).columns()):
            problems.append(f"exactness fails at H^{i}(C)")
    return problems


def homotopy_kernel(f: DGMorphism, name: str = "", check_quasi_iso: bool = True):
    """hoker f = s^{-1}N ⊕_{s^{-1}f} M with its projection to M.

    For surjective f the inclusion ker f -> hoker f, m -> (0, m), is checked
    to be a quasi-isomorphism.  Returns (ConeModel, to_M).
    """
    Mmod = as_module(f.source)
    Nmod = as_module(f.target)
    sM = suspend_module(Mmod, -1)
    sN = suspend_module(Nmod, -1)
    sf = suspend_morphism(f, -1, source=sM, target=sN)
    cone = mapping_cone(sf, name=name or f"hoker {f.name}", check_les=False)

    to_m_images = {}
    for m in Mmod.space.names():
        to_m_images[sus_name(1, sus_name(-1, m))] = {m: ONE}
    to_m = morphism_from_images(cone.module, Mmod, to_m_images, name=f"hoker {f.name} → M")

    if check_quasi_iso and f.is_surjective():
        K, incl = kernel_module(f)
        images = {k: {sus_name(1, sus_name(-1, m)): c for m, c in incl.image_basis(k).items()}
                  for k in K.space.names()}
        into_hoker = morphism_from_images(K, cone.module, images, name="ker → hoker")
        hk = cohomology(K)
        hh = cohomology(cone.module)
        for degree in sorted(set(hk.space.support()) | set(hh.space.support())):
            m = _h_map_matrix(into_hoker, hk, hh, degree)
            if hk.space.dim(degree) != hh.space.dim(degree) or \
                    linalg.rank(m) != hh.space.dim(degree):
                raise InternalCheckError(
                    f"ker → hoker is not a quasi-isomorphism in degree {degree}")
    return cone, to_m


def is_balanced(f: DGMorphism):
    """Does f: Q -> A satisfy f(x)y = xf(y) on all basis pairs?

    Returns (flag, witness) where witness is a violating (x, y) pair or None.
    """
    Qmod = as_module(f.source)
    qdeg = Qmod.space.degree_of
    for x in Qmod.space.names():
        fx = f.image_basis(x)
        for y in Qmod.space.names():
            lhs = Qmod.act(fx, {y: ONE})
            rhs = el_scale(Qmod.act(f.image_basis(y), {x: ONE}), koszul(qdeg[x], qdeg[y]))
            defect = {k: lhs.get(k, ZERO) - rhs.get(k, ZERO) for k in set(lhs) | set(rhs)}
            if not el_is_zero(defect):
                return False, (x, y)
    return True, None


def _semi_trivial_products(A: CDGA, cone_module: DGModule, s_names):
    """The unique CGA table on A ⊕ sQ extending A, A-linear on sQ, with
    (sq)(sq') = 0."""
    products = {}
    products.update(A.products)
    adeg = A.space.degree_of
    cdeg = cone_module.space.degree_of
    for a in A.space.names():
        for s in s_names:
            val = cone_module.act_basis(a, s)
            if val:
                products[(a, s)] = val
                flipped = el_scale(val, koszul(adeg[a], cdeg[s]))
                products[(s, a)] = flipped
    # products of two suspended elements vanish (omitted entries are zero)
    return products


def _target_algebra(f: DGMorphism) -> CDGA:
    """The base algebra when f's target is A, either as a CDGA or as the
    module A-over-itself; raises otherwise."""
    if isinstance(f.target, CDGA):
        return f.target
    base = f.target.base
    if f.target.space == base.space and f.target.action == base.as_module().action:
        return base
    raise AxiomError("semi-trivial structure needs the base algebra as target")


def semi_trivial_cga(f: DGMorphism, name: str = "", check_les: bool = True):
    """The semi-trivial CGA on A ⊕_f sQ *without* asserting the Leibniz rule
    (which holds iff f is balanced).  Returns (cga, cone_model)."""
    A = _target_algebra(f)
    cm = mapping_cone(f, name=name, check_les=check_les)
    s_names = [sus_name(1, q) for q in cm.fiber.space.names()]
    products = _semi_trivial_products(A, cm.module, s_names)
    cga = CDGA(cm.module.space, A.unit, products, cm.module.diff,
               name=name or f"A⊕s{cm.fiber.name}", fill=False)
    return cga, cm


def semi_trivial_cone(f: DGMorphism, name: str = "", check_les: bool = True) -> ConeModel:
    """The CDGA A ⊕_f sQ for a balanced A-dgmodule morphism f: Q -> A."""
    A = _target_algebra(f)
    flag, witness = is_balanced(f)
    if not flag:
        raise HypothesisError(f"balanced condition fails: f(x)y != xf(y) at {witness}")
    cone_cdga, cm = semi_trivial_cga(f, name=name, check_les=check_les)
    assert_valid(verify_cdga(cone_cdga, full=False), f"semi-trivial cone {cone_cdga.name}")
    incl = morphism_from_images(A, cone_cdga,
                                {a: {a: ONE} for a in A.space.names()},
                                multiplicative=True, name=f"{A.name} → {cone_cdga.name}")
    cm.cdga = cone_cdga
    cm.inclusion = incl
    cm.module = cone_cdga.as_module()
    return cm


def truncate(R, N: int, name: str = "") -> Truncation:
    """A truncation below degree N: R/I with I^{<N}=0, I^{>N}=R^{>N} and
    I^N a deterministic complement of ker d ∩ R^N.

    R is a CDGA (must be connected) or a DGModule (its base must be
    connected).  H^i(projection) is checked to be an isomorphism for i ≤ N.
    """
    is_algebra = isinstance(R, CDGA)
    base = R if is_algebra else R.base
    if not base.is_connected():
        raise AxiomError("truncation ideal need not be stable: base algebra is not connected")
    if N < 0:
        raise HypothesisError("truncation below degree 0 would kill the unit")
    mod = as_module(R)
    space = mod.space

    ideal = []
    for d in space.support():
        if d > N:
            ideal.extend({nm: ONE} for nm in space.basis(d))
    if space.dim(N):
        kernel, _ = linalg.kernel_and_image(_d_matrix(mod, N))
        comp = linalg.complement_in(kernel, space.dim(N))
        ideal.extend(space.from_vector(v, N) for v in comp)

    if is_algebra:
        quotient, pi = quotient_cdga(R, ideal, name=name or f"τ≤{N} {R.name}")
    else:
        quotient, pi = quotient_module(R, ideal, name=name or f"τ≤{N} {R.name}")

    qspace = quotient.space
    if qspace.max_degree() is not None and qspace.max_degree() > N:
        raise InternalCheckError("truncation left classes above the bound")
    h_src = cohomology(mod)
    h_tgt = cohomology(quotient)
    for i in [d for d in range(min(space.support() or [0]), N + 1)]:
        m = _h_map_matrix(pi, h_src, h_tgt, i)
        if h_src.space.dim(i) != h_tgt.space.dim(i) or linalg.rank(m) != h_tgt.space.dim(i):
            raise InternalCheckError(f"H^{i}(π) is not an isomorphism")
    if any(h_tgt.space.dim(d) for d in h_tgt.space.support() if d > N):
        raise InternalCheckError("truncation has cohomology above the bound")
    return Truncation(source=R, bound=N, ideal_basis=ideal, quotient=quotient, projection=pi)


def truncated_semitrivial_cone(f: DGMorphism, N: int, p: "int | None" = None,
                               name: str = "") -> ConeModel:
    """τ^{≤N}(A ⊕_f sQ) with its inherited CDGA structure.

    Needs A connected, Q^{<p} = 0 and N ≤ 2p-3; balancedness of f is NOT
    required (products of two suspended elements land above the bound).  The
    truncated object is fully re-verified; a failure would mean the degree
    window argument broke and raises InternalCheckError.
    """
    A = _target_algebra(f)
    if not A.is_connected():
        raise AxiomError("truncated cone needs a connected base algebra")
    Qmod = as_module(f.source)
    min_q = Qmod.space.min_degree()
    if p is None:
        p = min_q if min_q is not None else N + 2  # empty Q: any window works
    elif min_q is not None and min_q < p:
        raise HypothesisError(f"connectivity bound false: Q^{{<{p}}} != 0 (degree {min_q})")
    if N > 2 * p - 3:
        raise HypothesisError(f"degree window violated: N = {N} > 2p-3 = {2 * p - 3}")

    # the full cone is only a CGA here; Leibniz is not asserted on it
    full_cga, cm = semi_trivial_cga(f, name=f"C({f.name})", check_les=False)
    trunc = truncate(full_cga, N, name=name or f"τ≤{N}C({f.name})")
    model = trunc.quotient
    bad = verify_cdga(model, full=True)
    if bad:
        raise InternalCheckError(
            "truncated cone violates CDGA axioms although N ≤ 2p-3: "
            + "; ".join(str(v) for v in bad[:3]))
    incl = compose(trunc.projection,
                   DGMorphism(A, full_cga, {a: {a: ONE} for a in A.space.names()},
                              multiplicative=True),
                   name=f"{A.name} → {model.name}")
    incl.multiplicative = True
    assert_valid(verify_morphism(incl), "inclusion into truncated cone")
    cm.full_module = cm.module
    cm.module = model.as_module()
    cm.cdga = model
    cm.inclusion = incl
    cm.projection = trunc.projection
    cm.truncation_degree = N
    return cm


@dataclass
class SquareModel:
    """The §-style model of the diagonal square: (B⊗B)/(ker β ⊗ ker β) with
    its projection α, the induced μ̃, the multiplication μ, and the kernel
    multiplication μ̄ exposed for dimension cross-checks."""

    beta: DGMorphism
    tensor_square: CDGA        # B⊗B
    quotient: CDGA             # (B⊗B)/(ker β ⊗ ker β)
    alpha: DGMorphism          # B⊗B -> quotient
    mu: DGMorphism             # B⊗B -> B
    mu_tilde: DGMorphism       # quotient -> ∂B
    kernel: DGModule           # ker β as a B-dgmodule
    kernel_inclusion: DGMorphism
    kernel_square: DGModule    # ker β ⊗ ker β over B⊗B
    mubar: DGMorphism          # ker β ⊗ ker β -> ker β (over B⊗B)


def square_model(beta: DGMorphism, name: str = "") -> SquareModel:
    """Quotient model of the diagonal square for a surjective CDGA model
    β: B ↠ ∂B, with the pullback property checked degree by degree."""
    if not (isinstance(beta.source, CDGA) and isinstance(beta.target, CDGA)):
        raise AxiomError("square model needs a CDGA morphism")
    if not beta.multiplicative:
        raise AxiomError("square model needs a multiplicative morphism")
    assert_valid(verify_morphism(beta), "square model input")
    if not beta.is_surjective():
        raise HypothesisError("square model needs a surjective morphism")
    B = beta.source
    dB = beta.target

    BB = tensor_cdga(B, B, name=f"{B.name}⊗{B.name}")
    beta_mod = as_base_morphism(beta)
    K, K_incl = kernel_module(beta_mod, name=f"ker {beta.name}")
    kernel_by_degree = {d: [K_incl.image_basis(k) for k in K.space.basis(d)]
                        for d in K.space.support()}
    ideal = []
    for d1, us in kernel_by_degree.items():
        for u in us:
            for d2, vs in kernel_by_degree.items():
                for v in vs:
                    ideal.append(tensor_elem(u, v))
    quotient, alpha = quotient_cdga(BB, ideal, name=name or f"({B.name}⊗{B.name})/K⊗K")

    mu = morphism_from_images(
        BB, B, {nm: B.mul_basis(*split_tensor_name(nm)) for nm in BB.space.names()},
        multiplicative=True, name="μ")
    mu_tilde_images = {}
    for nm in quotient.space.names():
        x, y = split_tensor_name(nm)
        mu_tilde_images[nm] = dB.mul(beta.image_basis(x), beta.image_basis(y))
    mu_tilde = morphism_from_images(quotient, dB, mu_tilde_images,
                                    multiplicative=True, name="μ̃")
    # the square commutes: μ̃ ∘ α = β ∘ μ
    for nm in BB.space.names():
        lhs = mu_tilde(alpha.image_basis(nm))
        rhs = beta(mu.image_basis(nm))
        if not el_is_zero({k: lhs.get(k, ZERO) - rhs.get(k, ZERO) for k in set(lhs) | set(rhs)}):
            raise InternalCheckError(f"μ̃∘α != β∘μ at {nm}")

    _check_pullback(beta, BB, quotient, alpha)

    kernel_square = tensor_modules(K, K, base=BB, name="kerβ⊗kerβ")
    K_over_BB = restrict_module(K, mu, name="kerβ over B⊗B")
    mubar_images = {}
    for nm in kernel_square.space.names():
        k1, k2 = split_tensor_name(nm)
        prod = B.mul(K_incl.image_basis(k1), K_incl.image_basis(k2))
        mubar_images[nm] = _coords_in_kernel(K, K_incl, prod, B)
    mubar = morphism_from_images(kernel_square, K_over_BB, mubar_images, name="μ̄")

    return SquareModel(beta=beta, tensor_square=BB, quotient=quotient, alpha=alpha,
                       mu=mu, mu_tilde=mu_tilde, kernel=K, kernel_inclusion=K_incl,
                       kernel_square=kernel_square, mubar=mubar)


def _coords_in_kernel(K: DGModule, K_incl: DGMorphism, elem: Element, B: CDGA) -> Element:
    if el_is_zero(elem):
        return {}
    degree = B.space.element_degree(elem)
    names = K.space.basis(degree)
    if not names:
        raise InternalCheckError(f"kernel product escapes the kernel: {el_str(elem)}")
    cols = [B.space.to_vector(K_incl.image_basis(k), degree) for k in names]
    sol = linalg.solve(linalg.Matrix.from_columns(cols, B.space.dim(degree)),
                       B.space.to_vector(elem, degree))
    if sol is None:
        raise InternalCheckError(f"kernel product escapes the kernel: {el_str(elem)}")
    return {names[i]: sol[i] for i in range(len(names)) if sol[i] != 0}


def _check_pullback(beta: DGMorphism, BB: CDGA, quotient: CDGA, alpha: DGMorphism):
    """Lemma-style pullback check: quotient ≅ (B⊗∂B) ×_{∂B⊗∂B} (∂B⊗B)."""
    B = beta.source
    dB = beta.target
    B_dB = tensor_cdga(B, dB, name="B⊗∂B")
    dB_B = tensor_cdga(dB, B, name="∂B⊗B")
    dB_dB = tensor_cdga(dB, dB, name="∂B⊗∂B")
    ident_B = DGMorphism(B, B, {n: {n: ONE} for n in B.space.names()}, multiplicative=True)
    ident_dB = DGMorphism(dB, dB, {n: {n: ONE} for n in dB.space.names()}, multiplicative=True)
    from .operations import tensor_cdga_morphisms
    id_beta = tensor_cdga_morphisms(ident_B, beta, BB, B_dB, name="id⊗β")
    beta_id = tensor_cdga_morphisms(beta, ident_B, BB, dB_B, name="β⊗id")
    beta_id_r = tensor_cdga_morphisms(beta, ident_dB, B_dB, dB_dB, name="β⊗id")
    id_beta_r = tensor_cdga_morphisms(ident_dB, beta, dB_B, dB_dB, name="id⊗β")

    for degree in sorted(set(BB.space.support()) | set(B_dB.space.support())
                         | set(dB_B.space.support())):
        n1 = B_dB.space.dim(degree)
        n2 = dB_B.space.dim(degree)
        n3 = dB_dB.space.dim(degree)
        m1 = beta_id_r.matrix(degree)   # B⊗∂B -> ∂B⊗∂B
        m2 = id_beta_r.matrix(degree)   # ∂B⊗B -> ∂B⊗∂B
        diff_map = linalg.Matrix.zero(n3, n1 + n2)
        for i in range(n3):
            for j in range(n1):
                diff_map.entries[i][j] = m1.entries[i][j]
            for j in range(n2):
                diff_map.entries[i][n1 + j] = -m2.entries[i][j]
        fiber_dim = n1 + n2 - linalg.rank(diff_map)
        # the canonical map from the quotient into the product
        qdim = quotient.space.dim(degree)
        cols = []
        for nm in quotient.space.basis(degree):
            # quotient basis names are BB names by construction
            x1 = B_dB.space.to_vector(id_beta.image_basis(nm), degree)
            x2 = dB_B.space.to_vector(beta_id.image_basis(nm), degree)
            cols.append(tuple(list(x1) + list(x2)))
        if qdim != fiber_dim:
            raise InternalCheckError(
                f"quotient is not the pullback in degree {degree}: dims {qdim} vs {fiber_dim}")
        if cols and linalg.rank(linalg.Matrix.from_columns(cols, n1 + n2)) != qdim:
            raise InternalCheckError(f"quotient → pullback not injective in degree {degree}")
        # image lies inside the fiber product
        for c in cols:
            if any(x != 0 for x in diff_map.apply(c)):
                raise InternalCheckError(f"quotient image misses the fiber product in degree {degree}")
