"""The headline constructions: CDGA models of complements W∖K and of
two-point configuration spaces Conf(W,2).

Complements: A → τ^{≤n-r-1}(C(φ!)) under the unknotting inequality
r ≥ 2k-n+2, with the partial model truncated at 2(n-k)-3 as the fallback.

Conf(W,2): the general truncated cone over δ!, the pretty-model cone
(P/I ⊗ P/I) ⊕_{Δ̄!} ss^{-n}(P/I), the even-rank disk-bundle model driven by
Δ_Q·(1⊗e), and punctured closed manifolds.  Where a theorem hypothesis is
not machine-checkable (weak equivalences, 2-connectedness of the actual
manifold) it is recorded in hypotheses_assumed rather than silently trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    CDGA,
    DGModule,
    DGMorphism,
    as_module,
    assert_valid,
    cohomology,
    verify_cdga,
    verify_morphism,
)
from .cones import (
    ConeModel,
    semi_trivial_cone,
    square_model,
    truncated_semitrivial_cone,
)
from .duality import (
    PDAlgebra,
    PrettyModel,
    diagonal_class,
    pretty_model,
    truncated_diagonal_shriek,
    verify_pd,
)
from .errors import AxiomError, HypothesisError, InternalCheckError
from .graded import Element, GradedSpace, el_is_zero
from .operations import (
    dual_shift,
    morphism_from_images,
    restrict_module,
    split_tensor_name,
    suspend_module,
    sus_name,
    tensor_cdga,
    tensor_elem,
)
from .scalars import Q as Rat
from .scalars import ONE


@dataclass
class ComplementInput:
    """Data for the complement model: a connected model A of W, a fiber
    module Q with Q^{<n-k} = 0, the wrong-way map φ!: Q → A, the dimensions
    and the connectivity r of the pair inclusions (caller-asserted)."""

    ambient: CDGA
    fiber: DGModule
    shriek: DGMorphism
    manifold_dim: int
    subpolyhedron_dim: int
    connectivity: int


def complement_model(inp: ComplementInput) -> ConeModel:
    """A → τ^{≤n-r-1}(C(φ!)) when r ≥ 2k-n+2; otherwise the partial model
    truncated at N = 2(n-k)-3, flagged as a model only up to that degree."""
    A = inp.ambient
    n, k, r = inp.manifold_dim, inp.subpolyhedron_dim, inp.connectivity
    if not A.is_connected():
        raise AxiomError("complement model needs a connected ambient algebra")
    codim_bound = n - k
    min_q = inp.fiber.space.min_degree()
    if min_q is not None and min_q < codim_bound:
        raise HypothesisError(
            f"fiber must vanish below degree n-k = {codim_bound}, found degree {min_q}")
    if 2 * codim_bound - 3 < 0:
        raise HypothesisError("codimension too small: 2(n-k)-3 < 0")

    unknotted = r >= 2 * k - n + 2
    if unknotted:
        bound = n - r - 1
        if bound < 0:
            raise HypothesisError(
                f"connectivity r = {r} truncates below degree 0; no model this far")
        if bound > 2 * codim_bound - 3:
            raise InternalCheckError("unknotting arithmetic violated the degree window")
    else:
        bound = 2 * codim_bound - 3

    cone = truncated_semitrivial_cone(inp.shriek, bound, p=codim_bound)
    if not unknotted:
        cone.partial_up_to = bound
        cone.notes.append(
            f"unknotting condition r ≥ 2k-n+2 fails (r={r}, k={k}, n={n}): "
            f"model only up to degree {bound}")
    cone.notes.append(f"inclusions assumed {r}-connected (caller-asserted)")
    return cone


@dataclass
class Conf2Model:
    """A CDGA model of Conf(W,2): the ambient tensor square, the cone, and
    the multiplicative inclusion."""

    ambient: CDGA
    cone: ConeModel
    inclusion: DGMorphism
    hypotheses_assumed: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def cohomology(self):
        return self.cone.cohomology()

    def betti(self, max_degree=None):
        return self.cohomology().betti(max_degree)


def _finalize(model: Conf2Model) -> Conf2Model:
    assert_valid(verify_cdga(model.cone.cdga, full=True), "Conf2 model")
    assert_valid(verify_morphism(model.inclusion), "Conf2 inclusion")
    return model


def conf2_general(beta: DGMorphism, delta_shriek: DGMorphism, n: int,
                  truncate_at: "int | None" = None) -> Conf2Model:
    """B⊗B → τ^{≤2n-3}C(δ!) for a surjective model β: B ↠ ∂B and a
    B⊗B-dgmodule morphism δ!: D → B⊗B with D^{<n} = 0.

    The kernel multiplication μ̄ from the square model is computed and the
    checkable necessary conditions for 'δ! weakly equivalent to s^{-2n}#μ̄'
    are enforced: cohomology of D matches s^{-2n}#ker β and cohomology of
    B⊗B matches s^{-2n}#(ker β ⊗ ker β), degree by degree.  Full weak
    equivalence remains the caller's responsibility and is recorded.
    """
    if not beta.multiplicative or not isinstance(beta.source, CDGA):
        raise AxiomError("conf2_general needs a multiplicative CDGA morphism β")
    if not beta.is_surjective():
        raise HypothesisError("β must be surjective")
    D = as_module(delta_shriek.source)
    min_d = D.space.min_degree()
    if min_d is not None and min_d < n:
        raise HypothesisError(f"D^{{<{n}}} != 0 (degree {min_d})")
    assert_valid(verify_morphism(delta_shriek), "δ!")
    ambient = delta_shriek.target if isinstance(delta_shriek.target, CDGA) \
        else delta_shriek.target.base

    bound = 2 * n - 3 if truncate_at is None else truncate_at
    cone = truncated_semitrivial_cone(delta_shriek, bound, p=n)

    # checkable necessary conditions for "δ! ≃ s^{-2n}#μ̄" (the ambient may be
    # any quasi-isomorphic replacement of B⊗B)
    sq = square_model(beta)
    dual_kernel = dual_shift(sq.kernel, -2 * n)
    dual_kernel_square = dual_shift(sq.kernel_square, -2 * n)
    h_pairs = [
        ("D vs s^{-2n}#ker β", cohomology(D), cohomology(dual_kernel)),
        ("ambient vs s^{-2n}#(ker β⊗ker β)", cohomology(ambient),
         cohomology(dual_kernel_square)),
    ]
    for label, h1, h2 in h_pairs:
        degrees = sorted(set(h1.space.support()) | set(h2.space.support()))
        bad = [d for d in degrees if h1.space.dim(d) != h2.space.dim(d)]
        if bad:
            raise HypothesisError(
                f"necessary condition fails ({label}): cohomology differs in degrees {bad}")

    model = Conf2Model(
        ambient=ambient,
        cone=cone,
        inclusion=cone.inclusion,
        hypotheses_assumed=[
            "W and ∂W are 2-connected (recorded, not checkable from the algebra)",
            "δ! is weakly equivalent to s^{-2n}#μ̄ (only the dimension-wise "
            "necessary conditions were verified)",
        ],
        extras={"square_model": sq, "mubar": sq.mubar})
    return _finalize(model)


def conf2_pretty(pm: PrettyModel, force_truncation: bool = False) -> Conf2Model:
    """(P/I ⊗ P/I) ⊕_{Δ̄!} ss^{-n}(P/I), untruncated by default (the
    projection to τ^{≤2n-3} is a quasi-isomorphism for degree reasons)."""
    if not pm.surjective:
        raise HypothesisError("conf2_pretty needs a surjective pretty model")
    n = pm.pd.formal_dim
    delta_bar, shriek_map, pipi = truncated_diagonal_shriek(pm)
    if force_truncation:
        cone = truncated_semitrivial_cone(shriek_map, 2 * n - 3, name="Conf2 pretty (truncated)")
    else:
        cone = semi_trivial_cone(shriek_map, name="Conf2 pretty", check_les=False)
    model = Conf2Model(
        ambient=pipi,
        cone=cone,
        inclusion=cone.inclusion,
        hypotheses_assumed=list(pm.hypotheses_assumed) + [
            "W and ∂W are 2-connected (recorded, not checkable from the algebra)",
        ],
        extras={"pretty_model": pm, "truncated_diagonal": delta_bar})
    return _finalize(model)


def _z_name(q: str, unit: str) -> str:
    return "z̄" if q == unit else f"{q}·z̄"


def disk_bundle_algebra(base_pd: PDAlgebra, euler: Element, rank: int):
    """P = (Q ⊗ ∧z̄)/(z̄² - e z̄) with dz̄ = 0, oriented by -ωz̄, and the
    projection φ(q₁ + q₂z̄) = q₁ + q₂e.  Returns (P as PDAlgebra, φ)."""
    Qalg = base_pd.algebra
    m = base_pd.formal_dim
    if rank % 2 != 0:
        raise HypothesisError("rank must be even")
    if rank < 4:
        raise HypothesisError("rank must be at least 4 (2k ≥ 4)")
    two_k = rank
    euler = {k: Rat(v) for k, v in euler.items() if Rat(v) != 0}
    for nm in euler:
        if Qalg.space.degree_of.get(nm) != two_k:
            raise HypothesisError(f"Euler class must have degree {two_k}, got {nm!r}")
    if not el_is_zero(Qalg.d(euler)):
        raise HypothesisError("Euler class must be a cocycle")

    unit = Qalg.unit
    degrees = {}
    for d in Qalg.space.support():
        degrees.setdefault(d, [])
        degrees[d].extend(Qalg.space.basis(d))
    for d in Qalg.space.support():
        degrees.setdefault(d + two_k, [])
        degrees[d + two_k].extend(_z_name(q, unit) for q in Qalg.space.basis(d))
    space = GradedSpace(degrees)

    def z_part(e: Element) -> Element:
        return {_z_name(q, unit): c for q, c in e.items()}

    products = {}
    for q1 in Qalg.space.names():
        for q2 in Qalg.space.names():
            plain = Qalg.mul_basis(q1, q2)
            if plain:
                products[(q1, q2)] = dict(plain)
            # q1 · q2z̄ = (q1q2)z̄  (z̄ has even degree: no Koszul signs)
            if plain:
                products[(q1, _z_name(q2, unit))] = z_part(plain)
                products[(_z_name(q1, unit), q2)] = z_part(plain)
            # q1z̄ · q2z̄ = (q1q2 e)z̄
            with_e = Qalg.mul(plain, euler) if plain else {}
            if with_e:
                products[(_z_name(q1, unit), _z_name(q2, unit))] = z_part(with_e)
    diff = {}
    for q in Qalg.space.names():
        dq = Qalg.d_basis(q)
        if dq:
            diff[q] = dict(dq)
            diff[_z_name(q, unit)] = z_part(dq)
    P = CDGA(space, unit, products, diff, name=f"{Qalg.name}⊗∧z̄/(z̄²-ez̄)", fill=False)
    assert_valid(verify_cdga(P, full=True), "disk bundle algebra")

    n = m + two_k
    orientation = {_z_name(q, unit): -base_pd.orientation[q]
                   for q in Qalg.space.basis(m) if q in base_pd.orientation}
    pd = verify_pd(P, n, orientation)

    phi_images = {}
    for q in Qalg.space.names():
        phi_images[q] = {q: ONE}
        val = Qalg.mul({q: ONE}, euler)
        if val:
            phi_images[_z_name(q, unit)] = val
    phi = morphism_from_images(P, Qalg, phi_images, multiplicative=True, name="φ")
    return pd, phi


def _cdga_tables_equal(a: CDGA, b: CDGA) -> bool:
    if a.space != b.space or a.unit != b.unit:
        return False
    for x in a.space.names():
        if a.d_basis(x) != b.d_basis(x):
            return False
        for y in a.space.names():
            if a.mul_basis(x, y) != b.mul_basis(x, y):
                return False
    return True


def conf2_disk_bundle(base_pd: PDAlgebra, euler: Element, rank: int,
                      check_two_pipelines: bool = True) -> Conf2Model:
    """Q⊗Q ⊕_{(Δ_Q·(1⊗e))!} ss^{-(m+2k)}Q for an even-rank disk bundle.

    Builds the model twice: through the pretty model of P = Q⊗∧z̄/(z̄²-ez̄)
    and directly from Δ_Q·(1⊗e); the two inner cones must agree on the nose
    (structure constants included) after the canonical P/I ≅ Q matching.
    """
    Qalg = base_pd.algebra
    m = base_pd.formal_dim
    n = m + rank
    pd_P, phi = disk_bundle_algebra(base_pd, euler, rank)
    pm = pretty_model(pd_P, Qalg, phi)
    pretty = conf2_pretty(pm)

    # direct route: cone over s^{-n}q -> Δ_Q·(1⊗ e q)
    qq = tensor_cdga(Qalg, Qalg, name=f"{Qalg.name}⊗{Qalg.name}")
    delta_q = diagonal_class(base_pd, tensor_square=qq)
    mu = morphism_from_images(
        qq, Qalg, {nm: Qalg.mul_basis(*split_tensor_name(nm)) for nm in qq.space.names()},
        multiplicative=True, name="μ")
    fiber = suspend_module(restrict_module(Qalg.as_module(), mu), -n,
                           name=f"s-{n}{Qalg.name}")
    images = {}
    for q in Qalg.space.names():
        eq = Qalg.mul(euler, {q: ONE})
        val = qq.mul(delta_q.element, tensor_elem(Qalg.unit_element(), eq))
        if val:
            images[sus_name(-n, q)] = val
    attach = DGMorphism(fiber, qq, images, name="(Δ_Q·(1⊗e))!")
    assert_valid(verify_morphism(attach), "(Δ_Q·(1⊗e))! is not a Q⊗Q-dgmodule morphism")
    direct = semi_trivial_cone(attach, name="Conf2 disk bundle", check_les=False)

    if check_two_pipelines and not _cdga_tables_equal(pretty.cone.cdga, direct.cdga):
        raise InternalCheckError(
            "pretty-model route and direct Δ_Q·(1⊗e) route disagree")

    model = Conf2Model(
        ambient=qq,
        cone=direct,
        inclusion=direct.inclusion,
        hypotheses_assumed=[
            "the bundle base is a 2-connected closed manifold with this PD model",
        ],
        extras={"pretty_model": pm, "pretty_route": pretty,
                "diagonal": delta_q.element, "euler": dict(euler)})
    return _finalize(model)


def conf2_punctured(pd: PDAlgebra) -> Conf2Model:
    """(P̄ ⊗ P̄) ⊕_{Δ̄!} ss^{-n} P̄ with P̄ = P/(Q·ω) for a punctured closed
    manifold; P must vanish in degrees 1 and 2."""
    P = pd.algebra
    for d in (1, 2):
        if P.space.dim(d):
            raise HypothesisError(
                f"P^{d} != 0: the punctured model needs a 2-connected manifold model")
    point = CDGA(GradedSpace({0: [P.unit]}), P.unit, {}, {}, name="Q")
    aug = morphism_from_images(P, point, {P.unit: {P.unit: ONE}},
                               multiplicative=True, name="aug")
    pm = pretty_model(pd, point, aug)
    # the ideal must be exactly Q·ω
    ideal_span = [e for e in pm.ideal if e]
    if len(ideal_span) != 1 or set(ideal_span[0]) != set(pd.omega):
        raise InternalCheckError("punctured ideal is not Q·ω")
    model = conf2_pretty(pm)
    model.hypotheses_assumed.append("the closed manifold itself is 2-connected")
    return model
