"""Poincaré duality CDGAs and the wrong-way machinery built on them:
orientation pairings, dual bases, diagonal classes, θ, shriek maps, pretty
models, the ideal I, the truncated diagonal and its shriek.

θ(α) = s^{-n}(β ↦ ε(αβ)) is an honest P-dgmodule isomorphism under the
package's sign conventions (the two Koszul twists in the dual and the
suspension cancel); every constructed map is re-verified, never trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import (
    CDGA,
    DGModule,
    DGMorphism,
    assert_valid,
    compose,
    koszul,
    verify_cdga,
    verify_morphism,
)
from .cones import ConeModel, is_balanced, semi_trivial_cone, square_model
from .errors import AxiomError, HypothesisError, InternalCheckError
from .graded import Element, el_accumulate, el_is_zero, el_scale, el_str
from .operations import (
    dual_name,
    dual_shift,
    dual_shift_morphism,
    morphism_from_images,
    quotient_cdga,
    restrict_module,
    split_tensor_name,
    suspend_module,
    sus_name,
    tensor_cdga,
    tensor_elem,
    tensor_name,
)
from .scalars import Q as Rat
from .scalars import ZERO, ONE


@dataclass
class PDAlgebra:
    """A connected CDGA with formal dimension n and orientation ε: P^n → Q
    inducing nondegenerate pairings ε(ab)."""

    algebra: CDGA
    formal_dim: int
    orientation: dict            # functional on the degree-n basis
    pairings: dict               # degree k -> Matrix of ε(a_i b_j)
    omega: Element               # fundamental class, ε(ω) = 1

    def eps(self, e: Element):
        """Evaluate the orientation on (the top-degree part of) an element."""
        total = ZERO
        for name, c in e.items():
            if self.algebra.space.degree_of[name] == self.formal_dim:
                total += self.orientation.get(name, ZERO) * c
        return total


def verify_pd(P: CDGA, n: int, orientation) -> PDAlgebra:
    """Check the duality axioms and return the PDAlgebra with its pairing
    matrices; raises AxiomError naming the offending degree otherwise."""
    if not P.is_connected():
        raise AxiomError("Poincaré duality needs a connected CDGA")
    space = P.space
    if space.max_degree() is not None and space.max_degree() > n:
        raise AxiomError(f"P^{{>{n}}} != 0 (degree {space.max_degree()})")
    if space.dim(n) == 0:
        raise AxiomError(f"no classes in the formal dimension {n}")
    eps = {k: Rat(v) for k, v in orientation.items() if Rat(v) != 0}
    for name in eps:
        if space.degree_of.get(name) != n:
            raise AxiomError(f"orientation must live on degree {n}, got {name!r}")
    if not eps:
        raise AxiomError("orientation functional is zero")

    def pair(e: Element):
        return sum((eps.get(nm, ZERO) * c for nm, c in e.items()
                    if space.degree_of[nm] == n), ZERO)

    for x in space.basis(n - 1):
        if pair(P.d_basis(x)) != 0:
            raise AxiomError(f"orientation does not vanish on exact classes (d{x})")

    pairings = {}
    for k in space.support():
        rows = space.basis(k)
        cols = space.basis(n - k)
        if len(rows) != len(cols):
            raise AxiomError(f"dim P^{k} = {len(rows)} != dim P^{n - k} = {len(cols)}")
        m = linalg.Matrix.zero(len(rows), len(cols))
        for i, a in enumerate(rows):
            for j, b in enumerate(cols):
                m.entries[i][j] = pair(P.mul_basis(a, b))
        if linalg.rank(m) != len(rows):
            raise AxiomError(f"degenerate pairing in degree {k}")
        pairings[k] = m

    top = space.basis(n)[0]
    scale = eps.get(top, ZERO)
    omega = {top: ONE / scale}
    return PDAlgebra(algebra=P, formal_dim=n, orientation=eps, pairings=pairings, omega=omega)


def dual_basis(pd: PDAlgebra) -> dict:
    """{a_i*} with ε(a_i a_j*) = δ_ij exactly, |a_i*| = n - |a_i|."""
    P = pd.algebra
    duals = {}
    for k in P.space.support():
        names = P.space.basis(k)
        cols = P.space.basis(pd.formal_dim - k)
        inverse = linalg.invert(pd.pairings[k])
        if inverse is None:
            raise AxiomError(f"degenerate pairing in degree {k}")
        for i, a in enumerate(names):
            duals[a] = {cols[j]: inverse.entries[j][i]
                        for j in range(len(cols)) if inverse.entries[j][i] != 0}
    return duals


def dual_basis_for(pd: PDAlgebra, basis_by_degree) -> list:
    """Dual elements for an arbitrary homogeneous basis (given per degree as
    lists of Elements); returns [(degree, element, dual_element), ...]."""
    P = pd.algebra
    n = pd.formal_dim
    out = []
    for k, elems in sorted(basis_by_degree.items()):
        partners = basis_by_degree.get(n - k, [])
        if len(elems) != len(partners):
            raise AxiomError(f"basis is not graded-symmetric in degree {k}")
        if not elems:
            continue
        m = linalg.Matrix.zero(len(elems), len(partners))
        for i, a in enumerate(elems):
            for j, b in enumerate(partners):
                m.entries[i][j] = pd.eps(P.mul(a, b))
        inverse = linalg.invert(m)
        if inverse is None:
            raise AxiomError(f"chosen basis has degenerate pairing in degree {k}")
        for i, a in enumerate(elems):
            dual: Element = {}
            for j, b in enumerate(partners):
                el_accumulate(dual, b, inverse.entries[j][i])
            out.append((k, a, dual))
    return out


@dataclass
class DiagonalClass:
    """Δ = Σ (-1)^{|a_i|} a_i ⊗ a_i* in (P⊗P)^n."""

    element: Element
    tensor_square: CDGA
    basis_used: list  # [(name, dual element)]


def diagonal_class(pd: PDAlgebra, tensor_square: "CDGA | None" = None,
                   basis_by_degree=None) -> DiagonalClass:
    P = pd.algebra
    if tensor_square is None:
        tensor_square = tensor_cdga(P, P, name=f"{P.name}⊗{P.name}")
    element: Element = {}
    used = []
    if basis_by_degree is None:
        duals = dual_basis(pd)
        for a in P.space.names():
            sign = koszul(P.space.degree_of[a], 1)
            el_accumulate(element, tensor_elem({a: ONE}, duals[a]), sign)
            used.append(({a: ONE}, duals[a]))
    else:
        for degree, a, dual in dual_basis_for(pd, basis_by_degree):
            el_accumulate(element, tensor_elem(a, dual), koszul(degree, 1))
            used.append((a, dual))
    d_elem = tensor_square.d(element)
    if not el_is_zero(d_elem):
        raise InternalCheckError(f"diagonal class is not a cocycle: d∆ = {el_str(d_elem)}")
    return DiagonalClass(element=element, tensor_square=tensor_square, basis_used=used)


def theta(pd: PDAlgebra, target: "DGModule | None" = None) -> DGMorphism:
    """θ_P: P → s^{-n}#P, α ↦ s^{-n}(β ↦ ε(αβ)); a P-dgmodule isomorphism."""
    P = pd.algebra
    n = pd.formal_dim
    if target is None:
        target = dual_shift(P.as_module(), -n, name=f"s-{n}#{P.name}")
    images = {}
    for a in P.space.names():
        k = P.space.degree_of[a]
        img: Element = {}
        for b in P.space.basis(n - k):
            c = pd.eps(P.mul_basis(a, b))
            if c != 0:
                img[sus_name(-n, dual_name(b))] = c
        if img:
            images[a] = img
    out = morphism_from_images(P.as_module(), target, images, name="θ")
    return out


def theta_inverse(pd: PDAlgebra, theta_map: "DGMorphism | None" = None) -> DGMorphism:
    if theta_map is None:
        theta_map = theta(pd)
    P = pd.algebra
    images = {}
    for degree in theta_map.target_space.support():
        m = theta_map.matrix(degree)
        inverse = linalg.invert(m)
        if inverse is None:
            raise InternalCheckError(f"θ is not invertible in degree {degree}")
        for j, nm in enumerate(theta_map.target_space.basis(degree)):
            col = inverse.column(j)
            img = {P.space.basis(degree)[i]: col[i] for i in range(len(col)) if col[i] != 0}
            if img:
                images[nm] = img
    return morphism_from_images(theta_map.target, P.as_module(), images, name="θ⁻¹")


def shriek(pd: PDAlgebra, Q: CDGA, phi: DGMorphism):
    """φ! = θ_P^{-1} ∘ s^{-n}#φ : s^{-n}#Q → P, a P-dgmodule morphism.

    Returns (phi_shriek, s^{-n}#Q as a P-module).
    """
    P = pd.algebra
    n = pd.formal_dim
    if not phi.multiplicative:
        raise AxiomError("shriek needs a multiplicative morphism")
    assert_valid(verify_morphism(phi), "shriek input φ")
    q_over_p = restrict_module(Q.as_module(), phi, name=f"{Q.name} over {P.name}")
    sn_dual_q = dual_shift(q_over_p, -n, name=f"s-{n}#{Q.name}")
    theta_map = theta(pd)
    phi_as_module = DGMorphism(P.as_module(), q_over_p, phi.images, name=phi.name)
    sn_dual_phi = dual_shift_morphism(phi_as_module, -n,
                                      source=sn_dual_q, target=theta_map.target,
                                      name=f"s-{n}#φ")
    out = compose(theta_inverse(pd, theta_map), sn_dual_phi, name="φ!")
    assert_valid(verify_morphism(out), "φ! is not a P-dgmodule morphism")
    return out, sn_dual_q


@dataclass
class PrettyModel:
    """The surjective pretty model φ⊕id: P ⊕_{φ!} ss^{-n}#Q → Q ⊕_{φφ!} ss^{-n}#Q
    with its ideal I = φ!(s^{-n}#Q) and quotient P/I."""

    pd: PDAlgebra
    Q: CDGA
    phi: DGMorphism
    phi_shriek: DGMorphism
    phi_phi_shriek: DGMorphism
    B: ConeModel
    dB: ConeModel
    beta: DGMorphism
    ideal: list
    P_mod_I: CDGA
    pi: DGMorphism
    surjective: bool
    hypotheses_assumed: list = field(default_factory=list)


def pretty_model(pd: PDAlgebra, Q: CDGA, phi: DGMorphism) -> PrettyModel:
    """Build B, ∂B, β = φ⊕id, the ideal I and P/I; checks that φ! and φφ!
    are balanced (witnesses reported otherwise)."""
    P = pd.algebra
    n = pd.formal_dim
    if not Q.is_connected():
        raise AxiomError("pretty model needs a connected CDGA Q")
    phi_shriek, sn_dual_q_P = shriek(pd, Q, phi)

    flag, witness = is_balanced(phi_shriek)
    if not flag:
        raise HypothesisError(f"balanced condition fails for φ! at {witness}")
    B = semi_trivial_cone(phi_shriek, name=f"P⊕ss-{n}#Q", check_les=False)

    # the same dual as a Q-module (same basis names), and φφ! over it
    sn_dual_q_Q = dual_shift(Q.as_module(), -n, name=f"s-{n}#{Q.name} over {Q.name}")
    pps_images = {nm: phi(phi_shriek.image_basis(nm)) for nm in sn_dual_q_Q.space.names()}
    phi_phi_shriek = morphism_from_images(sn_dual_q_Q, Q.as_module(), pps_images, name="φφ!")
    flag, witness = is_balanced(phi_phi_shriek)
    if not flag:
        raise HypothesisError(f"balanced condition fails for φφ! at {witness}")
    dB = semi_trivial_cone(phi_phi_shriek, name=f"Q⊕ss-{n}#Q", check_les=False)

    beta_images = {}
    for p in P.space.names():
        beta_images[p] = phi.image_basis(p)
    for nm in sn_dual_q_P.space.names():
        beta_images[sus_name(1, nm)] = {sus_name(1, nm): ONE}
    beta = morphism_from_images(B.cdga, dB.cdga, beta_images,
                                multiplicative=True, name="β = φ⊕id")

    ideal = [phi_shriek.image_basis(nm) for nm in sn_dual_q_P.space.names()
             if phi_shriek.image_basis(nm)]
    P_mod_I, pi = quotient_cdga(P, ideal, name=f"{P.name}/I")
    assert_valid(verify_cdga(P_mod_I, full=True), "P/I")

    return PrettyModel(
        pd=pd, Q=Q, phi=phi, phi_shriek=phi_shriek, phi_phi_shriek=phi_phi_shriek,
        B=B, dB=dB, beta=beta, ideal=ideal, P_mod_I=P_mod_I, pi=pi,
        surjective=beta.is_surjective(),
        hypotheses_assumed=[
            "φ⊕id is a CDGA model of the pair (weak equivalence not machine-checkable)",
        ])


def truncated_diagonal_shriek(pm: PrettyModel):
    """Δ̄ = (π⊗π)(Δ) and Δ̄!: s^{-n}(P/I) → (P/I)⊗(P/I), s^{-n}x ↦ Δ̄·(1⊗x).

    Returns (Δ̄ element, Δ̄! morphism, (P/I)⊗(P/I)).  Module-morphism and
    balancedness failures raise InternalCheckError: with validated inputs
    they can only come from a sign-convention bug.
    """
    PI = pm.P_mod_I
    n = pm.pd.formal_dim
    pipi = tensor_cdga(PI, PI, name=f"{PI.name}⊗{PI.name}")
    delta = diagonal_class(pm.pd)
    delta_bar: Element = {}
    for nm, c in delta.element.items():
        a, b = split_tensor_name(nm)
        el_accumulate(delta_bar, tensor_elem(pm.pi.image_basis(a), pm.pi.image_basis(b)), c)

    mu_images = {nm: PI.mul_basis(*split_tensor_name(nm)) for nm in pipi.space.names()}
    mu = morphism_from_images(pipi, PI, mu_images, multiplicative=True, name="μ̄(P/I)")
    pi_over_pipi = restrict_module(PI.as_module(), mu, name=f"{PI.name} over square")
    source = suspend_module(pi_over_pipi, -n, name=f"s-{n}{PI.name}")

    images = {}
    for x in PI.space.names():
        val = pipi.mul(delta_bar, tensor_elem(PI.unit_element(), {x: ONE}))
        if val:
            images[sus_name(-n, x)] = val
    shriek_map = DGMorphism(source, pipi, images, name="Δ̄!")
    bad = verify_morphism(shriek_map)
    if bad:
        raise InternalCheckError(
            "Δ̄! is not a (P/I⊗P/I)-dgmodule morphism (sign-convention bug): "
            + "; ".join(str(v) for v in bad[:3]))
    flag, witness = is_balanced(shriek_map)
    if not flag:
        raise InternalCheckError(f"Δ̄! is not balanced at {witness} (sign-convention bug)")
    return delta_bar, shriek_map, pipi


@dataclass
class DualSquareReport:
    """Comparison of θ̄⊗θ̄ ∘ Δ̄! with s^{-2n}#μ̄ ∘ s^{-n}θ̄, degree by degree.

    verdicts[d] is 'equal', 'opposite' (exact global sign flip in that
    degree) or 'mismatch'."""

    commutes: bool
    verdicts: dict
    details: list

    def sign_discrepancies(self):
        return {d: v for d, v in self.verdicts.items() if v != "equal"}


def reduced_theta(pm: PrettyModel, kernel: DGModule, kernel_inclusion: DGMorphism,
                  target: "DGModule | None" = None) -> DGMorphism:
    """θ̄_P: P/I → s^{-n}#ker β, x̄ ↦ s^{-n}(u ↦ ε(x·u)).

    Well-definedness (ε(I · ker β) = 0) is checked explicitly.
    """
    PI = pm.P_mod_I
    P = pm.pd.algebra
    B = pm.B.cdga
    n = pm.pd.formal_dim

    def pair_with_kernel(x_elem: Element, k_name: str):
        u = kernel_inclusion.image_basis(k_name)  # element of B, zero fiber part
        product = B.mul({nm: c for nm, c in x_elem.items()}, u)
        return pm.pd.eps({nm: c for nm, c in product.items() if nm in P.space.degree_of})

    for ideal_elem in pm.ideal:
        for k_name in kernel.space.names():
            if pair_with_kernel(ideal_elem, k_name) != 0:
                raise InternalCheckError("ε(I·ker β) != 0: θ̄_P is ill-defined")

    if target is None:
        target = dual_shift(kernel, -n, name=f"s-{n}#ker β")
    images = {}
    for x in PI.space.names():
        img: Element = {}
        for k_name in kernel.space.basis(n - PI.space.degree_of[x]):
            c = pair_with_kernel({x: ONE}, k_name)
            if c != 0:
                img[sus_name(-n, dual_name(k_name))] = c
        if img:
            images[x] = img
    out = DGMorphism(PI.as_module(), target, images, name="θ̄_P")
    for degree in PI.space.support():
        m = out.matrix(degree)
        if m.rows != m.cols or (m.rows and linalg.invert(m) is None):
            raise InternalCheckError(f"θ̄_P is not an isomorphism in degree {degree}")
    return out


def dual_square_report(pm: PrettyModel) -> DualSquareReport:
    """Check the commuting square relating Δ̄! to the dual of the kernel
    multiplication μ̄ under the package's sign conventions."""
    PI = pm.P_mod_I
    n = pm.pd.formal_dim
    delta_bar, delta_shriek, pipi = truncated_diagonal_shriek(pm)
    sq = square_model(pm.beta)
    K = sq.kernel
    theta_bar = reduced_theta(pm, K, sq.kernel_inclusion)
    kdeg = K.space.degree_of

    def theta_coeffs(x_name: str):
        # θ̄_P(x) as {kernel name: coefficient}
        out = {}
        for nm, c in theta_bar.image_basis(x_name).items():
            k_name = nm[len(sus_name(-n, "")):]
            assert k_name.endswith("∨")
            out[k_name[:-1]] = c
        return out

    def path_top_right(x_name: str) -> Element:
        # χ ∘ (θ̄⊗θ̄) ∘ Δ̄! on s^{-n}x, expressed over (k⊗k')∨ names
        out: Element = {}
        value = delta_shriek.image_basis(sus_name(-n, x_name))
        for nm, c in value.items():
            a, b = split_tensor_name(nm)
            ta = theta_coeffs(a)
            tb = theta_coeffs(b)
            for k1, c1 in ta.items():
                for k2, c2 in tb.items():
                    sign = koszul(n, kdeg[k1]) * koszul(kdeg[k1], kdeg[k2])
                    el_accumulate(out, {dual_name(tensor_name(k1, k2)): ONE},
                                  c * c1 * c2 * sign)
        return out

    def path_left_bottom(x_name: str) -> Element:
        # s^{-2n}#μ̄ ∘ s^{-n}θ̄_P on s^{-n}x, over the same names
        out: Element = {}
        for k_name, c in theta_coeffs(x_name).items():
            # (k∨)∘μ̄ = Σ coeff of k in μ̄(k1⊗k2) · (k1⊗k2)∨
            for nm in sq.kernel_square.space.names():
                coeff = sq.mubar.image_basis(nm).get(k_name, ZERO)
                if coeff != 0:
                    el_accumulate(out, {dual_name(nm): ONE}, c * coeff)
        return out

    verdicts = {}
    details = []
    for degree in PI.space.support():
        diffs = []
        all_equal = True
        all_opposite = True
        any_nonzero = False
        for x in PI.space.basis(degree):
            lhs = path_top_right(x)
            rhs = path_left_bottom(x)
            if not el_is_zero(lhs) or not el_is_zero(rhs):
                any_nonzero = True
            if not el_eq_dict(lhs, rhs):
                all_equal = False
            if not el_eq_dict(lhs, el_scale(rhs, Rat(-1))):
                all_opposite = False
            if not el_eq_dict(lhs, rhs):
                diffs.append((x, lhs, rhs))
        if not any_nonzero or all_equal:
            verdicts[degree] = "equal"
        elif all_opposite:
            verdicts[degree] = "opposite"
            details.append(f"degree {degree}: global sign flip")
        else:
            verdicts[degree] = "mismatch"
            for x, lhs, rhs in diffs:
                details.append(f"degree {degree}, {x}: {el_str(lhs)} vs {el_str(rhs)}")
    commutes = all(v == "equal" for v in verdicts.values())
    return DualSquareReport(commutes=commutes, verdicts=verdicts, details=details)


def el_eq_dict(a: Element, b: Element) -> bool:
    return el_is_zero({k: a.get(k, ZERO) - b.get(k, ZERO) for k in set(a) | set(b)})
