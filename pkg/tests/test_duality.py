import pytest

from dgconf.algebra import CDGA, cohomology, identity_morphism, verify_cdga, verify_morphism
from dgconf.duality import (
    diagonal_class,
    dual_basis,
    dual_square_report,
    pretty_model,
    shriek,
    theta,
    theta_inverse,
    truncated_diagonal_shriek,
    verify_pd,
)
from dgconf.errors import AxiomError, HypothesisError
from dgconf.graded import GradedSpace
from dgconf.operations import morphism_from_images, sus_name
from dgconf.scalars import Q

from helpers import heisenberg, rational_point, sphere, sphere_product


def pd_sphere(n):
    return verify_pd(sphere(n), n, {"x": Q(1)})


def pd_s3s3():
    return verify_pd(sphere_product(3, 3), 6, {"yy'": Q(1)})


def test_verify_pd_sphere():
    pd = pd_sphere(4)
    assert pd.formal_dim == 4
    assert pd.omega == {"x": Q(1)}


def test_verify_pd_rejects_degenerate():
    space = GradedSpace({0: ["1"], 2: ["a"], 4: ["t"]})
    algebra = CDGA(space, "1", {("a", "a"): {}, ("a", "t"): {}, ("t", "t"): {}}, {},
                   name="degenerate")
    with pytest.raises(AxiomError, match="degenerate pairing"):
        verify_pd(algebra, 4, {"t": Q(1)})


def test_verify_pd_rejects_dim_mismatch():
    space = GradedSpace({0: ["1"], 1: ["u"], 4: ["t"]})
    algebra = CDGA(space, "1", {("u", "t"): {}, ("u", "u"): {}}, {}, name="mismatch")
    with pytest.raises(AxiomError, match="dim P"):
        verify_pd(algebra, 4, {"t": Q(1)})


def test_s3s3_pairing_matrix():
    pd = pd_s3s3()
    m = pd.pairings[3]
    assert [[m.entries[0][0], m.entries[0][1]], [m.entries[1][0], m.entries[1][1]]] == \
        [[Q(0), Q(1)], [Q(-1), Q(0)]]


def test_heisenberg_is_pd_with_differential():
    pd = verify_pd(heisenberg(), 3, {"abc": Q(1)})
    delta = diagonal_class(pd)
    assert not pd.algebra.diff == {}
    assert delta.tensor_square.d(delta.element) == {}


def test_dual_basis_sphere():
    pd = pd_sphere(4)
    duals = dual_basis(pd)
    assert duals["1"] == {"x": Q(1)}
    assert duals["x"] == {"1": Q(1)}


def test_dual_of_unit_is_fundamental_class():
    for pd in (pd_sphere(4), pd_sphere(3), pd_s3s3()):
        duals = dual_basis(pd)
        omega = duals[pd.algebra.unit]
        assert pd.eps(omega) == Q(1)


def test_duality_kronecker():
    pd = pd_s3s3()
    duals = dual_basis(pd)
    names = list(pd.algebra.space.names())
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            expected = Q(1) if i == j else Q(0)
            assert pd.eps(pd.algebra.mul({a: Q(1)}, duals[b])) == expected


def test_diagonal_class_spheres():
    pd4 = pd_sphere(4)
    delta4 = diagonal_class(pd4)
    assert delta4.element == {"1⊗x": Q(1), "x⊗1": Q(1)}
    pd3 = pd_sphere(3)
    delta3 = diagonal_class(pd3)
    assert delta3.element == {"1⊗x": Q(1), "x⊗1": Q(-1)}


def test_diagonal_class_basis_independence():
    pd = pd_s3s3()
    reference = diagonal_class(pd).element
    # a different (triangular) homogeneous basis
    basis = {
        0: [{"1": Q(1)}],
        3: [{"y": Q(2)}, {"y": Q(1), "y'": Q(3)}],
        6: [{"yy'": Q("1/5")}],
    }
    again = diagonal_class(pd, basis_by_degree=basis).element
    assert again == reference


def test_theta_is_iso_and_unit_images():
    pd = pd_s3s3()
    th = theta(pd)
    assert verify_morphism(th) == []
    assert th.image_basis("1") == {sus_name(-6, "yy'∨"): Q(1)}
    assert th.image_basis("yy'") == {sus_name(-6, "1∨"): Q(1)}
    m = th.matrix(3)
    det = m.entries[0][0] * m.entries[1][1] - m.entries[0][1] * m.entries[1][0]
    assert det == Q(1)
    inv = theta_inverse(pd, th)
    assert verify_morphism(inv) == []


def test_shriek_identity_is_theta_inverse():
    pd = pd_sphere(4)
    ident = identity_morphism(pd.algebra)
    f, _ = shriek(pd, pd.algebra, ident)
    inv = theta_inverse(pd)
    for nm in f.source_space.names():
        assert f.image_basis(nm) == inv.image_basis(nm)


def test_shriek_augmentation_hits_top_class():
    pd = pd_sphere(4)
    point = rational_point()
    aug = morphism_from_images(pd.algebra, point, {"1": {"1": Q(1)}},
                               multiplicative=True, name="aug")
    f, _ = shriek(pd, point, aug)
    assert f.image_basis(sus_name(-4, "1∨")) == {"x": Q(1)}


def punctured_pretty(n):
    pd = pd_sphere(n)
    point = rational_point()
    aug = morphism_from_images(pd.algebra, point, {"1": {"1": Q(1)}},
                               multiplicative=True, name="aug")
    return pretty_model(pd, point, aug)


def test_pretty_model_punctured_sphere():
    pm = punctured_pretty(4)
    assert pm.surjective
    # I = span{x}: P/I is the point
    assert pm.P_mod_I.space.support() == [0]
    h = cohomology(pm.B.cdga)
    # B models the disk: contractible
    assert all(h.dim(d) == 0 for d in range(1, 10)) and h.dim(0) == 1
    hb = cohomology(pm.dB.cdga)
    # ∂B models S^{n-1}
    assert hb.betti(3) == [1, 0, 0, 1]
    assert verify_cdga(pm.B.cdga) == []
    assert verify_cdga(pm.dB.cdga) == []
    assert verify_morphism(pm.beta) == []


def test_truncated_diagonal_punctured():
    pm = punctured_pretty(4)
    delta_bar, shriek_map, pipi = truncated_diagonal_shriek(pm)
    assert delta_bar == {}
    assert all(shriek_map.image_basis(nm) == {} for nm in shriek_map.source_space.names())


def test_truncated_diagonal_s3s3_middle_terms():
    pd = pd_s3s3()
    point = rational_point()
    aug = morphism_from_images(pd.algebra, point, {"1": {"1": Q(1)}},
                               multiplicative=True, name="aug")
    pm = pretty_model(pd, point, aug)
    delta_bar, _, _ = truncated_diagonal_shriek(pm)
    # unit and fundamental-class terms die; the middle survives
    assert delta_bar == {"y⊗y'": Q(-1), "y'⊗y": Q(1)}


def test_dual_square_commutes_punctured():
    for n in (4, 6):
        report = dual_square_report(punctured_pretty(n))
        assert report.commutes, report.details


def test_pretty_model_rejects_unbalanced_shriek():
    # φ: H(S4) -> H(S2xS2), x -> yy' is not surjective and both φ! and φφ!
    # fail the balanced condition; pretty_model must refuse with a witness
    pd = pd_sphere(4)
    target = sphere_product(2, 2)
    phi = morphism_from_images(pd.algebra, target, {"1": {"1": Q(1)}, "x": {"yy'": Q(1)}},
                               multiplicative=True, name="φ")
    with pytest.raises(HypothesisError, match="balanced condition fails"):
        pretty_model(pd, target, phi)


def test_disk_bundle_full_diagonal_formula():
    # Δ_P = Σ (-1)^{|q_i|} (q_i ⊗ q_i*(e-z̄) - q_i z̄ ⊗ q_i*)
    from dgconf.models import disk_bundle_algebra
    base = pd_sphere(4)
    pd, _ = disk_bundle_algebra(base, {"x": Q(1)}, 4)
    delta = diagonal_class(pd).element
    assert delta == {
        "1⊗x·z̄": Q(-1),       # 1 ⊗ 1*(e-z̄) with 1* = x
        "x⊗x": Q(1), "x⊗z̄": Q(-1),   # x ⊗ x*(e-z̄) with x* = 1
        "z̄⊗x": Q(-1),          # -(1·z̄) ⊗ 1* = -z̄⊗x
        "x·z̄⊗1": Q(-1),        # -(x·z̄) ⊗ x*
    }


def test_dual_square_reports_odd_dimension_sign():
    """On an odd-dimensional PD algebra with nonzero differential the square
    holds only up to a per-degree sign; the report must pinpoint it (never a
    raw mismatch) rather than absorb it."""
    pd = verify_pd(heisenberg(), 3, {"abc": Q(1)})
    point = rational_point()
    aug = morphism_from_images(pd.algebra, point, {"1": {"1": Q(1)}},
                               multiplicative=True, name="aug")
    pm = pretty_model(pd, point, aug)
    report = dual_square_report(pm)
    assert not report.commutes
    assert report.verdicts == {0: "opposite", 1: "opposite", 2: "equal"}
    assert all(v in ("equal", "opposite") for v in report.verdicts.values())
    assert report.sign_discrepancies() == {0: "opposite", 1: "opposite"}
