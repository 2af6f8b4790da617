from dgconf.analysis import (
    cohomology_ring,
    massey_search,
    poincare_series,
    triple_massey,
    verify_presentation,
)
from dgconf.duality import verify_pd
from dgconf.models import conf2_disk_bundle
from dgconf.operations import reorder_basis, sus_name
from dgconf.scalars import Q

from helpers import rational_point, s2_model, sphere

import random


def pd_sphere(n):
    return verify_pd(sphere(n), n, {"x": Q(1)})


def hopf_model():
    return conf2_disk_bundle(pd_sphere(4), {"x": Q(1)}, 4)


def trivial_model():
    return conf2_disk_bundle(pd_sphere(4), {}, 4)


def test_ring_of_formal_sphere_is_itself():
    ring = cohomology_ring(sphere(4))
    assert ring.space.dim(0) == 1 and ring.space.dim(4) == 1
    x = {ring.space.basis(4)[0]: Q(1)}
    assert ring.product(x, x) == {}


def test_hopf_model_positive_products_vanish():
    ring = cohomology_ring(hopf_model().cone.cdga)
    for a in ring.space.names():
        for b in ring.space.names():
            if ring.space.degree_of[a] > 0 and ring.space.degree_of[b] > 0:
                assert ring.product({a: Q(1)}, {b: Q(1)}) == {}


def test_poincare_series_values():
    assert poincare_series(hopf_model().cone.cdga, 11) == \
        [1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1]
    assert poincare_series(trivial_model().cone.cdga, 11) == \
        [1, 0, 0, 0, 2, 0, 0, 1, 1, 0, 0, 1]
    assert poincare_series(rational_point(), 0) == [1]


def test_formal_massey_contains_zero():
    # zero differential: every defined triple product contains 0
    algebra = sphere(4)
    ring = cohomology_ring(algebra)
    x = {ring.space.basis(4)[0]: Q(1)}
    r = triple_massey(algebra, x, x, x, ring=ring)
    assert r.defined and not r.nontrivial


def test_hopf_massey_nontrivial_degree_11():
    model = hopf_model()
    algebra = model.cone.cdga
    ring = cohomology_ring(algebra)
    h4 = ring.space.basis(4)
    # identify [x⊗1] and [1⊗x] among the degree-4 classes
    reps = {nm: ring.cohomology.representative(nm) for nm in h4}
    by_rep = {tuple(sorted(v)): k for k, v in reps.items()}
    a = {by_rep[("x⊗1",)]: Q(1)}
    c = {by_rep[("1⊗x",)]: Q(1)}
    r = triple_massey(algebra, a, c, c, ring=ring)
    assert r.defined
    assert r.nontrivial
    assert r.indeterminacy == []
    # representative is ±[s s^{-8} x]
    rep = ring.cohomology.representative(next(iter(r.representative)))
    assert set(rep) == {sus_name(1, sus_name(-8, "x"))}


def test_trivial_bundle_same_triple_not_defined():
    model = trivial_model()
    algebra = model.cone.cdga
    ring = cohomology_ring(algebra)
    h4 = ring.space.basis(4)
    reps = {nm: ring.cohomology.representative(nm) for nm in h4}
    by_rep = {tuple(sorted(v)): k for k, v in reps.items()}
    a = {by_rep[("x⊗1",)]: Q(1)}
    c = {by_rep[("1⊗x",)]: Q(1)}
    r = triple_massey(algebra, a, c, c, ring=ring)
    assert not r.defined
    assert "do not vanish" in r.reason


def test_massey_search_finds_the_hopf_product():
    model = hopf_model()
    results = massey_search(model.cone.cdga)
    assert results and results[0].nontrivial
    degree = model.cone.cdga.space  # representative lives in degree 11
    top = results[0]
    h = cohomology_ring(model.cone.cdga).cohomology
    assert all(h.space.degree_of[nm] == 11 for nm in top.representative)


def test_massey_search_trivial_bundle_all_contain_zero():
    model = trivial_model()
    for r in massey_search(model.cone.cdga):
        assert not r.nontrivial


def test_verify_presentation_sphere():
    ring = cohomology_ring(sphere(4))
    x_class = {ring.space.basis(4)[0]: Q(1)}
    check = verify_presentation(ring, [("x", 4)], {"x": x_class}, ["x^2"])
    assert check.passed, check.failures


def test_verify_presentation_trivial_bundle():
    model = trivial_model()
    ring = cohomology_ring(model.cone.cdga)
    h = ring.cohomology

    def class_of_name(name):
        return h.class_of({name: Q(1)})

    images = {
        "x": class_of_name("x⊗1"),
        "x'": class_of_name("1⊗x"),
        "u": class_of_name(sus_name(1, sus_name(-8, "1"))),
    }
    check = verify_presentation(ring, [("x", 4), ("x'", 4), ("u", 7)], images,
                                ["x^2", "x'^2", "u*x - u*x'"], max_degree=11)
    assert check.passed, check.failures


def test_verify_presentation_wrong_relation_fails_in_degree_11():
    model = trivial_model()
    ring = cohomology_ring(model.cone.cdga)
    h = ring.cohomology
    images = {
        "x": h.class_of({"x⊗1": Q(1)}),
        "x'": h.class_of({"1⊗x": Q(1)}),
        "u": h.class_of({sus_name(1, sus_name(-8, "1")): Q(1)}),
    }
    check = verify_presentation(ring, [("x", 4), ("x'", 4), ("u", 7)], images,
                                ["x^2", "x'^2", "u*x + 2*u*x'"], max_degree=11)
    assert not check.passed
    assert any("11" in f for f in check.failures)


def test_ring_independent_of_basis_order():
    model = s2_model()
    ring1 = cohomology_ring(model)
    rng = random.Random(7)
    shuffled = reorder_basis(model.as_module(), rng)
    # rebuild a CDGA on the shuffled space ordering
    from dgconf.algebra import CDGA
    algebra2 = CDGA(shuffled.space, model.unit, model.products, model.diff,
                    name="shuffled", fill=False)
    ring2 = cohomology_ring(algebra2)
    h1, h2 = ring1.cohomology, ring2.cohomology
    # match classes via class_of and compare products
    for a in h1.space.names():
        for b in h1.space.names():
            prod1 = ring1.product({a: Q(1)}, {b: Q(1)})
            image_a = h2.class_of(h1.representative(a))
            image_b = h2.class_of(h1.representative(b))
            prod2 = ring2.product(image_a, image_b)
            lifted = {}
            for nm, c in prod1.items():
                for nm2, c2 in h2.class_of(h1.representative(nm)).items():
                    lifted[nm2] = lifted.get(nm2, Q(0)) + c * c2
            lifted = {k: v for k, v in lifted.items() if v != 0}
            assert lifted == prod2


def test_massey_representative_moves_by_indeterminacy():
    """Re-choosing the primitives shifts the representative by exactly an
    element of the indeterminacy, and never changes nontriviality."""
    model = hopf_model()
    algebra = model.cone.cdga
    ring = cohomology_ring(algebra)
    h = ring.cohomology
    rng = random.Random(11)
    triples = []
    names = [nm for nm in h.space.names() if h.space.degree_of[nm] > 0]
    for a in names:
        for b in names:
            for c in names:
                triples.append((a, b, c))
    checked = 0
    for a, b, c in triples:
        base = triple_massey(algebra, {a: Q(1)}, {b: Q(1)}, {c: Q(1)}, ring=ring)
        if not base.defined:
            continue
        deg_x = h.space.degree_of[a] + h.space.degree_of[b] - 1
        deg_y = h.space.degree_of[b] + h.space.degree_of[c] - 1
        for _ in range(3):
            def random_cocycle(degree):
                out = {}
                for nm in h.space.basis(degree):
                    if rng.random() < 0.7:
                        coeff = Q(rng.choice([-2, -1, 1, 2]))
                        for k, v in h.representative(nm).items():
                            out[k] = out.get(k, Q(0)) + coeff * v
                return {k: v for k, v in out.items() if v != 0}
            shifted = triple_massey(algebra, {a: Q(1)}, {b: Q(1)}, {c: Q(1)},
                                    ring=ring, x_shift=random_cocycle(deg_x),
                                    y_shift=random_cocycle(deg_y))
            diff = dict(base.representative)
            for k, v in shifted.representative.items():
                diff[k] = diff.get(k, Q(0)) - v
            diff = {k: v for k, v in diff.items() if v != 0}
            # the difference must lie in the indeterminacy span
            from dgconf import linalg
            target_degree = (h.space.degree_of[a] + h.space.degree_of[b]
                             + h.space.degree_of[c] - 1)
            basis = h.space.basis(target_degree)
            vec = tuple(diff.get(nm, Q(0)) for nm in basis)
            cols = [tuple(cls.get(nm, Q(0)) for nm in basis)
                    for cls in base.indeterminacy]
            if basis:
                if cols:
                    assert linalg.solve(
                        linalg.Matrix.from_columns(cols, len(basis)), vec) is not None
                else:
                    assert all(v == 0 for v in vec)
            assert shifted.nontrivial == base.nontrivial
            checked += 1
    assert checked >= 10
