import pytest

from dgconf.algebra import (
    CDGA,
    DGMorphism,
    cohomology,
    euler_characteristic,
    verify_cdga,
    verify_module,
    verify_morphism,
)
from dgconf.errors import AxiomError
from dgconf.graded import GradedSpace
from dgconf.scalars import Q

from helpers import heisenberg, s2_model, sphere, sphere_product


def test_sphere_is_valid():
    assert verify_cdga(sphere(4)) == []


def test_odd_square_one_is_invalid():
    # ∧(y), |y|=3, with the bogus table y·y = 1
    space = GradedSpace({0: ["1"], 3: ["y"]})
    bad = CDGA(space, "1", {("y", "y"): {"1": Q(1)}}, {}, name="bad")
    violations = verify_cdga(bad)
    axioms = {v.axiom for v in violations}
    assert "product degree" in axioms or "graded commutativity" in axioms


def test_s2_model_valid_and_h():
    model = s2_model()
    assert verify_cdga(model) == []
    h = cohomology(model)
    assert h.betti(8) == [1, 0, 1, 0, 0, 0, 0, 0, 0]


def test_heisenberg_valid():
    assert verify_cdga(heisenberg()) == []


def test_cohomology_contractible():
    # Q -> Q with d = identity
    space = GradedSpace({0: ["1", "u"], 1: ["v"]})
    algebra = CDGA(space, "1", {("u", "u"): {"u": Q(1)}, ("u", "v"): {"v": Q(1)}},
                   {"u": {"v": Q(1)}}, name="cone-ish")
    h = cohomology(algebra)
    assert h.betti(1) == [1, 0]


def test_cohomology_zero_differential():
    h = cohomology(sphere(4))
    assert h.dim(0) == 1 and h.dim(4) == 1 and h.dim(2) == 0


def test_class_of_roundtrip_and_exactness():
    model = s2_model()
    h = cohomology(model)
    for name in h.space.names():
        rep = h.representative(name)
        assert h.class_of(rep) == {name: Q(1)}
    # d(b) = a^2 is exact
    assert h.class_of({"a^2": Q(1)}) == {}
    with pytest.raises(AxiomError, match="not a cocycle"):
        h.class_of({"b": Q(1)})


def test_euler_characteristic_preserved():
    for algebra in (sphere(3), sphere_product(3, 4), s2_model(), heisenberg()):
        h = cohomology(algebra)
        assert euler_characteristic(algebra.space) == euler_characteristic(h.space)


def test_morphism_reports():
    s4 = sphere(4)
    ident = DGMorphism(s4, s4, {"1": {"1": Q(1)}, "x": {"x": Q(1)}}, multiplicative=True)
    assert verify_morphism(ident) == []
    zero = DGMorphism(s4, s4, {})
    assert verify_morphism(zero) == []

    # b -> 2b against mismatched differentials is not a chain map
    src = CDGA(GradedSpace({0: ["1"], 3: ["b"]}), "1", {}, {}, name="src")
    tgt_space = GradedSpace({0: ["1"], 3: ["b"], 4: ["x"]})
    tgt = CDGA(tgt_space, "1", {}, {"b": {"x": Q(1)}}, name="tgt")
    f = DGMorphism(src, tgt, {"1": {"1": Q(1)}, "b": {"b": Q(2)}})
    violations = verify_morphism(f)
    assert any(v.axiom == "chain map" for v in violations)


def test_module_axioms_of_self_module():
    for algebra in (sphere(6), s2_model(), heisenberg()):
        assert verify_module(algebra.as_module()) == []
