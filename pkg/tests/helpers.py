"""Hand-built example algebras shared by the test modules.

Omitted product entries are zero; the CDGA constructor fills unit products
and Koszul-symmetric counterparts.
"""

from dgconf.algebra import CDGA
from dgconf.graded import GradedSpace
from dgconf.scalars import Q


def rational_point():
    """The ground field as a CDGA."""
    return CDGA(GradedSpace({0: ["1"]}), "1", {}, {}, name="Q")


def sphere(n):
    """H(S^n) on one class x of degree n, x^2 = 0, d = 0."""
    space = GradedSpace({0: ["1"], n: ["x"]})
    return CDGA(space, "1", {}, {}, name=f"H(S{n})")


def sphere_product(a, b):
    """H(S^a x S^b) on y (deg a), y' (deg b), top class yy'."""
    if a == b:
        space = GradedSpace({0: ["1"], a: ["y", "y'"], a + b: ["yy'"]})
    else:
        space = GradedSpace({0: ["1"], a: ["y"], b: ["y'"], a + b: ["yy'"]})
    products = {("y", "y'"): {"yy'": Q(1)}}
    return CDGA(space, "1", products, {}, name=f"H(S{a}xS{b})")


def s2_model():
    """∧(a,b), |a|=2, |b|=3, d(b)=a², hard-bounded above degree 8."""
    space = GradedSpace({0: ["1"], 2: ["a"], 3: ["b"], 4: ["a^2"], 5: ["a*b"],
                         6: ["a^3"], 7: ["a^2*b"], 8: ["a^4"]})
    products = {
        ("a", "a"): {"a^2": Q(1)},
        ("a", "b"): {"a*b": Q(1)},
        ("a", "a^2"): {"a^3": Q(1)},
        ("a", "a*b"): {"a^2*b": Q(1)},
        ("a", "a^3"): {"a^4": Q(1)},
        ("b", "a^2"): {"a^2*b": Q(1)},
        ("a^2", "a^2"): {"a^4": Q(1)},
    }
    diff = {
        "b": {"a^2": Q(1)},
        "a*b": {"a^3": Q(1)},
        "a^2*b": {"a^4": Q(1)},
    }
    return CDGA(space, "1", products, diff, name="S2-model")


def heisenberg():
    """∧(a,b,c), |a|=|b|=|c|=1, dc = ab: a Poincaré duality CDGA in
    dimension 3 with a genuinely nonzero differential."""
    space = GradedSpace({0: ["1"], 1: ["a", "b", "c"],
                         2: ["ab", "ac", "bc"], 3: ["abc"]})
    products = {
        ("a", "b"): {"ab": Q(1)},
        ("a", "c"): {"ac": Q(1)},
        ("b", "c"): {"bc": Q(1)},
        ("a", "bc"): {"abc": Q(1)},
        ("b", "ac"): {"abc": Q(-1)},
        ("c", "ab"): {"abc": Q(1)},
    }
    diff = {"c": {"ab": Q(1)}}
    return CDGA(space, "1", products, diff, name="Heisenberg")
