"""Graded rational vector spaces with named bases.

Elements are plain dicts mapping basis names to nonzero scalars (the empty
dict is zero).  Names are unique across the whole space, so a homogeneous
element knows its degree from any of its keys.  All per-degree linear
algebra goes through to_vector/from_vector.
"""

from __future__ import annotations

from .errors import AxiomError
from .scalars import Q, ZERO, rat

Element = dict


def el_zero() -> Element:
    return {}


def el_scale(e: Element, c) -> Element:
    if c == 0:
        return {}
    return {k: c * v for k, v in e.items()}


def el_add(*elements) -> Element:
    out: Element = {}
    for e in elements:
        for k, v in e.items():
            s = out.get(k, ZERO) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
    return out


def el_sub(a: Element, b: Element) -> Element:
    return el_add(a, el_scale(b, Q(-1)))


def el_accumulate(dst: Element, src: Element, coeff) -> None:
    """dst += coeff * src, in place, dropping zeros."""
    if coeff == 0:
        return
    for k, v in src.items():
        s = dst.get(k, ZERO) + coeff * v
        if s == 0:
            dst.pop(k, None)
        else:
            dst[k] = s


def el_eq(a: Element, b: Element) -> bool:
    return el_is_zero(el_sub(a, b))


def el_is_zero(e: Element) -> bool:
    return all(v == 0 for v in e.values())


def el_clean(e: Element) -> Element:
    return {k: rat(v) for k, v in e.items() if v != 0}


def el_str(e: Element) -> str:
    if el_is_zero(e):
        return "0"
    parts = []
    for k in sorted(e):
        v = e[k]
        if v == 1:
            parts.append(k)
        elif v == -1:
            parts.append(f"-{k}")
        else:
            parts.append(f"{v}·{k}")
    return " + ".join(parts).replace("+ -", "- ")


class GradedSpace:
    """A finite-dimensional graded vector space with a named basis."""

    def __init__(self, degrees):
        cleaned = {}
        degree_of = {}
        index_of = {}
        for deg in sorted(degrees):
            names = tuple(degrees[deg])
            if not names:
                continue
            cleaned[int(deg)] = names
            for i, name in enumerate(names):
                if name in degree_of:
                    raise AxiomError(f"duplicate basis name {name!r}")
                degree_of[name] = int(deg)
                index_of[name] = i
        self.degrees = cleaned
        self.degree_of = degree_of
        self.index_of = index_of

    def support(self):
        return sorted(self.degrees)

    def basis(self, degree: int):
        return self.degrees.get(degree, ())

    def names(self):
        for deg in self.support():
            yield from self.degrees[deg]

    def dim(self, degree: int) -> int:
        return len(self.degrees.get(degree, ()))

    def total_dim(self) -> int:
        return sum(len(v) for v in self.degrees.values())

    def min_degree(self):
        sup = self.support()
        return sup[0] if sup else None

    def max_degree(self):
        sup = self.support()
        return sup[-1] if sup else None

    def __contains__(self, name: str) -> bool:
        return name in self.degree_of

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.degrees == other.degrees

    def element_degree(self, e: Element):
        """Degree of a homogeneous element; None for zero."""
        deg = None
        for name, v in e.items():
            if v == 0:
                continue
            if name not in self.degree_of:
                raise AxiomError(f"unknown basis name {name!r}")
            d = self.degree_of[name]
            if deg is None:
                deg = d
            elif deg != d:
                raise AxiomError(f"inhomogeneous element: degrees {deg} and {d}")
        return deg

    def check_element(self, e: Element, degree=None):
        d = self.element_degree(e)
        if degree is not None and d is not None and d != degree:
            raise AxiomError(f"element has degree {d}, expected {degree}")
        return e

    def to_vector(self, e: Element, degree: int):
        names = self.basis(degree)
        vec = [ZERO] * len(names)
        for name, v in e.items():
            if v == 0:
                continue
            if self.degree_of.get(name) != degree:
                raise AxiomError(f"{name!r} is not a degree-{degree} basis name")
            vec[self.index_of[name]] = v
        return tuple(vec)

    def from_vector(self, vec, degree: int) -> Element:
        names = self.basis(degree)
        assert len(vec) == len(names)
        return {names[i]: vec[i] for i in range(len(names)) if vec[i] != 0}
